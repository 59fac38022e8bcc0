#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "symctr/error.hpp"
#include "symctr/scalar.hpp"

namespace symctr {

using Exponents = std::vector<int>;
using ExpArg = std::vector<GaussianRational>;

/// One term q * x^powers * exp(expArg . x). Powers may be negative (Laurent).
struct CoeffTerm {
  GaussianRational scalar;
  Exponents powers;
  ExpArg expArg;

  int degree() const { return std::accumulate(powers.begin(), powers.end(), 0); }
  bool has_exp() const {
    return std::any_of(expArg.begin(), expArg.end(), [](const auto &z) { return !z.is_zero(); });
  }
};

/// Key order: expArg lexicographic ascending, then powers by total degree
/// descending, ties broken lexicographically descending (first variable wins).
inline int compare_term_keys(const Exponents &pa, const ExpArg &ea, const Exponents &pb, const ExpArg &eb) {
  for (std::size_t k = 0; k < ea.size(); ++k) {
    auto c = ea[k] <=> eb[k];
    if (c != 0)
      return c < 0 ? -1 : 1;
  }
  int da = std::accumulate(pa.begin(), pa.end(), 0);
  int db = std::accumulate(pb.begin(), pb.end(), 0);
  if (da != db)
    return da > db ? -1 : 1;
  for (std::size_t k = 0; k < pa.size(); ++k)
    if (pa[k] != pb[k])
      return pa[k] > pb[k] ? -1 : 1;
  return 0;
}

inline bool term_key_less(const CoeffTerm &a, const CoeffTerm &b) {
  return compare_term_keys(a.powers, a.expArg, b.powers, b.expArg) < 0;
}

/// Element of the ring Q(i)[x, x^-1][exp(linear forms)] in `dim` variables,
/// kept in canonical form: sorted by key, merged, no zero scalars.
class Coefficient {
public:
  Coefficient() = default;
  explicit Coefficient(std::size_t dim) : dim_(dim) {}
  Coefficient(std::size_t dim, std::vector<CoeffTerm> terms) : dim_(dim), terms_(std::move(terms)) {
    for (const auto &t : terms_)
      if (t.powers.size() != dim_ || t.expArg.size() != dim_)
        throw DimensionMismatch(t.powers.size(), dim_);
    canonicalize();
  }

  static Coefficient zero(std::size_t dim) { return Coefficient(dim); }
  static Coefficient constant(std::size_t dim, const GaussianRational &q) {
    return monomial(dim, Exponents(dim, 0), q);
  }
  static Coefficient variable(std::size_t dim, std::size_t v) {
    Exponents p(dim, 0);
    p.at(v) = 1;
    return monomial(dim, std::move(p), 1);
  }
  static Coefficient monomial(std::size_t dim, Exponents powers, const GaussianRational &q,
                              ExpArg expArg = {}) {
    if (expArg.empty())
      expArg.assign(dim, GaussianRational{});
    return Coefficient(dim, {CoeffTerm{q, std::move(powers), std::move(expArg)}});
  }
  static Coefficient exponential(std::size_t dim, ExpArg lambda) {
    return monomial(dim, Exponents(dim, 0), 1, std::move(lambda));
  }

  std::size_t dim() const { return dim_; }
  const std::vector<CoeffTerm> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && !terms_[0].has_exp() &&
            std::all_of(terms_[0].powers.begin(), terms_[0].powers.end(), [](int p) { return p == 0; }));
  }
  GaussianRational constant_value() const {
    if (!is_constant())
      throw Error("coefficient is not constant");
    return terms_.empty() ? GaussianRational{} : terms_[0].scalar;
  }
  bool has_exp() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.has_exp(); });
  }
  bool has_negative_powers() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const auto &t) {
      return std::any_of(t.powers.begin(), t.powers.end(), [](int p) { return p < 0; });
    });
  }

  Coefficient operator-() const {
    Coefficient r = *this;
    for (auto &t : r.terms_)
      t.scalar = -t.scalar;
    return r;
  }

  friend Coefficient operator+(const Coefficient &a, const Coefficient &b) { return merge(a, b, false); }
  friend Coefficient operator-(const Coefficient &a, const Coefficient &b) { return merge(a, b, true); }
  Coefficient &operator+=(const Coefficient &b) { return *this = *this + b; }
  Coefficient &operator-=(const Coefficient &b) { return *this = *this - b; }

  friend Coefficient operator*(const Coefficient &a, const Coefficient &b) {
    if (a.dim_ != b.dim_)
      throw DimensionMismatch(a.dim_, b.dim_);
    std::vector<CoeffTerm> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &s : a.terms_)
      for (const auto &t : b.terms_) {
        CoeffTerm p{s.scalar * t.scalar, s.powers, s.expArg};
        for (std::size_t k = 0; k < a.dim_; ++k) {
          p.powers[k] += t.powers[k];
          p.expArg[k] += t.expArg[k];
        }
        out.push_back(std::move(p));
      }
    Coefficient r(a.dim_);
    r.terms_ = std::move(out);
    r.canonicalize();
    return r;
  }
  Coefficient &operator*=(const Coefficient &b) { return *this = *this * b; }

  friend Coefficient operator*(const GaussianRational &q, const Coefficient &a) {
    if (q.is_zero())
      return Coefficient(a.dim_);
    Coefficient r = a;
    for (auto &t : r.terms_)
      t.scalar *= q;
    return r;
  }

  /// Exact partial derivative in variable v.
  Coefficient diff(std::size_t v) const {
    if (v >= dim_)
      throw Error("variable index out of range");
    std::vector<CoeffTerm> out;
    out.reserve(2 * terms_.size());
    for (const auto &t : terms_) {
      if (t.powers[v] != 0) {
        CoeffTerm d = t;
        d.scalar *= GaussianRational(static_cast<long>(t.powers[v]));
        d.powers[v] -= 1;
        out.push_back(std::move(d));
      }
      if (!t.expArg[v].is_zero()) {
        CoeffTerm e = t;
        e.scalar *= t.expArg[v];
        out.push_back(std::move(e));
      }
    }
    Coefficient r(dim_);
    r.terms_ = std::move(out);
    r.canonicalize();
    return r;
  }

  /// Complex conjugation of every scalar and every exponential argument.
  Coefficient conjugate() const {
    Coefficient r = *this;
    for (auto &t : r.terms_) {
      t.scalar = t.scalar.conj();
      for (auto &l : t.expArg)
        l = l.conj();
    }
    r.canonicalize();
    return r;
  }

  /// Real and imaginary parts as functions of real variables.
  Coefficient real_part() const {
    return GaussianRational::rational(1, 2) * (*this + conjugate());
  }
  Coefficient imag_part() const {
    return GaussianRational(0, mpq_class(-1, 2)) * (*this - conjugate());
  }

  /// Only single-term coefficients are units of the ring.
  bool is_invertible() const { return terms_.size() == 1; }
  Coefficient inverse() const {
    if (!is_invertible())
      throw Error("only a single-term coefficient can be inverted");
    CoeffTerm t = terms_[0];
    t.scalar = t.scalar.inverse();
    for (std::size_t k = 0; k < dim_; ++k) {
      t.powers[k] = -t.powers[k];
      t.expArg[k] = -t.expArg[k];
    }
    return Coefficient(dim_, {t});
  }

  Coefficient pow(unsigned n) const {
    Coefficient r = constant(dim_, 1);
    for (unsigned k = 0; k < n; ++k)
      r *= *this;
    return r;
  }

  friend bool operator==(const Coefficient &a, const Coefficient &b) {
    if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size())
      return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      const auto &s = a.terms_[k];
      const auto &t = b.terms_[k];
      if (!(s.scalar == t.scalar) || s.powers != t.powers || !(s.expArg == t.expArg))
        return false;
    }
    return true;
  }

  /// Sort, merge equal keys, drop zeros. Idempotent.
  void canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(), term_key_less);
    std::vector<CoeffTerm> out;
    out.reserve(terms_.size());
    for (auto &t : terms_) {
      if (!out.empty() && compare_term_keys(out.back().powers, out.back().expArg, t.powers, t.expArg) == 0)
        out.back().scalar += t.scalar;
      else
        out.push_back(std::move(t));
      if (out.back().scalar.is_zero())
        out.pop_back();
    }
    terms_ = std::move(out);
  }

private:
  static Coefficient merge(const Coefficient &a, const Coefficient &b, bool subtract) {
    if (a.dim_ != b.dim_)
      throw DimensionMismatch(a.dim_, b.dim_);
    Coefficient r(a.dim_);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    auto take_b = [&](const CoeffTerm &t) {
      CoeffTerm c = t;
      if (subtract)
        c.scalar = -c.scalar;
      r.terms_.push_back(std::move(c));
    };
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size()) {
        r.terms_.push_back(a.terms_[i++]);
        continue;
      }
      if (i == a.terms_.size()) {
        take_b(b.terms_[j++]);
        continue;
      }
      const auto &s = a.terms_[i];
      const auto &t = b.terms_[j];
      int c = compare_term_keys(s.powers, s.expArg, t.powers, t.expArg);
      if (c < 0) {
        r.terms_.push_back(s);
        ++i;
      } else if (c > 0) {
        take_b(t);
        ++j;
      } else {
        GaussianRational q = subtract ? s.scalar - t.scalar : s.scalar + t.scalar;
        if (!q.is_zero())
          r.terms_.push_back(CoeffTerm{std::move(q), s.powers, s.expArg});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::size_t dim_ = 0;
  std::vector<CoeffTerm> terms_;
};

} // namespace symctr
