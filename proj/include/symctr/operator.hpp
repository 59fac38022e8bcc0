#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "symctr/coefficient.hpp"

namespace symctr {

/// Derivative multi-index; the zero index is the identity factor.
struct DerivIndex {
  std::vector<int> alpha;

  DerivIndex() = default;
  explicit DerivIndex(std::vector<int> a) : alpha(std::move(a)) {}
  static DerivIndex identity(std::size_t dim) { return DerivIndex(std::vector<int>(dim, 0)); }
  static DerivIndex unit(std::size_t dim, std::size_t v, int times = 1) {
    DerivIndex d = identity(dim);
    d.alpha.at(v) = times;
    return d;
  }

  std::size_t dim() const { return alpha.size(); }
  int order() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
  friend bool operator==(const DerivIndex &, const DerivIndex &) = default;
};

/// Graded order with higher total order first; within an order, larger
/// exponent of earlier variables first (so d[x,x] < d[x,t] < d[t,t] < d[x]).
struct DerivIndexOrder {
  bool operator()(const DerivIndex &a, const DerivIndex &b) const {
    int oa = a.order(), ob = b.order();
    if (oa != ob)
      return oa > ob;
    for (std::size_t k = 0; k < a.alpha.size(); ++k)
      if (a.alpha[k] != b.alpha[k])
        return a.alpha[k] > b.alpha[k];
    return false;
  }
};

namespace detail {

inline mpq_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return mpq_class(r);
}

} // namespace detail

/// Linear differential operator sum_alpha c_alpha(x) d^alpha, coefficients on the left.
class DiffOperator {
public:
  using TermMap = std::map<DerivIndex, Coefficient, DerivIndexOrder>;

  DiffOperator() = default;
  explicit DiffOperator(std::size_t dim) : dim_(dim) {}

  static DiffOperator zero(std::size_t dim) { return DiffOperator(dim); }
  static DiffOperator identity(std::size_t dim) { return multiplication(Coefficient::constant(dim, 1)); }
  static DiffOperator scalar(std::size_t dim, const GaussianRational &q) {
    return multiplication(Coefficient::constant(dim, q));
  }
  static DiffOperator multiplication(const Coefficient &c) {
    DiffOperator r(c.dim());
    r.add_term(DerivIndex::identity(c.dim()), c);
    return r;
  }
  static DiffOperator derivative(std::size_t dim, const DerivIndex &alpha,
                                 const GaussianRational &q = GaussianRational(1)) {
    DiffOperator r(dim);
    r.add_term(alpha, Coefficient::constant(dim, q));
    return r;
  }
  /// q * d/dx_v
  static DiffOperator partial(std::size_t dim, std::size_t v, const GaussianRational &q = GaussianRational(1)) {
    return derivative(dim, DerivIndex::unit(dim, v), q);
  }

  std::size_t dim() const { return dim_; }
  const TermMap &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Highest |alpha| present; -1 for the zero operator.
  int order() const { return terms_.empty() ? -1 : terms_.begin()->first.order(); }

  Coefficient coefficient(const DerivIndex &alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Coefficient::zero(dim_) : it->second;
  }

  void add_term(const DerivIndex &alpha, const Coefficient &c) {
    if (alpha.dim() != dim_)
      throw DimensionMismatch(alpha.dim(), dim_);
    if (c.dim() != dim_)
      throw DimensionMismatch(c.dim(), dim_);
    if (c.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  bool has_exp() const {
    for (const auto &[a, c] : terms_)
      if (c.has_exp())
        return true;
    return false;
  }

  DiffOperator operator-() const {
    DiffOperator r = *this;
    for (auto &[a, c] : r.terms_)
      c = -c;
    return r;
  }
  DiffOperator &operator+=(const DiffOperator &b) {
    check_dim(b);
    for (const auto &[a, c] : b.terms_)
      add_term(a, c);
    return *this;
  }
  DiffOperator &operator-=(const DiffOperator &b) {
    check_dim(b);
    for (const auto &[a, c] : b.terms_)
      add_term(a, -c);
    return *this;
  }
  friend DiffOperator operator+(DiffOperator a, const DiffOperator &b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator &b) { return a -= b; }

  friend DiffOperator operator*(const GaussianRational &q, const DiffOperator &a) {
    DiffOperator r(a.dim_);
    if (q.is_zero())
      return r;
    r.terms_ = a.terms_;
    for (auto &[al, c] : r.terms_)
      c = q * c;
    return r;
  }
  /// Left multiplication by a function.
  friend DiffOperator operator*(const Coefficient &f, const DiffOperator &a) {
    if (f.dim() != a.dim_)
      throw DimensionMismatch(f.dim(), a.dim_);
    DiffOperator r(a.dim_);
    for (const auto &[al, c] : a.terms_)
      r.add_term(al, f * c);
    return r;
  }

  friend bool operator==(const DiffOperator &a, const DiffOperator &b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  void check_dim(const DiffOperator &b) const {
    if (b.dim_ != dim_)
      throw DimensionMismatch(dim_, b.dim_);
  }

private:
  std::size_t dim_ = 0;
  TermMap terms_;
};

namespace detail {

/// d^gamma g, with derivatives taken in variable order.
inline Coefficient apply_partials(Coefficient g, const std::vector<int> &gamma) {
  for (std::size_t v = 0; v < gamma.size(); ++v)
    for (int k = 0; k < gamma[v]; ++k) {
      if (g.is_zero())
        return g;
      g = g.diff(v);
    }
  return g;
}

/// Enumerates every gamma <= alpha componentwise.
template <class F> void for_each_sub_index(const std::vector<int> &alpha, F &&f) {
  std::vector<int> gamma(alpha.size(), 0);
  while (true) {
    f(gamma);
    std::size_t v = 0;
    while (v < alpha.size() && gamma[v] == alpha[v]) {
      gamma[v] = 0;
      ++v;
    }
    if (v == alpha.size())
      return;
    ++gamma[v];
  }
}

} // namespace detail

/// a o b by the general Leibniz rule.
inline DiffOperator compose(const DiffOperator &a, const DiffOperator &b) {
  a.check_dim(b);
  const std::size_t d = a.dim();
  DiffOperator r(d);
  for (const auto &[beta, g] : b.terms()) {
    std::map<std::vector<int>, Coefficient> dcache;
    for (const auto &[alpha, f] : a.terms()) {
      detail::for_each_sub_index(alpha.alpha, [&](const std::vector<int> &gamma) {
        auto it = dcache.find(gamma);
        if (it == dcache.end())
          it = dcache.emplace(gamma, detail::apply_partials(g, gamma)).first;
        if (it->second.is_zero())
          return;
        mpq_class mult = 1;
        std::vector<int> idx(d);
        for (std::size_t v = 0; v < d; ++v) {
          mult *= detail::binomial(alpha.alpha[v], gamma[v]);
          idx[v] = alpha.alpha[v] - gamma[v] + beta.alpha[v];
        }
        r.add_term(DerivIndex(std::move(idx)), GaussianRational(mult) * (f * it->second));
      });
    }
  }
  return r;
}

inline DiffOperator commutator(const DiffOperator &a, const DiffOperator &b) {
  return compose(a, b) - compose(b, a);
}

inline DiffOperator anticommutator(const DiffOperator &a, const DiffOperator &b) {
  return compose(a, b) + compose(b, a);
}

/// Formal conjugate: coefficients conjugated, derivative indices unchanged.
inline DiffOperator conjugate(const DiffOperator &a) {
  DiffOperator r(a.dim());
  for (const auto &[alpha, c] : a.terms())
    r.add_term(alpha, c.conjugate());
  return r;
}

inline DiffOperator power(const DiffOperator &a, unsigned n) {
  if (n == 0)
    return DiffOperator::identity(a.dim());
  DiffOperator r = a;
  for (unsigned k = 1; k < n; ++k)
    r = compose(r, a);
  return r;
}

/// Product of a sequence of operators, left to right. Empty product is the identity of `dim`.
inline DiffOperator compose_all(const std::vector<const DiffOperator *> &factors, std::size_t dim) {
  DiffOperator r = DiffOperator::identity(dim);
  for (const auto *f : factors)
    r = compose(r, *f);
  return r;
}

} // namespace symctr
