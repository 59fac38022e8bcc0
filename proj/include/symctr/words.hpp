#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symctr/basis.hpp"
#include "symctr/structure.hpp"

namespace symctr {

/// Ordered product of basis members D_{w0} D_{w1} ... (0-based indices).
using Word = std::vector<std::size_t>;

/// Linear combination of words with coefficients in a ring `Coeff`.
/// `Coeff` needs `+=`, left multiplication by GaussianRational and `is_zero()`.
template <class Coeff> using WordSum = std::map<Word, Coeff>;

struct OperatorWord {
  Word factors;
  GaussianRational scalar;
  friend bool operator==(const OperatorWord &, const OperatorWord &) = default;
};

inline bool is_zero(const GaussianRational &q) { return q.is_zero(); }

/// Noncommutative polynomial in abstract symbols e_1..e_N; a monomial is the
/// sequence of symbol indices. Used to carry generic coefficients through Lie
/// reduction without any accidental cancellation.
class NCPolynomial {
public:
  NCPolynomial() = default;
  static NCPolynomial monomial(std::vector<std::size_t> symbols, const GaussianRational &q = 1) {
    NCPolynomial p;
    if (!q.is_zero())
      p.terms_.emplace(std::move(symbols), q);
    return p;
  }

  const std::map<std::vector<std::size_t>, GaussianRational> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  NCPolynomial &operator+=(const NCPolynomial &o) {
    for (const auto &[m, q] : o.terms_) {
      auto [it, inserted] = terms_.try_emplace(m, q);
      if (!inserted) {
        it->second += q;
        if (it->second.is_zero())
          terms_.erase(it);
      }
    }
    return *this;
  }
  friend NCPolynomial operator*(const GaussianRational &q, const NCPolynomial &p) {
    NCPolynomial r;
    if (q.is_zero())
      return r;
    for (const auto &[m, c] : p.terms_)
      r.terms_.emplace(m, q * c);
    return r;
  }
  friend bool operator==(const NCPolynomial &, const NCPolynomial &) = default;

  /// e.g. `e1e2 + e4e4 - i*e2e1` with 1-based symbol names.
  std::string to_string() const {
    if (terms_.empty())
      return "0";
    std::string out;
    for (const auto &[m, q] : terms_) {
      std::string mono;
      for (auto s : m)
        mono += "e" + std::to_string(s + 1);
      if (!out.empty())
        out += " + ";
      if (q.is_one())
        out += mono.empty() ? "1" : mono;
      else
        out += "(" + q.to_string() + ")" + (mono.empty() ? "" : "*" + mono);
    }
    return out;
  }

private:
  std::map<std::vector<std::size_t>, GaussianRational> terms_;
};

namespace detail {

template <class Coeff> void accumulate(WordSum<Coeff> &sum, const Word &w, const Coeff &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = sum.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      sum.erase(it);
  }
}

inline std::optional<std::size_t> first_descent(const Word &w) {
  for (std::size_t p = 0; p + 1 < w.size(); ++p)
    if (w[p] > w[p + 1])
      return p;
  return std::nullopt;
}

} // namespace detail

/// Rewrites every word to non-decreasing factor order using
/// D_j D_i = D_i D_j + sum_k C^k_{ji} D_k for j > i. Factors equal to
/// `unitIndex` are dropped (the identity), so the empty word is the identity.
/// The result is the unique normal form of the input.
template <class Coeff>
WordSum<Coeff> lie_reduce(const WordSum<Coeff> &input, const StructureConstants &constants,
                          std::optional<std::size_t> unitIndex = std::nullopt) {
  const std::size_t n = constants.size();
  if (!constants.is_lie_valid())
    throw Error("structure constants are not a valid Lie table (antisymmetry/Jacobi fails); "
                "they do not close the basis");
  WordSum<Coeff> pending;
  for (const auto &[w, c] : input) {
    for (auto f : w)
      if (f >= n)
        throw Error("word factor " + std::to_string(f + 1) + " outside the basis");
    detail::accumulate(pending, w, c);
  }
  WordSum<Coeff> result;
  while (!pending.empty()) {
    // longest words first keeps the number of re-visits small
    auto it = std::max_element(pending.begin(), pending.end(),
                               [](const auto &a, const auto &b) { return a.first.size() < b.first.size(); });
    Word w = it->first;
    Coeff c = it->second;
    pending.erase(it);
    if (unitIndex) {
      auto stripped = std::remove(w.begin(), w.end(), *unitIndex);
      if (stripped != w.end()) {
        w.erase(stripped, w.end());
        detail::accumulate(pending, w, c);
        continue;
      }
    }
    auto p = detail::first_descent(w);
    if (!p) {
      detail::accumulate(result, w, c);
      continue;
    }
    const std::size_t hi = w[*p], lo = w[*p + 1];
    Word swapped = w;
    std::swap(swapped[*p], swapped[*p + 1]);
    detail::accumulate(pending, swapped, c);
    for (std::size_t k = 0; k < n; ++k) {
      const GaussianRational &ck = constants(hi, lo, k);
      if (ck.is_zero())
        continue;
      Word shorter(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*p));
      shorter.push_back(k);
      shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(*p) + 2, w.end());
      detail::accumulate(pending, shorter, Coeff(ck * c));
    }
  }
  return result;
}

inline std::vector<OperatorWord> lie_reduce(const std::vector<OperatorWord> &words,
                                            const StructureConstants &constants,
                                            std::optional<std::size_t> unitIndex = std::nullopt) {
  WordSum<GaussianRational> sum;
  for (const auto &w : words)
    detail::accumulate(sum, w.factors, w.scalar);
  std::vector<OperatorWord> out;
  for (auto &[w, q] : lie_reduce(sum, constants, unitIndex))
    out.push_back({w, q});
  return out;
}

inline bool is_normal_word(const Word &w, std::optional<std::size_t> unitIndex = std::nullopt) {
  if (unitIndex && std::find(w.begin(), w.end(), *unitIndex) != w.end())
    return false;
  return !detail::first_descent(w).has_value();
}

/// Concrete operator of a single word; the empty word is the identity.
inline DiffOperator evaluate_word(const OperatorBasis &basis, const Word &w) {
  DiffOperator r = DiffOperator::identity(basis.dim());
  for (auto f : w)
    r = compose(r, basis[f]);
  return r;
}

inline DiffOperator evaluate(const OperatorBasis &basis, const WordSum<GaussianRational> &sum) {
  DiffOperator r(basis.dim());
  for (const auto &[w, q] : sum)
    r += q * evaluate_word(basis, w);
  return r;
}

inline DiffOperator evaluate(const OperatorBasis &basis, const std::vector<OperatorWord> &words) {
  DiffOperator r(basis.dim());
  for (const auto &w : words)
    r += w.scalar * evaluate_word(basis, w.factors);
  return r;
}

/// (sum_i e_i D_i)^n over `n_letters` generators with noncommuting symbolic
/// coefficients: every length-n word w carries the monomial e_{w0}...e_{w(n-1)}.
inline WordSum<NCPolynomial> generic_power(std::size_t n_letters, unsigned n) {
  WordSum<NCPolynomial> sum;
  Word w(n, 0);
  if (n == 0) {
    sum.emplace(Word{}, NCPolynomial::monomial({}));
    return sum;
  }
  while (true) {
    sum.emplace(w, NCPolynomial::monomial(w));
    std::size_t p = 0;
    while (p < n && w[p] + 1 == n_letters) {
      w[p] = 0;
      ++p;
    }
    if (p == n)
      break;
    ++w[p];
  }
  return sum;
}

/// Cyclic average (1/n) sum_k D_{i(1+k)} ... D_{i(n+k)} of the n rotations.
inline DiffOperator symmetrize(const OperatorBasis &basis, const std::vector<std::size_t> &indices) {
  if (indices.empty())
    throw Error("symmetrize needs at least one index");
  for (auto k : indices)
    if (k >= basis.size())
      throw Error("basis index " + std::to_string(k + 1) + " out of range");
  const std::size_t n = indices.size();
  DiffOperator sum(basis.dim());
  for (std::size_t k = 0; k < n; ++k) {
    Word rotation(n);
    for (std::size_t p = 0; p < n; ++p)
      rotation[p] = indices[(p + k) % n];
    sum += evaluate_word(basis, rotation);
  }
  return GaussianRational::rational(1, static_cast<long>(n)) * sum;
}

/// Text such as `D1*D2` (1-based, unit-free words print as `I`).
inline std::string word_to_string(const Word &w, const OperatorBasis *basis = nullptr) {
  if (w.empty())
    return "I";
  std::string s;
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (p)
      s += "*";
    s += basis ? basis->name(w[p]) : "D" + std::to_string(w[p] + 1);
  }
  return s;
}

} // namespace symctr
