#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "symctr/linalg.hpp"
#include "symctr/structure.hpp"

namespace symctr {

/// Finite-dimensional algebra given by its full (not antisymmetrized)
/// multiplication table e_i e_j = sum_k c^k_ij e_k.
struct AbstractAlgebra {
  StructureConstants mult;
  std::optional<std::size_t> unitIndex;

  std::size_t size() const { return mult.size(); }

  /// c^k_uj = delta_jk and c^k_iu = delta_ik for the declared unit.
  bool unit_is_valid() const {
    if (!unitIndex)
      return false;
    const std::size_t u = *unitIndex, n = size();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        GaussianRational delta = j == k ? 1 : 0;
        if (!(mult(u, j, k) == delta) || !(mult(j, u, k) == delta))
          return false;
      }
    return true;
  }
};

struct AbstractElement {
  std::vector<GaussianRational> coords;

  static AbstractElement zero(std::size_t n) { return {std::vector<GaussianRational>(n)}; }
  static AbstractElement basis(std::size_t n, std::size_t i) {
    AbstractElement e = zero(n);
    e.coords.at(i) = 1;
    return e;
  }
  std::size_t size() const { return coords.size(); }
  bool is_zero() const {
    for (const auto &c : coords)
      if (!c.is_zero())
        return false;
    return true;
  }

  AbstractElement &operator+=(const AbstractElement &o) {
    if (o.size() != size())
      throw DimensionMismatch(size(), o.size());
    for (std::size_t k = 0; k < size(); ++k)
      coords[k] += o.coords[k];
    return *this;
  }
  AbstractElement &operator-=(const AbstractElement &o) {
    if (o.size() != size())
      throw DimensionMismatch(size(), o.size());
    for (std::size_t k = 0; k < size(); ++k)
      coords[k] -= o.coords[k];
    return *this;
  }
  friend AbstractElement operator+(AbstractElement a, const AbstractElement &b) { return a += b; }
  friend AbstractElement operator-(AbstractElement a, const AbstractElement &b) { return a -= b; }
  friend AbstractElement operator*(const GaussianRational &q, AbstractElement a) {
    for (auto &c : a.coords)
      c *= q;
    return a;
  }
  friend bool operator==(const AbstractElement &, const AbstractElement &) = default;
};

/// Symmetric part c^k_ij + c^k_ji and antisymmetric part c^k_ij - c^k_ji.
inline std::pair<StructureConstants, StructureConstants> jordan_lie_split(const AbstractAlgebra &alg) {
  const std::size_t n = alg.size();
  StructureConstants plus(n), minus(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        plus(i, j, k) = alg.mult(i, j, k) + alg.mult(j, i, k);
        minus(i, j, k) = alg.mult(i, j, k) - alg.mult(j, i, k);
      }
  return {plus, minus};
}

inline AbstractElement product(const AbstractAlgebra &alg, const AbstractElement &a, const AbstractElement &b) {
  const std::size_t n = alg.size();
  if (a.size() != n || b.size() != n)
    throw Error("element does not belong to this algebra");
  AbstractElement r = AbstractElement::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coords[i].is_zero())
      continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coords[j].is_zero())
        continue;
      GaussianRational ab = a.coords[i] * b.coords[j];
      for (std::size_t k = 0; k < n; ++k)
        if (!alg.mult(i, j, k).is_zero())
          r.coords[k] += ab * alg.mult(i, j, k);
    }
  }
  return r;
}

/// Left-associated product ((a0 a1) a2) ... of one or more elements.
inline AbstractElement product(const AbstractAlgebra &alg, const std::vector<AbstractElement> &factors) {
  if (factors.empty())
    throw Error("empty product");
  AbstractElement r = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k)
    r = product(alg, r, factors[k]);
  return r;
}

inline AbstractElement power(const AbstractAlgebra &alg, const AbstractElement &a, unsigned n) {
  if (n == 0) {
    if (!alg.unitIndex)
      throw Error("zeroth power needs a unit");
    return AbstractElement::basis(alg.size(), *alg.unitIndex);
  }
  AbstractElement r = a;
  for (unsigned k = 1; k < n; ++k)
    r = product(alg, r, a);
  return r;
}

inline bool is_associative(const AbstractAlgebra &alg) {
  const std::size_t n = alg.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto ei = AbstractElement::basis(n, i), ej = AbstractElement::basis(n, j), ek = AbstractElement::basis(n, k);
        if (!(product(alg, product(alg, ei, ej), ek) == product(alg, ei, product(alg, ej, ek))))
          return false;
      }
  return true;
}

/// Two-sided inverse of `b`, found by solving x*b = unit exactly and then
/// checking b*x = unit. Absent when no such element exists.
inline std::optional<AbstractElement> inverse(const AbstractAlgebra &alg, const AbstractElement &b) {
  if (!alg.unitIndex)
    throw Error("inverse requires a unit element");
  const std::size_t n = alg.size();
  std::vector<SparseRow> cols(n);
  for (std::size_t i = 0; i < n; ++i) {
    AbstractElement col = product(alg, AbstractElement::basis(n, i), b);
    for (std::size_t k = 0; k < n; ++k)
      if (!col.coords[k].is_zero())
        cols[i].emplace_back(k, col.coords[k]);
  }
  SparseRow rhs{{*alg.unitIndex, GaussianRational(1)}};
  auto x = solve_columns(cols, rhs, n);
  if (!x)
    return std::nullopt;
  AbstractElement inv{*x};
  AbstractElement unit = AbstractElement::basis(n, *alg.unitIndex);
  if (!(product(alg, inv, b) == unit) || !(product(alg, b, inv) == unit))
    return std::nullopt;
  return inv;
}

inline std::optional<AbstractElement> inverse(const AbstractAlgebra &alg, std::size_t basisIndex) {
  return inverse(alg, AbstractElement::basis(alg.size(), basisIndex));
}

/// Least K <= cap with g^K = 0.
inline std::optional<unsigned> nilpotency_degree(const AbstractAlgebra &alg, const AbstractElement &g, unsigned cap) {
  if (cap < 1)
    throw Error("nilpotency cap must be at least 1");
  AbstractElement p = g;
  for (unsigned k = 1; k <= cap; ++k) {
    if (p.is_zero())
      return k;
    if (k < cap)
      p = product(alg, p, g);
  }
  return std::nullopt;
}

/// Truncated binomial series for L^(p/m) with L = tau*unit + G, G nilpotent:
/// tau^(p/m) * sum_{k<K} binom(p/m, k) G^k. The prefactor is kept formal.
struct FracPowerResult {
  mpq_class tauExponent;
  GaussianRational tau;
  std::vector<mpq_class> gCoefficients;
  unsigned nilpotencyDegree = 0;
};

/// Generalized binomial coefficient binom(r, k) = prod_{j<k} (r - j) / k!.
inline mpq_class generalized_binomial(const mpq_class &r, unsigned k) {
  mpq_class num = 1;
  mpz_class fact = 1;
  for (unsigned j = 0; j < k; ++j) {
    num *= r - j;
    fact *= j + 1;
  }
  mpq_class out = num / mpq_class(fact);
  out.canonicalize();
  return out;
}

/// G = L - tau*unit where tau is L's unit coordinate.
inline AbstractElement nilpotent_part(const AbstractAlgebra &alg, const AbstractElement &L) {
  if (!alg.unitIndex)
    throw Error("fractional power requires a unit element");
  AbstractElement G = L;
  G.coords.at(*alg.unitIndex) = 0;
  return G;
}

inline FracPowerResult frac_power(const AbstractAlgebra &alg, const AbstractElement &L, long p, long m, unsigned cap) {
  if (m == 0)
    throw Error("fractional power with m = 0");
  if (m < 0) {
    p = -p;
    m = -m;
  }
  AbstractElement G = nilpotent_part(alg, L);
  auto K = nilpotency_degree(alg, G, cap);
  if (!K)
    throw Error("L - tau*unit is not nilpotent within degree " + std::to_string(cap));
  FracPowerResult r;
  r.tauExponent = mpq_class(p, m);
  r.tauExponent.canonicalize();
  r.tau = L.coords[*alg.unitIndex];
  r.nilpotencyDegree = *K;
  for (unsigned k = 0; k < *K; ++k)
    r.gCoefficients.push_back(generalized_binomial(r.tauExponent, k));
  return r;
}

/// sum_k coeff_k G^k with the tau prefactor normalized to 1.
inline AbstractElement frac_power_element(const AbstractAlgebra &alg, const FracPowerResult &r,
                                          const AbstractElement &G) {
  AbstractElement sum = AbstractElement::zero(alg.size());
  AbstractElement gk = AbstractElement::basis(alg.size(), *alg.unitIndex);
  for (std::size_t k = 0; k < r.gCoefficients.size(); ++k) {
    if (k > 0)
      gk = product(alg, gk, G);
    sum += GaussianRational(r.gCoefficients[k]) * gk;
  }
  return sum;
}

/// With tau = 1 and p >= 0, checks (sum_k coeff_k G^k)^m == (unit + G)^p exactly.
/// Returns nullopt when the check does not apply (tau != 1 or p < 0).
inline std::optional<bool> verify_frac_power(const AbstractAlgebra &alg, const AbstractElement &L,
                                             const FracPowerResult &r) {
  if (!(r.tau == GaussianRational(1)) || r.tauExponent < 0)
    return std::nullopt;
  AbstractElement G = nilpotent_part(alg, L);
  AbstractElement root = frac_power_element(alg, r, G);
  const unsigned long m = r.tauExponent.get_den().get_ui();
  const unsigned long p = r.tauExponent.get_num().get_ui();
  return power(alg, root, static_cast<unsigned>(m)) == power(alg, L, static_cast<unsigned>(p));
}

} // namespace symctr
