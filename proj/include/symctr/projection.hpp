#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symctr/basis.hpp"
#include "symctr/operator.hpp"

namespace symctr {

struct HermitianResidual {
  DerivIndex first;
  DerivIndex second;
  Coefficient value; // F^i_R F^j_C - F^i_C F^j_R
};

struct HermitianProjectionReport {
  bool conditionHolds = true;
  DiffOperator product;             // a o conj(a)
  DiffOperator realProjection;      // sum (F^i_R F^j_R + F^i_C F^j_C) d_i d_j
  std::vector<HermitianResidual> residuals;
  std::optional<bool> targetMatches; // realProjection == target, when a target was supplied
};

/// For a first-order operator a = F^i d_i (d_0 = 1): forms a o conj(a), tests the
/// cross condition F^i_R F^j_C = F^i_C F^j_R for every pair of indices, and builds
/// the real projection whose normalization is compared with `target`.
inline HermitianProjectionReport check_hermitian_projection(const DiffOperator &a,
                                                            const std::optional<DiffOperator> &target = {}) {
  if (a.order() > 1)
    throw Error("hermitian projection needs an operator of order <= 1, got order " + std::to_string(a.order()));
  const std::size_t d = a.dim();
  HermitianProjectionReport rep;
  rep.product = compose(a, conjugate(a));
  rep.realProjection = DiffOperator(d);

  std::vector<std::pair<DerivIndex, Coefficient>> terms(a.terms().begin(), a.terms().end());
  for (std::size_t p = 0; p < terms.size(); ++p)
    for (std::size_t q = 0; q < terms.size(); ++q) {
      const auto &[ai, fi] = terms[p];
      const auto &[aj, fj] = terms[q];
      Coefficient ri = fi.real_part(), ci = fi.imag_part();
      Coefficient rj = fj.real_part(), cj = fj.imag_part();
      Coefficient cross = ri * cj - ci * rj;
      if (!cross.is_zero()) {
        rep.conditionHolds = false;
        if (p <= q)
          rep.residuals.push_back({ai, aj, cross});
      }
      std::vector<int> sum(d);
      for (std::size_t v = 0; v < d; ++v)
        sum[v] = ai.alpha[v] + aj.alpha[v];
      rep.realProjection.add_term(DerivIndex(std::move(sum)), ri * rj + ci * cj);
    }
  if (target) {
    a.check_dim(*target);
    rep.targetMatches = rep.realProjection == *target;
  }
  return rep;
}

/// Splits `a` by the parity labels carried with the basis: plus collects the
/// members labelled +1, minus those labelled -1 (unlabelled bases are all +1).
/// Throws when `a` is not in the span of the basis.
inline std::pair<DiffOperator, DiffOperator> parity_split(const DiffOperator &a, const OperatorBasis &basis) {
  auto coords = span_membership(basis, a);
  if (!coords)
    throw Error("operator is not in the span of the basis");
  DiffOperator plus(a.dim()), minus(a.dim());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if ((*coords)[k].is_zero())
      continue;
    int sign = basis.parity.empty() ? 1 : basis.parity.at(k);
    (sign >= 0 ? plus : minus) += (*coords)[k] * basis[k];
  }
  return {plus, minus};
}

/// P(a) = a_plus - a_minus.
inline DiffOperator parity(const DiffOperator &a, const OperatorBasis &basis) {
  auto [plus, minus] = parity_split(a, basis);
  return plus - minus;
}

} // namespace symctr
