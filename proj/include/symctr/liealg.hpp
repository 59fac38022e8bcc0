#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symctr/abstract.hpp"
#include "symctr/basis.hpp"
#include "symctr/structure.hpp"

namespace symctr {

/// A bracket [B_i, B_j] that has no constant-coefficient expansion in the basis.
class ClosureError : public Error {
public:
  ClosureError(std::size_t i, std::size_t j, DiffOperator residual)
      : Error("basis is not Lie-closed: bracket [" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
              "] is outside the span"),
        i_(i), j_(j), residual_(std::move(residual)) {}
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  const DiffOperator &residual() const { return residual_; }

private:
  std::size_t i_, j_;
  DiffOperator residual_;
};

inline std::optional<AbstractElement> express_in_basis(const DiffOperator &target, const OperatorBasis &basis) {
  auto coords = span_membership(basis, target);
  if (!coords)
    return std::nullopt;
  return AbstractElement{std::move(*coords)};
}

/// What remains of `op` after reduction against the row-echelon form of the
/// basis span; zero iff `op` lies in the span.
inline DiffOperator span_residual(const DiffOperator &op, const OperatorBasis &basis) {
  ComponentIndex idx;
  std::vector<SparseRow> rows;
  for (const auto &b : basis.ops)
    rows.push_back(idx.flatten(b));
  SparseRow target = idx.flatten(op);
  RowEchelon e(idx.size());
  for (auto &r : rows)
    e.insert(std::move(r));
  e.reduce(target);
  std::vector<const ComponentKey *> keys(idx.size());
  for (const auto &[key, k] : idx.entries())
    keys[k] = &key;
  DiffOperator out(op.dim());
  for (const auto &[row, v] : target)
    out.add_term(keys[row]->deriv, Coefficient::monomial(op.dim(), keys[row]->powers, v, keys[row]->expArg));
  return out;
}

/// C^k_ij with [B_i, B_j] = sum_k C^k_ij B_k. Throws ClosureError naming the
/// first pair whose bracket leaves the span.
inline StructureConstants structure_constants(const OperatorBasis &basis) {
  const std::size_t n = basis.size();
  if (span_rank(basis.ops) != n)
    throw Error("basis members are linearly dependent; structure constants are not unique");
  StructureConstants C(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      DiffOperator br = commutator(basis[i], basis[j]);
      auto coords = span_membership(basis, br);
      if (!coords)
        throw ClosureError(i, j, span_residual(br, basis));
      for (std::size_t k = 0; k < n; ++k) {
        C(i, j, k) = (*coords)[k];
        C(j, i, k) = -(*coords)[k];
      }
    }
  return C;
}

struct SubalgebraReport {
  bool closed = true;
  std::optional<std::pair<std::size_t, std::size_t>> violatingPair; // indices into the full basis
  DiffOperator residual;
};

/// True iff every pairwise bracket within `subset` stays in span(subset).
inline SubalgebraReport check_subalgebra_closed(const OperatorBasis &basis, const std::vector<std::size_t> &subset) {
  OperatorBasis sub = basis.subset(subset);
  SubalgebraReport rep;
  rep.residual = DiffOperator(basis.dim());
  for (std::size_t a = 0; a < sub.size(); ++a)
    for (std::size_t b = a + 1; b < sub.size(); ++b) {
      DiffOperator br = commutator(sub[a], sub[b]);
      if (br.is_zero() || span_membership(sub, br))
        continue;
      rep.closed = false;
      rep.violatingPair = std::make_pair(subset[a], subset[b]);
      rep.residual = span_residual(br, sub);
      return rep;
    }
  return rep;
}

/// Reconstructs sum_k C^k_ij B_k; equals [B_i, B_j] for a valid table.
inline DiffOperator bracket_from_constants(const OperatorBasis &basis, const StructureConstants &C, std::size_t i,
                                           std::size_t j) {
  return combine(basis.ops, C.product_coords(i, j), basis.dim());
}

} // namespace symctr
