#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "symctr/linalg.hpp"
#include "symctr/operator.hpp"

namespace symctr {

/// (derivative index, monomial powers, exponential argument): one scalar slot
/// of a DiffOperator viewed as a vector over Q(i).
struct ComponentKey {
  DerivIndex deriv;
  Exponents powers;
  ExpArg expArg;
};

struct ComponentKeyOrder {
  bool operator()(const ComponentKey &a, const ComponentKey &b) const {
    DerivIndexOrder dord;
    if (dord(a.deriv, b.deriv))
      return true;
    if (dord(b.deriv, a.deriv))
      return false;
    return compare_term_keys(a.powers, a.expArg, b.powers, b.expArg) < 0;
  }
};

/// Assigns stable row numbers to component keys as operators are flattened.
class ComponentIndex {
public:
  std::size_t index_of(const ComponentKey &key) {
    auto [it, inserted] = map_.try_emplace(key, map_.size());
    return it->second;
  }
  std::optional<std::size_t> find(const ComponentKey &key) const {
    auto it = map_.find(key);
    if (it == map_.end())
      return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return map_.size(); }
  const std::map<ComponentKey, std::size_t, ComponentKeyOrder> &entries() const { return map_; }

  SparseRow flatten(const DiffOperator &op) {
    SparseRow v;
    for (const auto &[alpha, c] : op.terms())
      for (const auto &t : c.terms())
        v.emplace_back(index_of(ComponentKey{alpha, t.powers, t.expArg}), t.scalar);
    std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return v;
  }

private:
  std::map<ComponentKey, std::size_t, ComponentKeyOrder> map_;
};

/// Ordered list of operators sharing one variable set.
///
/// `unitIndex` marks the member that is the identity operator, and the
/// optional `parity` labels (+1 symmetric, -1 antisymmetric) define the
/// Jordan/Lie split used by parity_split.
struct OperatorBasis {
  std::vector<std::string> vars;
  std::vector<DiffOperator> ops;
  std::vector<std::string> names;
  std::optional<std::size_t> unitIndex;
  std::vector<int> parity;

  std::size_t size() const { return ops.size(); }
  std::size_t dim() const { return vars.size(); }
  const DiffOperator &operator[](std::size_t k) const { return ops.at(k); }

  std::string name(std::size_t k) const {
    return k < names.size() && !names[k].empty() ? names[k] : "B" + std::to_string(k + 1);
  }

  void push_back(DiffOperator op, std::string name = {}) {
    if (op.dim() != vars.size())
      throw DimensionMismatch(op.dim(), vars.size());
    ops.push_back(std::move(op));
    names.push_back(std::move(name));
  }

  OperatorBasis subset(const std::vector<std::size_t> &idx) const {
    OperatorBasis s{vars, {}, {}, std::nullopt, {}};
    for (std::size_t k : idx) {
      if (k >= ops.size())
        throw Error("basis index " + std::to_string(k + 1) + " out of range");
      if (unitIndex && *unitIndex == k)
        s.unitIndex = s.ops.size();
      s.push_back(ops[k], name(k));
      if (!parity.empty())
        s.parity.push_back(parity.at(k));
    }
    return s;
  }
};

/// Exact coordinates of `candidate` in span(ops), if it lies there. When the
/// ops are dependent the coordinates of free members are zero.
inline std::optional<std::vector<GaussianRational>> span_coordinates(const std::vector<DiffOperator> &ops,
                                                                     const DiffOperator &candidate) {
  ComponentIndex idx;
  std::vector<SparseRow> cols;
  cols.reserve(ops.size());
  for (const auto &op : ops) {
    candidate.check_dim(op);
    cols.push_back(idx.flatten(op));
  }
  SparseRow rhs = idx.flatten(candidate);
  return solve_columns(cols, rhs, idx.size());
}

inline std::optional<std::vector<GaussianRational>> span_membership(const OperatorBasis &basis,
                                                                    const DiffOperator &candidate) {
  if (candidate.dim() != basis.dim())
    throw DimensionMismatch(candidate.dim(), basis.dim());
  return span_coordinates(basis.ops, candidate);
}

inline DiffOperator combine(const std::vector<DiffOperator> &ops, const std::vector<GaussianRational> &coords,
                            std::size_t dim) {
  DiffOperator r(dim);
  for (std::size_t k = 0; k < ops.size(); ++k)
    if (!coords.at(k).is_zero())
      r += coords[k] * ops[k];
  return r;
}

/// Number of linearly independent members.
inline std::size_t span_rank(const std::vector<DiffOperator> &ops) {
  ComponentIndex idx;
  std::vector<SparseRow> rows;
  for (const auto &op : ops)
    rows.push_back(idx.flatten(op));
  RowEchelon e(idx.size());
  for (auto &r : rows)
    e.insert(std::move(r));
  return e.rank();
}

} // namespace symctr
