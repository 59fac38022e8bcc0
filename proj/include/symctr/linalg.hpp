#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "symctr/scalar.hpp"

namespace symctr {

/// Sparse row: (column, value) pairs sorted by column, no zero values.
using SparseRow = std::vector<std::pair<std::size_t, GaussianRational>>;

namespace detail {

/// row += factor * other
inline void axpy(SparseRow &row, const GaussianRational &factor, const SparseRow &other) {
  SparseRow out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(std::move(row[i++]));
    } else if (i == row.size() || other[j].first < row[i].first) {
      out.emplace_back(other[j].first, factor * other[j].second);
      ++j;
    } else {
      GaussianRational v = row[i].second + factor * other[j].second;
      if (!v.is_zero())
        out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

inline const GaussianRational *find_entry(const SparseRow &row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto &e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

} // namespace detail

/// Incrementally maintained reduced row-echelon form over Q(i).
///
/// Rows are inserted one at a time; each insertion reduces the new row
/// against the existing pivots and back-substitutes its own pivot, so the
/// stored rows are always the unique RREF of the span inserted so far.
class RowEchelon {
public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::size_t, SparseRow> &pivot_rows() const { return pivots_; }
  bool is_pivot(std::size_t col) const { return pivots_.count(col) != 0; }

  /// Returns true when the row was independent of the previous ones.
  bool insert(SparseRow row) {
    reduce(row);
    if (row.empty())
      return false;
    std::size_t lead = row.front().first;
    GaussianRational inv = row.front().second.inverse();
    for (auto &[c, v] : row)
      v *= inv;
    for (auto &[pc, prow] : pivots_) {
      if (const auto *e = detail::find_entry(prow, lead)) {
        GaussianRational f = -*e;
        detail::axpy(prow, f, row);
      }
    }
    pivots_.emplace(lead, std::move(row));
    return true;
  }

  /// Reduces `row` against every pivot; the result has no pivot-column entries.
  void reduce(SparseRow &row) const {
    std::size_t pos = 0;
    while (pos < row.size()) {
      auto it = pivots_.find(row[pos].first);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      GaussianRational f = -row[pos].second;
      detail::axpy(row, f, it->second);
      // entries before pos are non-pivot columns and unaffected since the
      // pivot row has zeros in other pivot columns and starts at its pivot
    }
  }

  /// Canonical nullspace: one vector per free column, then brought to RREF.
  std::vector<SparseRow> nullspace() const {
    std::vector<SparseRow> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot(f))
        continue;
      SparseRow v;
      for (const auto &[pc, prow] : pivots_)
        if (const auto *e = detail::find_entry(prow, f))
          v.emplace_back(pc, -*e);
      v.emplace_back(f, GaussianRational(1));
      std::sort(v.begin(), v.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
      basis.push_back(std::move(v));
    }
    return canonical_rows(std::move(basis), cols_);
  }

  /// Unique RREF rows of span(rows), ordered by pivot column.
  static std::vector<SparseRow> canonical_rows(std::vector<SparseRow> rows, std::size_t cols) {
    RowEchelon e(cols);
    for (auto &r : rows)
      e.insert(std::move(r));
    std::vector<SparseRow> out;
    out.reserve(e.rank());
    for (auto &[c, r] : e.pivots_)
      out.push_back(r);
    return out;
  }

private:
  std::size_t cols_;
  std::map<std::size_t, SparseRow> pivots_;
};

/// Solves sum_j x_j * columns[j] = rhs exactly where columns and rhs are sparse
/// vectors over a common row space. Free unknowns are set to zero.
inline std::optional<std::vector<GaussianRational>>
solve_columns(const std::vector<SparseRow> &columns, const SparseRow &rhs, std::size_t nrows) {
  const std::size_t k = columns.size();
  // transpose into rows of the augmented matrix [A | rhs]
  std::vector<SparseRow> rows(nrows);
  for (std::size_t j = 0; j < k; ++j)
    for (const auto &[r, v] : columns[j])
      rows.at(r).emplace_back(j, v);
  for (const auto &[r, v] : rhs)
    rows.at(r).emplace_back(k, v);
  RowEchelon e(k + 1);
  for (auto &row : rows)
    if (!row.empty())
      e.insert(std::move(row));
  if (e.is_pivot(k))
    return std::nullopt;
  std::vector<GaussianRational> x(k);
  for (const auto &[pc, prow] : e.pivot_rows())
    if (const auto *v = detail::find_entry(prow, k))
      x[pc] = *v;
  return x;
}

} // namespace symctr
