#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "symctr/basis.hpp"
#include "symctr/linalg.hpp"
#include "symctr/operator.hpp"

namespace symctr {

/// Finite ansatz for an operator of order <= `order`: one unknown constant per
/// (derivative index, coefficient monomial) pair.
struct AnsatzSpec {
  int order = 1;
  std::size_t dim = 0;
  int maxDegree = 2;                 // bound on the sum of non-negative exponents
  std::vector<int> maxDegreePerVar;  // optional per-variable caps (empty = none)
  std::vector<int> laurentMin;       // most negative exponent per variable (empty = all 0)
  std::vector<ExpArg> expArgs;       // admitted exponential arguments besides 0

  int laurent_min(std::size_t v) const { return laurentMin.empty() ? 0 : laurentMin.at(v); }
};

/// One unknown: the coefficient monomial multiplying d^deriv.
struct AnsatzUnknown {
  DerivIndex deriv;
  Exponents powers;
  ExpArg expArg;
};

struct Ansatz {
  std::size_t dim = 0;
  std::vector<AnsatzUnknown> unknowns;

  DiffOperator unknown_operator(std::size_t k) const {
    const auto &u = unknowns.at(k);
    return Coefficient::monomial(dim, u.powers, 1, u.expArg) * DiffOperator::derivative(dim, u.deriv);
  }
  /// Operator sum_k x_k * unknown_k.
  DiffOperator assemble(const SparseRow &x) const {
    DiffOperator r(dim);
    for (const auto &[k, q] : x) {
      const auto &u = unknowns.at(k);
      r.add_term(u.deriv, Coefficient::monomial(dim, u.powers, q, u.expArg));
    }
    return r;
  }
};

namespace detail {

inline std::vector<DerivIndex> deriv_indices_up_to(std::size_t dim, int order) {
  std::vector<DerivIndex> out;
  std::vector<int> a(dim, 0);
  // enumerate all multi-indices with |a| <= order
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int left) {
    if (v == dim) {
      out.emplace_back(a);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      a[v] = k;
      rec(v + 1, left - k);
    }
    a[v] = 0;
  };
  if (order >= 0)
    rec(0, order);
  std::sort(out.begin(), out.end(), DerivIndexOrder{});
  return out;
}

inline std::vector<Exponents> monomials(const AnsatzSpec &spec) {
  std::vector<Exponents> out;
  Exponents p(spec.dim, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t v, int used) {
    if (v == spec.dim) {
      out.push_back(p);
      return;
    }
    int cap = spec.maxDegree - used;
    if (!spec.maxDegreePerVar.empty())
      cap = std::min(cap, spec.maxDegreePerVar.at(v));
    for (int k = spec.laurent_min(v); k <= cap; ++k) {
      p[v] = k;
      rec(v + 1, used + std::max(k, 0));
    }
    p[v] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), [&](const Exponents &a, const Exponents &b) {
    ExpArg z(a.size());
    return compare_term_keys(a, z, b, z) < 0;
  });
  return out;
}

/// Worker count from SYMCTR_THREADS (>= 1); results never depend on it.
inline unsigned thread_count() {
  if (const char *env = std::getenv("SYMCTR_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1)
      return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : std::min(hw, 8u);
}

template <class F> void parallel_for(std::size_t n, F &&f) {
  unsigned workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k)
      f(k);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < n; k += workers)
        f(k);
    });
  for (auto &t : pool)
    t.join();
}

} // namespace detail

/// Unknowns ordered by derivative index (highest order first), then exponential
/// argument, then monomial degree (highest first).
inline Ansatz build_ansatz(const AnsatzSpec &spec) {
  if (spec.order < 0)
    throw Error("ansatz order must be non-negative");
  if (spec.dim == 0)
    throw Error("ansatz needs at least one variable");
  if (!spec.laurentMin.empty() && spec.laurentMin.size() != spec.dim)
    throw Error("laurentMin must list one bound per variable");
  Ansatz a;
  a.dim = spec.dim;
  std::vector<ExpArg> exps{ExpArg(spec.dim)};
  for (const auto &l : spec.expArgs) {
    if (l.size() != spec.dim)
      throw DimensionMismatch(l.size(), spec.dim);
    if (std::find(exps.begin(), exps.end(), l) == exps.end())
      exps.push_back(l);
  }
  std::sort(exps.begin(), exps.end());
  auto monos = detail::monomials(spec);
  for (const auto &d : detail::deriv_indices_up_to(spec.dim, spec.order))
    for (const auto &e : exps)
      for (const auto &m : monos)
        a.unknowns.push_back({d, m, e});
  if (a.unknowns.empty())
    throw Error("ansatz has empty support");
  return a;
}

/// Exact linear conditions for [H, sum_k x_k unknown_k] = 0: one row per
/// (derivative index, monomial) component of the bracket.
struct LinearSystem {
  Ansatz ansatz;
  ComponentIndex rows;
  std::vector<SparseRow> columns; // column k = components of [H, unknown_k]

  std::size_t row_count() const { return rows.size(); }
  std::size_t column_count() const { return columns.size(); }
};

inline LinearSystem commutator_system(const DiffOperator &H, const AnsatzSpec &spec) {
  if (H.dim() != spec.dim)
    throw DimensionMismatch(H.dim(), spec.dim);
  if (H.has_exp())
    throw Error("central operator must have polynomial (non-exponential) coefficients");
  LinearSystem sys;
  sys.ansatz = build_ansatz(spec);
  const std::size_t n = sys.ansatz.unknowns.size();
  std::vector<DiffOperator> brackets(n);
  detail::parallel_for(n, [&](std::size_t k) { brackets[k] = commutator(H, sys.ansatz.unknown_operator(k)); });
  sys.columns.reserve(n);
  for (const auto &b : brackets)
    sys.columns.push_back(sys.rows.flatten(b));
  return sys;
}

/// Row-echelon data of a system: rank and the canonical nullspace vectors.
struct SystemSolution {
  std::size_t rank = 0;
  std::vector<SparseRow> nullspace;
};

inline SystemSolution solve_system(const LinearSystem &sys) {
  std::vector<SparseRow> rows(sys.row_count());
  for (std::size_t k = 0; k < sys.columns.size(); ++k)
    for (const auto &[r, v] : sys.columns[k])
      rows[r].emplace_back(k, v);
  RowEchelon e(sys.column_count());
  for (auto &row : rows)
    if (!row.empty())
      e.insert(std::move(row));
  return {e.rank(), e.nullspace()};
}

struct CentralizerBasis {
  std::vector<DiffOperator> operators;
  int order = 0;
  bool canonical = true;
  std::size_t rank = 0;      // rank of the linear system
  std::size_t unknowns = 0;  // columns of the linear system
  std::size_t equations = 0; // rows of the linear system
};

/// Canonical (reduced-echelon) nullspace basis; every member is re-checked
/// against H and a failure raises.
inline CentralizerBasis nullspace(const LinearSystem &sys, const DiffOperator &H, int order) {
  SystemSolution sol = solve_system(sys);
  CentralizerBasis out;
  out.order = order;
  out.rank = sol.rank;
  out.unknowns = sys.column_count();
  out.equations = sys.row_count();
  for (const auto &v : sol.nullspace)
    out.operators.push_back(sys.ansatz.assemble(v));
  for (const auto &op : out.operators)
    if (!commutator(H, op).is_zero())
      throw Error("internal error: nullspace member does not commute with H");
  return out;
}

/// Default bounds: total degree order+1, Laurent exponent -1 in `timeIndex`.
inline AnsatzSpec default_ansatz(std::size_t dim, int order, std::optional<std::size_t> timeIndex) {
  AnsatzSpec spec;
  spec.order = order;
  spec.dim = dim;
  spec.maxDegree = order + 1;
  if (timeIndex) {
    spec.laurentMin.assign(dim, 0);
    spec.laurentMin.at(*timeIndex) = -1;
  }
  return spec;
}

inline CentralizerBasis solve_centralizer(const DiffOperator &H, const AnsatzSpec &spec) {
  return nullspace(commutator_system(H, spec), H, spec.order);
}

/// a_N(n) = (n+N-1)! / ((N-1)! n!) = binom(n+N-1, n).
inline mpz_class count_formula(unsigned long N, unsigned long n) {
  if (N == 0)
    throw Error("count formula needs N >= 1");
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n + N - 1, n);
  return r;
}

} // namespace symctr
