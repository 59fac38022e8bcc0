#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symctr/abstract.hpp"
#include "symctr/basis.hpp"
#include "symctr/liealg.hpp"
#include "symctr/parser.hpp"

namespace symctr {

/// A central operator together with generators known to commute with it.
struct ModelSpec {
  std::string name;
  std::vector<std::string> vars;
  DiffOperator H;
  OperatorBasis knownGenerators;
  std::map<std::string, GaussianRational> parameters;
  std::optional<std::size_t> timeIndex;
  std::optional<std::size_t> laurentIndex; // variable admitting a t^-1 term in the default ansatz
  std::string signature; // e.g. "(+,-,-,-)"; empty when no metric is involved

  std::size_t dim() const { return vars.size(); }
};

struct PerturbationReport {
  std::string name;
  DiffOperator lhs;
  DiffOperator rhs;
  DiffOperator residual; // lhs - rhs
  bool exact = false;
};

inline PerturbationReport make_report(std::string name, DiffOperator lhs, DiffOperator rhs) {
  PerturbationReport r{std::move(name), lhs, rhs, lhs - rhs, false};
  r.exact = r.residual.is_zero();
  return r;
}

namespace detail {

inline void assert_generators_commute(const ModelSpec &m) {
  for (std::size_t k = 0; k < m.knownGenerators.size(); ++k)
    if (!commutator(m.H, m.knownGenerators[k]).is_zero())
      throw Error("model " + m.name + ": generator " + m.knownGenerators.name(k) + " does not commute with H");
}

inline std::vector<std::string> spacetime_vars(std::size_t d) {
  if (d == 1)
    return {"t", "x"};
  if (d == 2)
    return {"t", "x", "y"};
  if (d == 3)
    return {"t", "x", "y", "z"};
  std::vector<std::string> v;
  for (std::size_t k = 0; k <= d; ++k)
    v.push_back("x" + std::to_string(k));
  return v;
}

inline std::string signature_string(std::size_t d) {
  std::string s = "(+";
  for (std::size_t k = 0; k < d; ++k)
    s += ",-";
  return s + ")";
}

} // namespace detail

/// eta = diag(+1, -1, ..., -1) over `dim` coordinates.
inline int minkowski_eta(std::size_t mu) { return mu == 0 ? 1 : -1; }

/// Box operator eta^{mu nu} d_mu d_nu on `dim` coordinates, time first.
inline DiffOperator box_operator(std::size_t dim) {
  DiffOperator b(dim);
  for (std::size_t mu = 0; mu < dim; ++mu)
    b += DiffOperator::derivative(dim, DerivIndex::unit(dim, mu, 2), minkowski_eta(mu));
  return b;
}

/// H = d[x,x] - i*d[t] over (x, t) with D1 = -2it d_x + x, D2 = -i d_x, D3 = i d_t, D4 = 1.
inline ModelSpec model_schrodinger1d() {
  ModelSpec m;
  m.name = "schrodinger1d";
  m.vars = {"x", "t"};
  m.timeIndex = 1;
  m.laurentIndex = 1;
  m.H = parse_operator("d[x,x] - i*d[t]", m.vars);
  m.knownGenerators.vars = m.vars;
  m.knownGenerators.push_back(parse_operator("-2*i*t*d[x] + x", m.vars), "D1");
  m.knownGenerators.push_back(parse_operator("-i*d[x]", m.vars), "D2");
  m.knownGenerators.push_back(parse_operator("i*d[t]", m.vars), "D3");
  m.knownGenerators.push_back(DiffOperator::identity(2), "D4");
  m.knownGenerators.unitIndex = 3;
  detail::assert_generators_commute(m);
  return m;
}

/// Translations d_mu, Lorentz generators i(x_mu d_nu - x_nu d_mu) with
/// x_mu = eta_mu mu x^mu, and the identity.
inline OperatorBasis poincare_generators(const std::vector<std::string> &vars) {
  const std::size_t n = vars.size();
  OperatorBasis b;
  b.vars = vars;
  for (std::size_t mu = 0; mu < n; ++mu)
    b.push_back(DiffOperator::partial(n, mu), "P_" + vars[mu]);
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = mu + 1; nu < n; ++nu) {
      GaussianRational i = GaussianRational::i();
      DiffOperator M = Coefficient::monomial(n, DerivIndex::unit(n, mu).alpha, i * minkowski_eta(mu)) *
                           DiffOperator::partial(n, nu) -
                       Coefficient::monomial(n, DerivIndex::unit(n, nu).alpha, i * minkowski_eta(nu)) *
                           DiffOperator::partial(n, mu);
      b.push_back(M, "M_" + vars[mu] + vars[nu]);
    }
  b.unitIndex = b.size();
  b.push_back(DiffOperator::identity(n), "I");
  return b;
}

/// Free Klein-Gordon operator in 1+d dimensions, signature (+,-,...,-).
inline ModelSpec model_klein_gordon(std::size_t d) {
  if (d < 1)
    throw Error("Klein-Gordon model needs at least one spatial dimension");
  ModelSpec m;
  m.name = "kg";
  m.vars = detail::spacetime_vars(d);
  m.timeIndex = 0;
  m.signature = detail::signature_string(d);
  m.H = box_operator(m.dim());
  m.knownGenerators = poincare_generators(m.vars);
  detail::assert_generators_commute(m);
  return m;
}

/// H* = a^-2 + box + (a^2/2) box^2.
inline ModelSpec model_kg4th(std::size_t d, const GaussianRational &a = 1) {
  if (a.is_zero())
    throw Error("kg4th needs a != 0");
  ModelSpec m = model_klein_gordon(d);
  m.name = "kg4th";
  const std::size_t n = m.dim();
  DiffOperator box = box_operator(n);
  GaussianRational a2 = a * a;
  m.H = DiffOperator::scalar(n, a2.inverse()) + box + (a2 * GaussianRational::rational(1, 2)) * compose(box, box);
  m.parameters["a"] = a;
  detail::assert_generators_commute(m);
  return m;
}

/// H0 = d[t,t] - d[x,x] over (t, x); the potential k*x^2 is applied by the
/// perturbation check, not stored in H.
inline ModelSpec model_harmonic_pert(const GaussianRational &c1, const GaussianRational &K,
                                     const GaussianRational &k) {
  ModelSpec m = model_klein_gordon(1);
  m.name = "harmonic-pert";
  m.parameters["c1"] = c1;
  m.parameters["K"] = K;
  m.parameters["k"] = k;
  return m;
}

inline std::vector<std::string> model_names() { return {"schrodinger1d", "kg", "kg4th", "harmonic-pert"}; }

/// Published second-order Schrödinger basis, over (x, t).
inline std::vector<std::pair<std::string, std::string>> printed_order2_entries() {
  return {
      {"D2_1", "d[t,t]"},
      {"D2_2", "-i*t^2*d[t,t] + t*x*d[x] + (i/2)*((x^2)/2 - (i/2)*t^-1)"},
      {"D2_3", "-2*i*t*d[x,x] + x*d[x] - 1/16"},
      {"D2_4", "-2*i*t*d[x] + x"},
      {"D2_5", "-i*d[x]"},
      {"D2_6", "1"},
      {"D2_7", "-2*i*t*d[x,t] + x*d[t]"},
      {"D2_8", "i*d[t]"},
      {"D2_9", "2*d[x,t]"},
      {"D2_10", "d[x,x]"},
  };
}

/// Published third-order Schrödinger basis, over (x, t).
inline std::vector<std::pair<std::string, std::string>> printed_order3_entries() {
  return {
      {"D3_1", "-2*i*(t^3/3)*d[x,x,x] - (t^2*x + i*t^3/3)*d[x,x] + (i/2)*(t*x + i*t^2*x - t^3/3 + i*t^2)*d[x]"
               " + (i/4)*(-i*x^3/3 + t*x^2 + i*t^2*x - t^3/3)"},
      {"D3_2", "-2*i*t^2*d[x,x,x] - (2*t*x + i*t^2)*d[x,x] + (i/2)*(x^2 + 2*i*t*x - t^2 + 2*i*t)*d[x]"
               " + (i/4)*(x + i*t)^2"},
      {"D3_3", "-4*i*t*d[x,x,x] - x*d[x,x] + i*d[x]"},
      {"D3_4", "-4*i*d[x,x,x]"},
      {"D3_5", "2*i*t*d[x,t,t] + x*d[x,x]"},
      {"D3_6", "i*t^2*d[x,x,t] + t*x*d[x,t] - (i/4)*(x^2 + 2*i*t)*d[t]"},
      {"D3_7", "2*i*t*d[x,x,t] + x*d[x,t]"},
      {"D3_8", "-i*d[t,t,t]"},
      {"D3_9", "-i*d[x,x,t]"},
      {"D3_10", "i*d[x,t,t]"},
      {"D3_11", "-2*i*t*d[x,x] - (x + i*t)*d[x] - (1/2)*(x + i*t)"},
      {"D3_12", "-2*t*d[x,x] + i*d[x] + i/2"},
      {"D3_13", "t*d[x,t] - (i/2)*x*d[t]"},
      {"D3_14", "d[x,x]"},
      {"D3_15", "d[t,t]"},
      {"D3_16", "d[x,t]"},
      {"D3_17", "2*i*t*d[x] - x"},
      {"D3_18", "i*d[t]"},
      {"D3_19", "-i*d[x]"},
      {"D3_20", "1"},
  };
}

inline OperatorBasis entries_basis(const std::vector<std::pair<std::string, std::string>> &entries,
                                   const std::vector<std::string> &vars) {
  OperatorBasis b;
  b.vars = vars;
  for (const auto &[name, text] : entries)
    b.push_back(parse_operator(text, vars), name);
  for (std::size_t k = 0; k < b.size(); ++k)
    if (b[k] == DiffOperator::identity(b.dim()))
      b.unitIndex = k;
  return b;
}

/// Per-entry commutation and span membership against a computed basis.
struct EntryCheck {
  std::string name;
  DiffOperator op;
  DiffOperator commutator; // [H, op]
  bool inSpan = false;
  DiffOperator spanResidual;

  bool ok() const { return commutator.is_zero() && inSpan; }
};

// ---------------------------------------------------------------------------
// Alpha-parametrized generators

/// alpha^v_mu over the spacetime coordinates; the diagonal must vanish.
struct AlphaMatrix {
  std::vector<std::vector<GaussianRational>> a; // a[v][mu] = alpha^v_mu

  static AlphaMatrix ones(std::size_t n) {
    AlphaMatrix m;
    m.a.assign(n, std::vector<GaussianRational>(n, 1));
    for (std::size_t k = 0; k < n; ++k)
      m.a[k][k] = 0;
    return m;
  }

  std::size_t size() const { return a.size(); }
  const GaussianRational &operator()(std::size_t v, std::size_t mu) const { return a.at(v).at(mu); }

  void validate() const {
    for (const auto &row : a)
      if (row.size() != a.size())
        throw Error("alpha matrix must be square");
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!a[k][k].is_zero())
        throw Error("alpha matrix must have a zero diagonal");
  }

  /// alpha^v = sum_mu alpha^v_mu.
  GaussianRational row_sum(std::size_t v) const {
    GaussianRational s;
    for (const auto &q : a.at(v))
      s += q;
    return s;
  }

  /// f^v = alpha^v_mu x^mu.
  Coefficient linear_form(std::size_t v) const {
    const std::size_t n = size();
    Coefficient f(n);
    for (std::size_t mu = 0; mu < n; ++mu)
      f += Coefficient::monomial(n, DerivIndex::unit(n, mu).alpha, a[v][mu]);
    return f;
  }

  /// sum_mu sum_v alpha^v_mu C^v; zero when C satisfies the Killing constraint.
  GaussianRational constraint_residual(const std::vector<GaussianRational> &C) const {
    if (C.size() != size())
      throw DimensionMismatch(C.size(), size());
    GaussianRational s;
    for (std::size_t v = 0; v < size(); ++v)
      s += row_sum(v) * C[v];
    return s;
  }
};

/// O_nm = alpha^n f^m d_m - alpha^m f^n d_n.
inline DiffOperator build_deformed_generator(const AlphaMatrix &A, std::size_t n, std::size_t m) {
  A.validate();
  const std::size_t d = A.size();
  if (n >= d || m >= d)
    throw Error("generator index out of range");
  return (A.row_sum(n) * A.linear_form(m)) * DiffOperator::partial(d, m) -
         (A.row_sum(m) * A.linear_form(n)) * DiffOperator::partial(d, n);
}

/// M_abc = alpha^c_a alpha^b d_c - alpha^b_a alpha^c d_b.
inline DiffOperator auxiliary_m(const AlphaMatrix &A, std::size_t a, std::size_t b, std::size_t c) {
  const std::size_t d = A.size();
  return DiffOperator::partial(d, c, A(c, a) * A.row_sum(b)) - DiffOperator::partial(d, b, A(b, a) * A.row_sum(c));
}

inline DiffOperator translation_p(std::size_t dim, std::size_t mu) {
  return DiffOperator::partial(dim, mu, -GaussianRational::i());
}

/// Residuals of one family of identities; `claim` marks asserted identities
/// (they decide the exit status), the rest are informational probes.
struct IdentityGroup {
  std::string name;
  bool claim = true;
  std::size_t instances = 0;
  std::vector<PerturbationReport> failures;

  bool holds() const { return failures.empty(); }
};

struct DeformedBracketReport {
  std::vector<IdentityGroup> groups;

  bool claims_hold() const {
    for (const auto &g : groups)
      if (g.claim && !g.holds())
        return false;
    return true;
  }
  const IdentityGroup &group(const std::string &name) const {
    for (const auto &g : groups)
      if (g.name == name)
        return g;
    throw Error("no identity group named " + name);
  }
};

inline DeformedBracketReport check_deformed_brackets(const AlphaMatrix &A) {
  A.validate();
  const std::size_t d = A.size();
  DeformedBracketReport rep;
  auto add = [](IdentityGroup &g, std::string label, DiffOperator lhs, DiffOperator rhs) {
    ++g.instances;
    PerturbationReport r = make_report(std::move(label), std::move(lhs), std::move(rhs));
    if (!r.exact)
      g.failures.push_back(std::move(r));
  };
  auto idx = [](std::size_t a, std::size_t b, std::size_t c = SIZE_MAX) {
    std::string s = std::to_string(a) + std::to_string(b);
    return c == SIZE_MAX ? s : s + std::to_string(c);
  };
  std::vector<DiffOperator> P;
  for (std::size_t mu = 0; mu < d; ++mu)
    P.push_back(translation_p(d, mu));
  std::vector<std::vector<DiffOperator>> O(d, std::vector<DiffOperator>(d));
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t m = 0; m < d; ++m)
      O[n][m] = build_deformed_generator(A, n, m);
  auto M = [&](std::size_t a, std::size_t b, std::size_t c) { return auxiliary_m(A, a, b, c); };
  const DiffOperator zero(d);

  IdentityGroup tt{"translations commute", true};
  for (std::size_t mu = 0; mu < d; ++mu)
    for (std::size_t nu = 0; nu < d; ++nu)
      add(tt, "[P_" + idx(mu, nu) + "]", commutator(P[mu], P[nu]), zero);
  rep.groups.push_back(tt);

  IdentityGroup rbt{"rotation-translation brackets", true};
  for (std::size_t mu = 0; mu < d; ++mu)
    for (std::size_t nu = 0; nu < d; ++nu)
      for (std::size_t n = 0; n < d; ++n)
        add(rbt, "[O_" + idx(mu, nu) + ", P_" + std::to_string(n) + "]", commutator(O[mu][nu], P[n]),
            (A.row_sum(nu) * A(mu, n)) * P[mu] - (A.row_sum(mu) * A(nu, n)) * P[nu]);
  rep.groups.push_back(rbt);

  IdentityGroup rb{"rotation-rotation brackets", true};
  std::vector<Coefficient> f;
  for (std::size_t a = 0; a < d; ++a)
    f.push_back(A.linear_form(a));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t u = 0; u < d; ++u)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t v = 0; v < d; ++v) {
          DiffOperator rhs = (A.row_sum(a) * f[u]) * M(u, b, v) + (A.row_sum(u) * f[a]) * M(a, v, b) +
                             (A.row_sum(b) * f[v]) * M(v, u, a) + (A.row_sum(v) * f[b]) * M(b, a, u);
          add(rb, "[O_" + idx(a, u) + ", O_" + idx(b, v) + "]", commutator(O[a][u], O[b][v]), rhs);
        }
  rep.groups.push_back(rb);

  IdentityGroup ann{"M annihilation", true};
  IdentityGroup anti{"M antisymmetry", true};
  IdentityGroup contr{"M contraction", true};
  IdentityGroup trans{"M translation form", true};
  IdentityGroup transP{"M translation form via P", true};
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      add(ann, "M_" + idx(a, b, b), M(a, b, b), zero);
      add(trans, "M_" + idx(a, b, a), M(a, b, a), DiffOperator::partial(d, b, -(A(b, a) * A.row_sum(a))));
      add(transP, "M_" + idx(a, b, a), M(a, b, a), (GaussianRational::i() * A(b, a) * A.row_sum(a)) * P[b]);
      for (std::size_t c = 0; c < d; ++c) {
        add(anti, "M_" + idx(a, b, c) + " + M_" + idx(a, c, b), M(a, b, c) + M(a, c, b), zero);
        add(contr, "alpha^a M_" + idx(a, b, c), A.row_sum(a) * M(a, b, c),
            A.row_sum(c) * M(a, b, a) + A.row_sum(b) * M(a, a, c));
      }
    }
  for (auto *g : {&ann, &anti, &contr, &trans, &transP})
    rep.groups.push_back(*g);

  IdentityGroup oanti{"O antisymmetry", true};
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t m = 0; m < d; ++m)
      add(oanti, "O_" + idx(n, m) + " + O_" + idx(m, n), O[n][m] + O[m][n], zero);
  rep.groups.push_back(oanti);

  IdentityGroup boxc{"box commutation", false};
  IdentityGroup lorentz{"deviation from Lorentz generators", false};
  const DiffOperator box = box_operator(d);
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t m = n + 1; m < d; ++m) {
      add(boxc, "[box, O_" + idx(n, m) + "]", commutator(box, O[n][m]), zero);
      GaussianRational i = GaussianRational::i();
      DiffOperator Minf = Coefficient::monomial(d, DerivIndex::unit(d, n).alpha, i * minkowski_eta(n)) *
                              DiffOperator::partial(d, m) -
                          Coefficient::monomial(d, DerivIndex::unit(d, m).alpha, i * minkowski_eta(m)) *
                              DiffOperator::partial(d, n);
      add(lorentz, "O_" + idx(n, m) + " - M_" + idx(n, m), O[n][m], Minf);
    }
  rep.groups.push_back(boxc);
  rep.groups.push_back(lorentz);
  return rep;
}

// ---------------------------------------------------------------------------
// Perturbation checks

/// D = x^rho d_rho over all coordinates.
inline DiffOperator dilation_operator(std::size_t dim) {
  DiffOperator D(dim);
  for (std::size_t r = 0; r < dim; ++r)
    D += Coefficient::variable(dim, r) * DiffOperator::partial(dim, r);
  return D;
}

/// For n = 1..nMax: the scaling law [box^n, D] = 2n box^n, and the comparison
/// [box^n, D] against (2 box)^n.
struct DilationStep {
  unsigned n = 0;
  PerturbationReport scaling;    // [box^n, D] vs 2n box^n
  PerturbationReport comparison; // [box^n, D] vs (2 box)^n
};

inline std::vector<DilationStep> verify_dilation_tower(unsigned nMax, std::size_t dim = 4) {
  if (nMax < 1)
    throw Error("dilation tower needs nMax >= 1");
  const DiffOperator box = box_operator(dim);
  const DiffOperator D = dilation_operator(dim);
  std::vector<DilationStep> out;
  DiffOperator boxn = box;
  for (unsigned n = 1; n <= nMax; ++n) {
    if (n > 1)
      boxn = compose(boxn, box);
    DiffOperator lhs = commutator(boxn, D);
    GaussianRational two_n = static_cast<long>(2 * n);
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, n);
    DilationStep s;
    s.n = n;
    s.scaling = make_report("[box^" + std::to_string(n) + ", x^r d_r] = " + std::to_string(2 * n) + " box^" +
                                std::to_string(n),
                            lhs, two_n * boxn);
    s.comparison = make_report("[box^" + std::to_string(n) + ", x^r d_r] = (2 box)^" + std::to_string(n), lhs,
                               GaussianRational(mpq_class(p2)) * boxn);
    out.push_back(std::move(s));
  }
  return out;
}

struct HarmonicReport {
  DiffOperator Deps;                    // e^{c1 x}(d_x + K x / c1)
  PerturbationReport translation;       // [d_x, D_eps] vs (c1+1) D_eps - e^{c1 x} d_x
  PerturbationReport rotation;          // [O_xt, D_eps] vs the stated deformed bracket
  DiffOperator potentialBracket;        // [H0 + k x^2, D_eps]
  std::vector<std::string> dictionaryNames;
  std::vector<DiffOperator> dictionary;
  std::optional<std::vector<GaussianRational>> decomposition;
  DiffOperator decompositionResidual;
};

inline std::vector<EntryCheck> cross_check_entries(const DiffOperator &H, const OperatorBasis &entries,
                                                   const std::vector<DiffOperator> &computed) {
  OperatorBasis span;
  span.vars = entries.vars;
  for (const auto &op : computed)
    span.push_back(op);
  std::vector<EntryCheck> out;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    EntryCheck c;
    c.name = entries.name(k);
    c.op = entries[k];
    c.commutator = commutator(H, c.op);
    c.spanResidual = span_residual(c.op, span);
    c.inSpan = c.spanResidual.is_zero();
    out.push_back(std::move(c));
  }
  return out;
}

/// Works over (t, x) with H0 = d[t,t] - d[x,x].
inline HarmonicReport verify_harmonic_perturbation(const GaussianRational &c1, const GaussianRational &K,
                                                   const GaussianRational &k,
                                                   const AlphaMatrix &A = AlphaMatrix::ones(2)) {
  if (c1.is_zero())
    throw Error("harmonic perturbation needs c1 != 0");
  A.validate();
  if (A.size() != 2)
    throw Error("harmonic perturbation works over (t, x); alpha matrix must be 2x2");
  const std::size_t d = 2, T = 0, X = 1;
  HarmonicReport r;
  Coefficient e = Coefficient::exponential(d, {GaussianRational(0), c1});
  Coefficient x = Coefficient::variable(d, X);
  DiffOperator dx = DiffOperator::partial(d, X);
  r.Deps = e * dx + ((K / c1) * (x * e)) * DiffOperator::identity(d);

  r.translation = make_report("[d_x, D_eps] = (c1+1) D_eps - e^{c1 x} d_x", commutator(dx, r.Deps),
                              (c1 + 1) * r.Deps - e * dx);

  DiffOperator O = build_deformed_generator(A, X, T);
  Coefficient fx = A.linear_form(X);
  DiffOperator rhs = (-(c1 * A.row_sum(T)) * fx) * r.Deps +
                     e * ((A.row_sum(X) * A(T, X)) * DiffOperator::partial(d, T) -
                          DiffOperator::multiplication((K / c1) * fx));
  r.rotation = make_report("[O_xt, D_eps] = -c1 alpha^t f^x D_eps + e^{c1 x}(alpha^x alpha^t_x d_t - K f^x / c1)",
                           commutator(O, r.Deps), rhs);

  DiffOperator H = box_operator(d) + DiffOperator::multiplication(k * x * x);
  r.potentialBracket = commutator(H, r.Deps);

  auto add = [&](std::string name, DiffOperator op) {
    r.dictionaryNames.push_back(std::move(name));
    r.dictionary.push_back(std::move(op));
  };
  add("I", DiffOperator::identity(d));
  add("D_eps", r.Deps);
  add("e^{c1 x} d[x,x]", e * DiffOperator::derivative(d, DerivIndex::unit(d, X, 2)));
  add("e^{c1 x} d[x]", e * dx);
  add("x e^{c1 x} d[x]", (x * e) * dx);
  for (int p = 0; p <= 3; ++p)
    add(p == 0 ? "e^{c1 x}" : p == 1 ? "x e^{c1 x}" : "x^" + std::to_string(p) + " e^{c1 x}",
        DiffOperator::multiplication(x.pow(static_cast<unsigned>(p)) * e));
  r.decomposition = span_coordinates(r.dictionary, r.potentialBracket);
  OperatorBasis dict;
  dict.vars = {"t", "x"};
  dict.ops = r.dictionary;
  r.decompositionResidual = span_residual(r.potentialBracket, dict);
  return r;
}

// ---------------------------------------------------------------------------
// Clifford condition

/// True iff for every pair of `generators` the symmetric product
/// e_i e_j + e_j e_i equals multiple * metric_i * delta_ij * unit. With
/// `strict`, the antisymmetric part among generators must vanish too.
inline bool clifford_condition_check(const AbstractAlgebra &alg, const std::vector<std::size_t> &generators,
                                     const std::vector<GaussianRational> &metric, const GaussianRational &multiple,
                                     bool strict = false) {
  if (!alg.unitIndex)
    throw Error("Clifford check requires a unit element");
  if (metric.size() != generators.size())
    throw DimensionMismatch(metric.size(), generators.size());
  const std::size_t n = alg.size(), u = *alg.unitIndex;
  for (std::size_t p = 0; p < generators.size(); ++p)
    for (std::size_t q = 0; q < generators.size(); ++q) {
      const std::size_t i = generators[p], j = generators[q];
      if (i >= n || j >= n)
        throw Error("generator index out of range");
      for (std::size_t k = 0; k < n; ++k) {
        GaussianRational sym = alg.mult(i, j, k) + alg.mult(j, i, k);
        GaussianRational want = (p == q && k == u) ? multiple * metric[p] : GaussianRational(0);
        if (!(sym == want))
          return false;
        if (strict && !(alg.mult(i, j, k) == alg.mult(j, i, k)))
          return false;
      }
    }
  return true;
}

/// Table of the 5-element algebra {K^0..K^3, unit} with K^mu K^nu = 4 eta_mu nu unit.
inline AbstractAlgebra dirac_shadow_algebra() {
  AbstractAlgebra alg{StructureConstants(5), 4};
  for (std::size_t k = 0; k < 5; ++k) {
    alg.mult(4, k, k) = 1;
    alg.mult(k, 4, k) = 1;
  }
  for (std::size_t mu = 0; mu < 4; ++mu)
    alg.mult(mu, mu, 4) = 4 * minkowski_eta(mu);
  return alg;
}

} // namespace symctr
