#include <gtest/gtest.h>

#include "symctr/models.hpp"
#include "symctr/solver.hpp"

#include "oracle.hpp"

using namespace symctr;

namespace {

/// Independent construction of a Poincare generator list: d_mu,
/// x_mu d_nu - x_nu d_mu (lowered with the (+,-,...) metric), identity.
std::vector<DiffOperator> poincare_by_hand(std::size_t n) {
  std::vector<DiffOperator> out;
  for (std::size_t mu = 0; mu < n; ++mu) {
    DiffOperator d(n);
    d.add_term(DerivIndex::unit(n, mu), Coefficient::constant(n, 1));
    out.push_back(d);
  }
  for (std::size_t mu = 0; mu < n; ++mu)
    for (std::size_t nu = mu + 1; nu < n; ++nu) {
      DiffOperator m(n);
      m.add_term(DerivIndex::unit(n, nu), Coefficient::monomial(n, DerivIndex::unit(n, mu).alpha, mu == 0 ? 1 : -1));
      m.add_term(DerivIndex::unit(n, mu), Coefficient::monomial(n, DerivIndex::unit(n, nu).alpha, nu == 0 ? -1 : 1));
      out.push_back(m);
    }
  out.push_back(DiffOperator::identity(n));
  return out;
}

DiffOperator box_by_hand(std::size_t n) {
  DiffOperator b(n);
  for (std::size_t mu = 0; mu < n; ++mu)
    b.add_term(DerivIndex::unit(n, mu, 2), Coefficient::constant(n, mu == 0 ? 1 : -1));
  return b;
}

} // namespace

TEST(Schrodinger, Generators) {
  ModelSpec m = model_schrodinger1d();
  EXPECT_EQ(m.knownGenerators.size(), 4u);
  EXPECT_EQ(m.H.order(), 2);
  EXPECT_TRUE(commutator(m.H, m.knownGenerators[1]).is_zero());
  for (const auto &g : m.knownGenerators.ops)
    EXPECT_TRUE(oracle::commute(m.H, g));
}

TEST(KleinGordon, GeneratorCounts) {
  for (std::size_t d = 1; d <= 4; ++d) {
    ModelSpec m = model_klein_gordon(d);
    EXPECT_EQ(m.knownGenerators.size(), 1 + (d + 1) + (d + 1) * d / 2) << d;
  }
  EXPECT_EQ(model_klein_gordon(3).knownGenerators.size(), 11u);
  EXPECT_EQ(model_klein_gordon(1).knownGenerators.size(), 4u);
}

TEST(KleinGordon, GeneratorsCommuteWithBoxOracle) {
  for (std::size_t d = 1; d <= 3; ++d) {
    const std::size_t n = d + 1;
    ModelSpec m = model_klein_gordon(d);
    EXPECT_EQ(m.H, box_by_hand(n));
    for (const auto &g : poincare_by_hand(n))
      EXPECT_TRUE(oracle::commute(box_by_hand(n), g));
    for (const auto &g : m.knownGenerators.ops)
      EXPECT_TRUE(oracle::commute(box_by_hand(n), g));
    // same span as the hand-built list
    OperatorBasis hand;
    hand.vars = m.vars;
    hand.ops = poincare_by_hand(n);
    for (const auto &g : m.knownGenerators.ops)
      EXPECT_TRUE(span_membership(hand, g).has_value());
  }
}

TEST(KleinGordon, SpatialRotationCommutes) {
  ModelSpec m = model_klein_gordon(3);
  DiffOperator rot = parse_operator("x*d[y] - y*d[x]", m.vars);
  EXPECT_TRUE(commutator(m.H, rot).is_zero());
}

TEST(KleinGordon, OneDimensionalSolveIsFour) {
  ModelSpec m = model_klein_gordon(1);
  EXPECT_EQ(solve_centralizer(m.H, default_ansatz(m.dim(), 1, m.laurentIndex)).operators.size(), 4u);
}

TEST(KleinGordon, SignatureMetadata) { EXPECT_EQ(model_klein_gordon(3).signature, "(+,-,-,-)"); }

TEST(KleinGordon, RejectsZeroDimension) { EXPECT_THROW(model_klein_gordon(0), Error); }

TEST(Kg4th, KnownGeneratorsCommute) {
  ModelSpec m = model_kg4th(3, GaussianRational::rational(1, 2));
  for (const auto &g : m.knownGenerators.ops)
    EXPECT_TRUE(commutator(m.H, g).is_zero());
  EXPECT_THROW(model_kg4th(3, 0), Error);
}

TEST(DeformedGenerator, Antisymmetric) {
  AlphaMatrix A;
  A.a = {{0, 2, GaussianRational(0, 1)}, {mpq_class(1, 3), 0, 5}, {-1, 4, 0}};
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n)
      EXPECT_TRUE((build_deformed_generator(A, m, n) + build_deformed_generator(A, n, m)).is_zero());
}

TEST(DeformedGenerator, RejectsNonzeroDiagonal) {
  AlphaMatrix A = AlphaMatrix::ones(2);
  A.a[0][0] = 1;
  EXPECT_THROW(build_deformed_generator(A, 0, 1), Error);
}

TEST(DeformedBrackets, TranslationAndMIdentitiesHold) {
  for (auto A : {AlphaMatrix::ones(4), AlphaMatrix::ones(2)}) {
    DeformedBracketReport r = check_deformed_brackets(A);
    EXPECT_TRUE(r.group("translations commute").holds());
    EXPECT_TRUE(r.group("M annihilation").holds());
    EXPECT_TRUE(r.group("M antisymmetry").holds());
  }
}

TEST(DeformedBrackets, DirectMAnnihilationAndAntisymmetry) {
  AlphaMatrix A;
  A.a = {{0, 2, 3}, {mpq_class(1, 2), 0, -1}, {GaussianRational(0, 1), 7, 0}};
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      EXPECT_TRUE(auxiliary_m(A, a, b, b).is_zero());
      for (std::size_t c = 0; c < 3; ++c)
        EXPECT_TRUE((auxiliary_m(A, a, b, c) + auxiliary_m(A, a, c, b)).is_zero());
    }
}

TEST(DeformedBrackets, ProbesAreNotClaims) {
  DeformedBracketReport r = check_deformed_brackets(AlphaMatrix::ones(4));
  EXPECT_FALSE(r.group("box commutation").claim);
  EXPECT_FALSE(r.group("deviation from Lorentz generators").claim);
  EXPECT_THROW(r.group("no such group"), Error);
}

TEST(DeformedBrackets, ReportsAreInternallyConsistent) {
  DeformedBracketReport r = check_deformed_brackets(AlphaMatrix::ones(3));
  for (const auto &g : r.groups)
    for (const auto &f : g.failures)
      EXPECT_EQ(f.residual, f.lhs - f.rhs);
}

TEST(Dilation, TowerExactForOneAndTwo) {
  auto steps = verify_dilation_tower(3);
  ASSERT_EQ(steps.size(), 3u);
  DiffOperator box = box_by_hand(4);
  DiffOperator D = dilation_operator(4);
  EXPECT_TRUE(steps[0].scaling.exact);
  EXPECT_TRUE(steps[0].comparison.exact);
  EXPECT_TRUE(steps[1].scaling.exact);
  EXPECT_TRUE(steps[1].comparison.exact);
  EXPECT_FALSE(steps[2].comparison.exact);
  // oracle: [box, D] = 2 box on probes; [box^3, D] - 8 box^3 = -2 box^3
  EXPECT_TRUE(oracle::same_action(oracle::bracket_action(box, D), oracle::action(GaussianRational(2) * box), 4, 3));
  DiffOperator box3 = compose(compose(box, box), box);
  EXPECT_EQ(steps[2].comparison.residual, GaussianRational(-2) * box3);
  for (const auto &s : steps) {
    EXPECT_EQ(s.scaling.residual, s.scaling.lhs - s.scaling.rhs);
    EXPECT_EQ(s.comparison.residual, s.comparison.lhs - s.comparison.rhs);
  }
}

TEST(Dilation, RejectsEmptyTower) { EXPECT_THROW(verify_dilation_tower(0), Error); }

TEST(Harmonic, TranslationBracketMatchesOracle) {
  GaussianRational c1 = 2, K = 3;
  HarmonicReport r = verify_harmonic_perturbation(c1, K, 5);
  std::vector<std::string> tx = {"t", "x"};
  // engine value c1 e^{c1 x} d_x + (K x + K / c1) e^{c1 x}
  DiffOperator want = parse_operator("2*exp(2*x)*d[x] + 3*x*exp(2*x) + 3/2*exp(2*x)", tx);
  EXPECT_EQ(r.translation.lhs, want);
  DiffOperator dx = parse_operator("d[x]", tx);
  EXPECT_TRUE(oracle::same_action(oracle::bracket_action(dx, r.Deps), oracle::action(want), 2, 2));
  // the stated right-hand side, reported and not asserted
  EXPECT_EQ(r.translation.rhs, GaussianRational(3) * r.Deps - parse_operator("exp(2*x)*d[x]", tx));
  EXPECT_EQ(r.translation.residual, r.translation.lhs - r.translation.rhs);
  EXPECT_EQ(r.rotation.residual, r.rotation.lhs - r.rotation.rhs);
}

TEST(Harmonic, PotentialBracketDecomposes) {
  HarmonicReport r = verify_harmonic_perturbation(GaussianRational(1), GaussianRational(1), GaussianRational(1));
  ASSERT_TRUE(r.decomposition.has_value());
  DiffOperator rebuilt(2);
  for (std::size_t k = 0; k < r.dictionary.size(); ++k)
    rebuilt += (*r.decomposition)[k] * r.dictionary[k];
  EXPECT_EQ(rebuilt, r.potentialBracket);
  EXPECT_TRUE(r.decompositionResidual.is_zero());
}

TEST(Harmonic, RejectsZeroC1) { EXPECT_THROW(verify_harmonic_perturbation(0, 1, 1), Error); }

TEST(Clifford, DiracShadow) {
  AbstractAlgebra alg = dirac_shadow_algebra();
  std::vector<GaussianRational> eta = {1, -1, -1, -1};
  EXPECT_TRUE(clifford_condition_check(alg, {0, 1, 2, 3}, eta, 8));
  EXPECT_FALSE(clifford_condition_check(alg, {0, 1, 2, 3}, eta, 2));
}

TEST(Clifford, CommutativeOffUnitFails) {
  AbstractAlgebra alg{StructureConstants(2), 1};
  for (std::size_t k = 0; k < 2; ++k) {
    alg.mult(1, k, k) = 1;
    alg.mult(k, 1, k) = 1;
  }
  alg.mult(0, 0, 0) = 1;
  EXPECT_FALSE(clifford_condition_check(alg, {0}, {1}, 2));
}

TEST(Entries, PrintedTablesParse) {
  std::vector<std::string> xt = {"x", "t"};
  EXPECT_EQ(entries_basis(printed_order2_entries(), xt).size(), 10u);
  EXPECT_EQ(entries_basis(printed_order3_entries(), xt).size(), 20u);
  EXPECT_EQ(entries_basis(printed_order2_entries(), xt).unitIndex, 5u);
}
