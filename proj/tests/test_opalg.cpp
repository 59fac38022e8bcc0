#include <gtest/gtest.h>

#include "symctr/liealg.hpp"
#include "symctr/models.hpp"
#include "symctr/parser.hpp"
#include "symctr/projection.hpp"
#include "symctr/words.hpp"

#include "oracle.hpp"

using namespace symctr;

namespace {

const std::vector<std::string> XT = {"x", "t"};

DiffOperator P(const std::string &text) { return parse_operator(text, XT); }

/// First-order generators with the identity, names D1..D4.
OperatorBasis schrodinger_basis() { return model_schrodinger1d().knownGenerators; }

} // namespace

TEST(DiffOperator, OrderOfZeroIsMinusOne) {
  EXPECT_EQ(DiffOperator(2).order(), -1);
  EXPECT_EQ(P("1").order(), 0);
  EXPECT_EQ(P("d[x,x] - i*d[t]").order(), 2);
}

TEST(DiffOperator, NoZeroCoefficientStored) {
  DiffOperator a = P("x*d[x] + d[t]");
  a += P("-x*d[x]");
  EXPECT_EQ(a.terms().size(), 1u);
}

TEST(DiffOperator, CanonicalIndexOrder) {
  DiffOperator a = P("d[x] + d[t,t] + d[x,t] + d[x,x] + 1");
  std::vector<std::vector<int>> seen;
  for (const auto &[alpha, c] : a.terms())
    seen.push_back(alpha.alpha);
  std::vector<std::vector<int>> want = {{2, 0}, {1, 1}, {0, 2}, {1, 0}, {0, 0}};
  EXPECT_EQ(seen, want);
}

TEST(Compose, LeibnizBaseCase) {
  DiffOperator r = compose(P("d[x]"), P("x"));
  EXPECT_EQ(r, P("x*d[x] + 1"));
  EXPECT_TRUE(oracle::same_action(oracle::action(r),
                                  [](const oracle::Func &f) {
                                    return oracle::apply(P("d[x]"), oracle::apply(P("x"), f));
                                  },
                                  2, 2));
}

TEST(Compose, MomentumSquared) { EXPECT_EQ(compose(P("-i*d[x]"), P("-i*d[x]")), P("-d[x,x]")); }

TEST(Compose, D1D2MatchesOracle) {
  DiffOperator D1 = P("-2*i*t*d[x] + x"), D2 = P("-i*d[x]");
  DiffOperator r = compose(D1, D2);
  EXPECT_EQ(r, P("-2*t*d[x,x] - i*x*d[x]"));
  oracle::Action ref = [&](const oracle::Func &f) { return oracle::apply(D1, oracle::apply(D2, f)); };
  EXPECT_TRUE(oracle::same_action(oracle::action(r), ref, 2, 2));
}

TEST(Compose, DimensionMismatchThrows) {
  EXPECT_THROW(compose(P("d[x]"), DiffOperator::partial(3, 0)), DimensionMismatch);
}

TEST(Commutator, HamiltonianWithD1IsZero) {
  DiffOperator H = P("d[x,x] - i*d[t]"), D1 = P("-2*i*t*d[x] + x");
  EXPECT_TRUE(commutator(H, D1).is_zero());
}

TEST(Commutator, D1D2IsIUnit) {
  DiffOperator D1 = P("-2*i*t*d[x] + x"), D2 = P("-i*d[x]");
  DiffOperator r = commutator(D1, D2);
  EXPECT_EQ(r, DiffOperator::scalar(2, GaussianRational::i()));
  EXPECT_EQ(r, compose(D1, D2) - compose(D2, D1));
  EXPECT_TRUE(oracle::same_action(oracle::action(r), oracle::bracket_action(D1, D2), 2, 2));
}

TEST(Commutator, SelfBracketVanishes) {
  DiffOperator a = P("x^2*exp(x)*d[x,t] + t^-1*d[x] + i");
  EXPECT_TRUE(commutator(a, a).is_zero());
}

TEST(Anticommutator, DxWithX) {
  DiffOperator r = anticommutator(P("d[x]"), P("x"));
  EXPECT_EQ(r, P("2*x*d[x] + 1"));
  oracle::Action ref = [](const oracle::Func &f) {
    return oracle::sum(oracle::apply(P("d[x]"), oracle::apply(P("x"), f)),
                       oracle::apply(P("x"), oracle::apply(P("d[x]"), f)));
  };
  EXPECT_TRUE(oracle::same_action(oracle::action(r), ref, 2, 2));
}

TEST(Anticommutator, SelfIsTwiceSquare) {
  DiffOperator a = P("t*d[x] + x");
  EXPECT_EQ(anticommutator(a, a), GaussianRational(2) * power(a, 2));
}

TEST(Anticommutator, D2D3MatchesTableEntry) {
  EXPECT_EQ(anticommutator(P("-i*d[x]"), P("i*d[t]")), P("2*d[x,t]"));
}

TEST(Conjugate, MomentumFlipsSign) { EXPECT_EQ(conjugate(P("-i*d[x]")), P("i*d[x]")); }

TEST(Conjugate, RealCoefficientsFixed) { EXPECT_EQ(conjugate(P("x*d[t]")), P("x*d[t]")); }

TEST(Conjugate, D1) { EXPECT_EQ(conjugate(P("-2*i*t*d[x] + x")), P("2*i*t*d[x] + x")); }

TEST(HermitianProjection, RealDerivative) {
  auto rep = check_hermitian_projection(P("d[x]"));
  EXPECT_TRUE(rep.conditionHolds);
  EXPECT_EQ(rep.product, P("d[x,x]"));
}

TEST(HermitianProjection, PurelyImaginaryDerivative) {
  auto rep = check_hermitian_projection(P("i*d[x]"));
  EXPECT_TRUE(rep.conditionHolds);
  EXPECT_EQ(rep.product, P("d[x,x]"));
  EXPECT_EQ(rep.realProjection, P("d[x,x]"));
}

TEST(HermitianProjection, MixedFails) {
  auto rep = check_hermitian_projection(P("x*d[x] + i*t*d[t]"));
  EXPECT_FALSE(rep.conditionHolds);
  ASSERT_FALSE(rep.residuals.empty());
  bool found = false;
  for (const auto &r : rep.residuals)
    if (r.value == parse_operator("x*t", XT).coefficient(DerivIndex::identity(2)) ||
        r.value == parse_operator("-x*t", XT).coefficient(DerivIndex::identity(2)))
      found = true;
  EXPECT_TRUE(found);
}

TEST(HermitianProjection, RejectsSecondOrder) { EXPECT_THROW(check_hermitian_projection(P("d[x,x]")), Error); }

TEST(ParitySplit, SymmetricCoordinates) {
  OperatorBasis b = schrodinger_basis();
  DiffOperator a = P("-i*d[x] + 3");
  auto [plus, minus] = parity_split(a, b);
  EXPECT_EQ(plus, a);
  EXPECT_TRUE(minus.is_zero());
}

TEST(ParitySplit, InvolutionWithLabels) {
  OperatorBasis b = schrodinger_basis();
  b.parity = {1, -1, -1, 1};
  DiffOperator a = P("-2*i*t*d[x] + x") + P("-i*d[x]") + GaussianRational(3) * P("i*d[t]");
  EXPECT_EQ(parity(parity(a, b), b), a);
  auto [plus, minus] = parity_split(a, b);
  EXPECT_EQ(plus, P("-2*i*t*d[x] + x"));
  EXPECT_EQ(plus + minus, a);
}

TEST(ParitySplit, OutsideSpanThrows) { EXPECT_THROW(parity_split(P("d[x,x]"), schrodinger_basis()), Error); }

TEST(Power, DerivativeSquared) { EXPECT_EQ(power(P("d[x]"), 2), P("d[x,x]")); }

TEST(Power, D1SquaredMatchesOracle) {
  DiffOperator D1 = P("-2*i*t*d[x] + x");
  DiffOperator sq = power(D1, 2);
  EXPECT_EQ(sq, P("-4*t^2*d[x,x] - 4*i*t*x*d[x] + x^2 - 2*i*t"));
  oracle::Action ref = [&](const oracle::Func &f) { return oracle::apply(D1, oracle::apply(D1, f)); };
  EXPECT_TRUE(oracle::same_action(oracle::action(sq), ref, 2, 2));
}

TEST(Power, CubeOfD1CommutesWithH) {
  DiffOperator H = P("d[x,x] - i*d[t]");
  EXPECT_TRUE(commutator(H, power(P("-2*i*t*d[x] + x"), 3)).is_zero());
}

TEST(Symmetrize, SingleIndexIsMember) {
  OperatorBasis b = schrodinger_basis();
  EXPECT_EQ(symmetrize(b, {1}), b[1]);
}

TEST(Symmetrize, PairIsHalfAnticommutator) {
  OperatorBasis b = schrodinger_basis();
  EXPECT_EQ(symmetrize(b, {1, 2}), GaussianRational::rational(1, 2) * anticommutator(b[1], b[2]));
  EXPECT_EQ(symmetrize(b, {1, 2}), P("d[x,t]"));
}

TEST(Symmetrize, TripleIsCyclicAverage) {
  OperatorBasis b = schrodinger_basis();
  const DiffOperator &D1 = b[0], &D2 = b[1], &D3 = b[2];
  DiffOperator want = GaussianRational::rational(1, 3) *
                      (compose(compose(D1, D2), D3) + compose(compose(D3, D1), D2) + compose(compose(D2, D3), D1));
  EXPECT_EQ(symmetrize(b, {0, 1, 2}), want);
}

TEST(Symmetrize, RejectsEmptyAndOutOfRange) {
  OperatorBasis b = schrodinger_basis();
  EXPECT_THROW(symmetrize(b, {}), Error);
  EXPECT_THROW(symmetrize(b, {9}), Error);
}

TEST(LieReduce, D2D1) {
  OperatorBasis b = schrodinger_basis();
  StructureConstants C = structure_constants(b);
  auto out = lie_reduce(std::vector<OperatorWord>{{{1, 0}, GaussianRational(1)}}, C, b.unitIndex);
  std::vector<OperatorWord> want = {{{}, GaussianRational(0, -1)}, {{0, 1}, GaussianRational(1)}};
  EXPECT_EQ(out, want);
  // the commutator oracle: [D2, D1] = -i
  EXPECT_EQ(commutator(b[1], b[0]), DiffOperator::scalar(2, GaussianRational(0, -1)));
}

TEST(LieReduce, OrderedWordUnchanged) {
  OperatorBasis b = schrodinger_basis();
  StructureConstants C = structure_constants(b);
  std::vector<OperatorWord> w = {{{0, 1, 1, 2}, GaussianRational(3)}};
  EXPECT_EQ(lie_reduce(w, C, b.unitIndex), w);
}

TEST(LieReduce, GenericSquareHasTenWords) {
  OperatorBasis b = schrodinger_basis();
  StructureConstants C = structure_constants(b);
  EXPECT_EQ(lie_reduce(generic_power(4, 2), C, b.unitIndex).size(), 10u);
}

TEST(LieReduce, RejectsInvalidTable) {
  StructureConstants C(2);
  C(0, 1, 0) = 1; // not antisymmetric
  WordSum<GaussianRational> w{{{1, 0}, GaussianRational(1)}};
  EXPECT_THROW(lie_reduce(w, C), Error);
}
