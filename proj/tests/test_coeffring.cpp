#include <gtest/gtest.h>

#include <complex>
#include <cmath>

#include "symctr/coefficient.hpp"
#include "symctr/parser.hpp"
#include "oracle.hpp"

using namespace symctr;

namespace {

const std::vector<std::string> XT = {"x", "t"};

Coefficient C(const std::string &text) {
  DiffOperator op = parse_operator(text, XT);
  return op.coefficient(DerivIndex::identity(2));
}

} // namespace

TEST(GaussianRational, LowestTermsPositiveDenominator) {
  GaussianRational q(mpq_class(6, -4), mpq_class(10, 20));
  q = q + GaussianRational(0);
  EXPECT_EQ(q.re().get_str(), "-3/2");
  EXPECT_EQ(q.im().get_str(), "1/2");
  EXPECT_EQ(q.re().get_den(), 2);
}

TEST(GaussianRational, ProductMatchesOracleArithmetic) {
  GaussianRational a(mpq_class(1, 3), mpq_class(-2, 5)), b(mpq_class(7, 2), mpq_class(1, 4));
  oracle::Cplx p = oracle::from(a) * oracle::from(b);
  EXPECT_EQ(a * b, GaussianRational(p.re, p.im));
  EXPECT_EQ(GaussianRational(1, 1) * GaussianRational(1, -1), GaussianRational(2));
}

TEST(GaussianRational, ISquaredIsMinusOne) { EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1)); }

TEST(GaussianRational, ParseScalarForms) {
  EXPECT_EQ(parse_scalar("3/2"), GaussianRational(mpq_class(3, 2)));
  EXPECT_EQ(parse_scalar("-i"), GaussianRational(0, -1));
  EXPECT_EQ(parse_scalar("1/2+3*i"), GaussianRational(mpq_class(1, 2), 3));
  EXPECT_EQ(parse_scalar("2-i"), GaussianRational(2, -1));
  EXPECT_THROW(parse_scalar("1/0"), Error);
  EXPECT_THROW(parse_scalar("abc"), Error);
}

TEST(GaussianRational, InverseOfZeroThrows) { EXPECT_THROW(GaussianRational(0).inverse(), Error); }

TEST(CoeffAdd, AdditiveInverse) { EXPECT_TRUE((C("x") + C("-x")).is_zero()); }

TEST(CoeffAdd, LaurentTermsCombine) {
  // i/(2t) + i/(2t): halves add to one
  Coefficient a = C("(i/2)*t^-1");
  EXPECT_EQ(a + a, C("i*t^-1"));
}

TEST(CoeffAdd, DisjointSupportKeepsBothTerms) {
  Coefficient s = C("x*exp(2*x)") + C("t");
  EXPECT_EQ(s.size(), 2u);
}

TEST(CoeffMul, LaurentMonomial) { EXPECT_EQ(C("x") * C("t^-1"), C("x*t^-1")); }

TEST(CoeffMul, ExponentsAdd) { EXPECT_EQ(C("exp(3*x)") * C("exp(3*x)"), C("exp(6*x)")); }

TEST(CoeffMul, GaussianProduct) { EXPECT_EQ(C("1+i") * C("1-i"), C("2")); }

TEST(CoeffDiff, PowerRuleNegative) { EXPECT_EQ(C("t^-1").diff(1), C("-t^-2")); }

TEST(CoeffDiff, ProductWithExponential) {
  EXPECT_EQ(C("x*exp(5*x)").diff(0), C("exp(5*x) + 5*x*exp(5*x)"));
}

TEST(CoeffDiff, HalfSquare) { EXPECT_EQ(C("x^2/2").diff(0), C("x")); }

TEST(CoeffDiff, ConstantVanishes) { EXPECT_TRUE(C("7").diff(0).is_zero()); }

TEST(CoeffConjugate, ImaginaryScalar) { EXPECT_EQ(C("i*x").conjugate(), C("-i*x")); }

TEST(CoeffConjugate, RealFixedPoint) { EXPECT_EQ(C("3/2").conjugate(), C("3/2")); }

TEST(CoeffConjugate, ExponentialArgumentConjugated) {
  Coefficient c = C("exp(i*x)").conjugate();
  EXPECT_EQ(c, C("exp(-i*x)"));
  // numeric check at x = 1: conj(e^{i}) = e^{-i}
  std::complex<double> v = std::conj(std::exp(std::complex<double>(0, 1)));
  const auto &t = c.terms().front();
  std::complex<double> w = std::exp(std::complex<double>(t.expArg[0].re().get_d(), t.expArg[0].im().get_d()));
  EXPECT_NEAR(std::abs(v - w), 0.0, 1e-12);
}

TEST(Coefficient, CanonicalFormMergesEqualKeysAndDropsZeros) {
  CoeffTerm a{GaussianRational(1), {1, 0}, {0, 0}};
  CoeffTerm b{GaussianRational(-1), {1, 0}, {0, 0}};
  CoeffTerm c{GaussianRational(2), {0, 1}, {0, 0}};
  Coefficient k(2, {a, b, c});
  EXPECT_EQ(k.size(), 1u);
  EXPECT_EQ(k, C("2*t"));
}

TEST(Coefficient, DimensionMismatchThrows) {
  EXPECT_THROW(Coefficient::variable(2, 0) + Coefficient::variable(3, 0), DimensionMismatch);
}

TEST(Coefficient, InverseOfMonomial) {
  EXPECT_EQ(C("4*x*t^2").inverse(), C("(1/4)*x^-1*t^-2"));
  EXPECT_THROW(C("x + t").inverse(), Error);
}
