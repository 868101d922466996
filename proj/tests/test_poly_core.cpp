#include <gtest/gtest.h>

#include "optdeg/parse.hpp"
#include "optdeg/polynomial.hpp"
#include "optdeg/sampler.hpp"
#include "test_util.hpp"

using namespace optdeg;
using namespace optdeg::testing;

TEST(PrimeField, RejectsCompositeAndSmallModuli) {
  EXPECT_THROW(PrimeField(1000001), DomainError);  // 101 * 9901
  EXPECT_THROW(PrimeField(65537), DomainError);    // prime but below 2^20
  EXPECT_NO_THROW(PrimeField(1000000007));
  PrimeField f(2147483647);
  EXPECT_EQ(f.mul(f.inv(12345), 12345), 1u);
}

TEST(PrimeField, RationalReduction) {
  PrimeField f(1000000007);
  auto half = f.from_rational(Rational(1, 2));
  EXPECT_EQ(f.mul(half, 2), 1u);
  EXPECT_EQ(f.signed_value(f.from_int(-5)), -5);
}

TEST(PolyRing, ValidatesVariableNames) {
  EXPECT_THROW(qq_ring("x,x"), ParseError);
  EXPECT_THROW(qq_ring("1x"), ParseError);
  EXPECT_THROW(qq_ring("x,"), ParseError);
  EXPECT_NO_THROW(qq_ring("x_1,Y2,z"));
}

TEST(ParsePoly, CircleHasThreeTermsDegreeTwo) {
  auto R = qq_ring("x,y");
  auto f = P("x^2+y^2-1", R);
  EXPECT_EQ(f.size(), 3u);
  EXPECT_EQ(f.total_degree(), 2);
  EXPECT_EQ(f.to_string(), "x^2 + y^2 - 1");
}

TEST(ParsePoly, CardioidExpands) {
  auto R = qq_ring("x,y");
  auto f = P("(x^2+y^2+x)^2 - x^2 - y^2", R);
  EXPECT_EQ(f.total_degree(), 4);
  // x^4 + 2x^2y^2 + y^4 + 2x^3 + 2xy^2 - y^2
  EXPECT_EQ(f, P("x^4 + 2*x^2*y^2 + y^4 + 2*x^3 + 2*x*y^2 - y^2", R));
}

TEST(ParsePoly, ZeroPolynomial) {
  auto R = qq_ring("x,y");
  auto f = P("0", R);
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(f.to_string(), "0");
  EXPECT_TRUE(P("x - x", R).is_zero());
}

TEST(ParsePoly, RationalLiteralsAndUnaryMinus) {
  auto R = qq_ring("x,y");
  EXPECT_EQ(P("-x^2", R).to_string(), "-x^2");
  EXPECT_EQ(P("3/6*x - 1/2", R).to_string(), "1/2*x - 1/2");
  EXPECT_EQ(P("x*(y+1)", R), P("x*y + x", R));
}

TEST(ParsePoly, Errors) {
  auto R = qq_ring("x,y");
  try {
    P("x + * y", R);
    FAIL() << "expected syntax error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    P("x + zz", R);
    FAIL() << "expected unknown variable";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("unknown variable 'zz'"), std::string::npos);
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(P("x^300", R), ParseError);
  EXPECT_THROW(P("(x^100)^3", R), ParseError);
  EXPECT_THROW(P("x/y", R), ParseError);
  EXPECT_THROW(P("(x+1", R), ParseError);
  EXPECT_THROW(P("", R), ParseError);
}

TEST(ParsePoly, PrintParseRoundTripProperty) {
  SplitMix64 rng(11);
  auto R = qq_ring("x,y,z");
  auto F = fp_ring("x,y,z");
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_poly(rng, R, 5, 6);
    EXPECT_EQ(P(f.to_string(), R), f);
    auto g = random_poly(rng, F, 5, 6, 1'000'000);
    EXPECT_EQ(P(g.to_string(), F), g);
  }
}

TEST(Jacobian, Examples) {
  auto R = qq_ring("x,y");
  auto J = jacobian<RationalField>({P("x^2+y^2-1", R)});
  ASSERT_EQ(J.size(), 1u);
  EXPECT_EQ(J[0][0], P("2*x", R));
  EXPECT_EQ(J[0][1], P("2*y", R));
  auto K = jacobian<RationalField>({P("x*y", R)});
  EXPECT_EQ(K[0][0], P("y", R));
  EXPECT_EQ(K[0][1], P("x", R));
}

TEST(Jacobian, WhitneyUmbrella) {
  auto R = qq_ring("x,y,z");
  auto J = jacobian<RationalField>({P("x^2 - z*y^2", R), P("x + y + z - 1", R)});
  ASSERT_EQ(J.size(), 2u);
  ASSERT_EQ(J[0].size(), 3u);
  EXPECT_EQ(J[0][0], P("2*x", R));
  EXPECT_EQ(J[0][1], P("-2*z*y", R));
  EXPECT_EQ(J[0][2], P("-y^2", R));
}

TEST(Jacobian, MixedRingsRejected) {
  auto R = qq_ring("x,y");
  auto S = qq_ring("x,z");
  EXPECT_THROW(jacobian<RationalField>({P("x", R), P("z", S)}), DomainError);
}

TEST(Specialize, Examples) {
  auto R = qq_ring("x,y");
  auto f = specialize(P("x^2+y^2-1", R), std::map<std::string, Rational>{{"y", Rational(0)}});
  EXPECT_EQ(f, P("x^2-1", R));
  auto g = specialize(P("x", R), std::map<std::string, Rational>{{"x", Rational(3, 2)}});
  EXPECT_EQ(g, P("3/2", R));
  EXPECT_THROW(specialize(P("x", R), std::map<std::string, Rational>{{"w", Rational(1)}}), DomainError);
}

// Oracle: total degree of the image, computed independently by expanding each monomial's
// image and taking the maximum degree that survives.
TEST(Specialize, InvertibleLinearChangePreservesQuarticDegree) {
  auto R = qq_ring("x0,x1,x2,x3");
  auto f = P("x0^3*x1 - x2*x3^3", R);
  SplitMix64 rng(5);
  std::map<std::string, Polynomial<RationalField>> change;
  for (std::size_t i = 0; i < 4; ++i) {
    auto img = Polynomial<RationalField>::zero(R);
    for (std::size_t j = 0; j < 4; ++j)
      img += Polynomial<RationalField>::variable(R, j).scaled(Rational(static_cast<long>(rng.uniform(-50, 50))));
    change.emplace(R->name(i), img);
  }
  auto g = specialize(f, change);
  EXPECT_EQ(g.total_degree(), 4);
  EXPECT_TRUE(g.is_homogeneous());
  EXPECT_EQ(g.ring()->size(), 4u);
}

TEST(SampleGeneric, DeterministicAndSeedSensitive) {
  auto a = sample_generic(1, 3, 1'000'000);
  auto b = sample_generic(1, 3, 1'000'000);
  auto c = sample_generic(2, 3, 1'000'000);
  EXPECT_EQ(a.values, b.values);
  EXPECT_NE(a.values, c.values);
  for (auto v : a.values) {
    EXPECT_LE(v, 1'000'000);
    EXPECT_GE(v, -1'000'000);
  }
  EXPECT_THROW(sample_generic(1, 3, 10), DomainError);
}

TEST(RingAxioms, RandomTriples) {
  SplitMix64 rng(3);
  auto R = qq_ring("x,y,z");
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_poly(rng, R, 4, 5);
    auto g = random_poly(rng, R, 4, 5);
    auto h = random_poly(rng, R, 4, 5);
    EXPECT_EQ((f + g) + h, f + (g + h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_TRUE((f - f).is_zero());
  }
}

TEST(Derivative, LeibnizRule) {
  SplitMix64 rng(4);
  auto R = qq_ring("x,y,z");
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_poly(rng, R, 4, 5);
    auto g = random_poly(rng, R, 4, 5);
    for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ((f * g).derivative(v), f * g.derivative(v) + g * f.derivative(v));
  }
}

TEST(ModularReduction, CommutesWithRingOperations) {
  SplitMix64 rng(6);
  auto R = qq_ring("x,y");
  auto F = fp_ring("x,y");
  for (int trial = 0; trial < 50; ++trial) {
    auto f = random_poly(rng, R, 4, 5).scaled(Rational(1, static_cast<long>(rng.uniform(1, 97))));
    auto g = random_poly(rng, R, 4, 5);
    EXPECT_EQ((f + g).map_coefficients(F), f.map_coefficients(F) + g.map_coefficients(F));
    EXPECT_EQ((f * g).map_coefficients(F), f.map_coefficients(F) * g.map_coefficients(F));
  }
}
