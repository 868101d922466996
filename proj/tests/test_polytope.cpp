#include <gtest/gtest.h>

#include "optdeg/polytope.hpp"
#include "corpus.hpp"
#include "test_util.hpp"

using namespace optdeg;
using namespace optdeg::testing;

namespace {

LatticePolytope poly(std::vector<LatticePoint> pts) {
  const std::size_t m = pts.front().size();
  return LatticePolytope(m, std::move(pts));
}

LatticePolytope simplex(std::size_t m, long long d = 1) {
  std::vector<LatticePoint> pts{LatticePoint(m, 0)};
  for (std::size_t i = 0; i < m; ++i) {
    LatticePoint e(m, 0);
    e[i] = d;
    pts.push_back(e);
  }
  return LatticePolytope(m, pts);
}

LatticePolytope random_polytope(SplitMix64& rng, std::size_t m, int npts, int bound = 3) {
  std::vector<LatticePoint> pts;
  for (int k = 0; k < npts; ++k) {
    LatticePoint p(m);
    for (auto& x : p) x = rng.uniform(0, bound);
    pts.push_back(p);
  }
  return LatticePolytope(m, pts);
}

// Torus solutions of a square system: Rabinowitsch count with w * x_1 ... x_n - 1.
std::size_t torus_count(const std::vector<Polynomial<RationalField>>& sys, std::uint32_t prime) {
  const auto& R = sys.front().ring();
  auto vars = R->variables();
  vars.push_back("w");
  auto ext = make_ring<PrimeField>(vars, PrimeField(prime));
  std::vector<Polynomial<PrimeField>> gens;
  for (const auto& f : sys) gens.push_back(f.map_coefficients(ext));
  auto mono = Polynomial<PrimeField>::variable(ext, vars.size() - 1);
  for (std::size_t i = 0; i + 1 < vars.size(); ++i) mono = mono * Polynomial<PrimeField>::variable(ext, i);
  gens.push_back(mono - Polynomial<PrimeField>::constant(ext, ext->field().one()));
  auto q = quotient_dimension(gens);
  EXPECT_TRUE(q.has_value());
  return q.value_or(0);
}

}  // namespace

TEST(Newton, Examples) {
  auto R = qq_ring("x,y");
  EXPECT_EQ(newton_polytope(P("x^2+y^2-1", R)).vertices(),
            (std::vector<LatticePoint>{{0, 0}, {0, 2}, {2, 0}}));
  EXPECT_EQ(newton_polytope(P("x^3*y", R)).vertices(), (std::vector<LatticePoint>{{3, 1}}));
  EXPECT_EQ(newton_polytope(P("x+x^2*y", R)).vertices(), (std::vector<LatticePoint>{{1, 0}, {2, 1}}));
  // interior and edge points are dropped
  EXPECT_EQ(newton_polytope(P("1+x+x^2+y^2+x*y+x^2*y^2", R)).vertices(),
            (std::vector<LatticePoint>{{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
  EXPECT_THROW(newton_polytope(Polynomial<RationalField>::zero(R)), DomainError);
}

TEST(Hull, ExtremePointsInThreeDimensions) {
  // cube corners plus face centres, edge midpoints and the centre
  std::vector<LatticePoint> pts;
  for (long long x = 0; x <= 2; ++x)
    for (long long y = 0; y <= 2; ++y)
      for (long long z = 0; z <= 2; ++z) pts.push_back({x, y, z});
  auto cube = poly(pts);
  EXPECT_EQ(cube.vertices().size(), 8u);
  EXPECT_EQ(cube.volume(), 8);
  // a flat polytope in R^3 has zero volume but the correct extreme points
  auto flat = poly({{0, 0, 1}, {2, 0, 1}, {0, 2, 1}, {1, 1, 1}, {1, 0, 1}});
  EXPECT_EQ(flat.dimension(), 2);
  EXPECT_EQ(flat.vertices().size(), 3u);
  EXPECT_EQ(flat.volume(), 0);
}

TEST(Minkowski, SquarePlusSimplexIsPentagon) {
  auto square = poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto sum = minkowski_sum(square, simplex(2));
  EXPECT_EQ(sum.vertices(), (std::vector<LatticePoint>{{0, 0}, {0, 2}, {1, 2}, {2, 0}, {2, 1}}));
  EXPECT_EQ(sum.volume(), Rational(7, 2));
}

TEST(Minkowski, PointTranslatesAndSelfSumDilates) {
  SplitMix64 rng(3);
  for (int t = 0; t < 10; ++t) {
    auto K = random_polytope(rng, 3, 7);
    auto moved = minkowski_sum(K, poly({{1, -2, 5}}));
    ASSERT_EQ(moved.vertices().size(), K.vertices().size());
    for (std::size_t i = 0; i < K.vertices().size(); ++i)
      EXPECT_EQ(moved.vertices()[i], (LatticePoint{K.vertices()[i][0] + 1, K.vertices()[i][1] - 2, K.vertices()[i][2] + 5}));
    EXPECT_EQ(minkowski_sum(K, K), K.dilate(2));
  }
  EXPECT_THROW(minkowski_sum(simplex(2), simplex(3)), DomainError);
}

TEST(MixedVolume, Examples) {
  EXPECT_EQ(mixed_volume({poly({{0}, {5}})}), 5);
  EXPECT_EQ(mixed_volume({poly({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), simplex(2)}), 2);
  EXPECT_EQ(mixed_volume({simplex(3), simplex(3), simplex(3)}), 1);
  EXPECT_EQ(mixed_volume({simplex(3, 2), simplex(3, 3), simplex(3, 4)}), 24);
  EXPECT_THROW(mixed_volume({simplex(2)}), DomainError);
}

TEST(MixedVolume, DilatedSimplicesMatchGroebnerCount) {
  // dense random system of degrees (2, 3) and (2, 2, 2): Bezout number of affine solutions
  SplitMix64 rng(11);
  for (auto degs : {std::vector<int>{2, 3}, std::vector<int>{2, 2, 2}, std::vector<int>{1, 3, 2}}) {
    const std::size_t m = degs.size();
    auto R = qq_ring(m == 2 ? "x,y" : "x,y,z");
    std::vector<Polynomial<RationalField>> sys;
    std::vector<LatticePolytope> K;
    for (int d : degs) {
      std::vector<Term<RationalField>> terms;
      for (int e = 0; e <= d; ++e) {
        // every monomial of degree <= d
        for (int a = 0; a <= e; ++a)
          for (int b = 0; b <= e - a; ++b) {
            if (m == 2 && a + b != e) continue;
            Monomial mo;
            mo.exp[0] = static_cast<std::uint8_t>(a);
            mo.exp[1] = static_cast<std::uint8_t>(b);
            if (m == 3) mo.exp[2] = static_cast<std::uint8_t>(e - a - b);
            mo.refresh();
            terms.push_back({mo, Rational(static_cast<long>(rng.nonzero(1000)))});
          }
      }
      sys.push_back(Polynomial<RationalField>::from_terms(R, terms));
      K.push_back(simplex(m, d));
    }
    auto fp = with_field(R, PrimeField(1000000007));
    auto q = quotient_dimension(detail::to_field(sys, fp));
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(mixed_volume(K), static_cast<long>(*q));
  }
}

TEST(MixedVolume, SymmetricMultilinearAndMonotone) {
  SplitMix64 rng(41);
  for (int t = 0; t < 8; ++t) {
    const std::size_t m = 2 + t % 2;
    std::vector<LatticePolytope> K;
    for (std::size_t i = 0; i < m; ++i) K.push_back(random_polytope(rng, m, 5, 2));
    const BigInt mv = mixed_volume(K);
    auto rev = K;
    std::reverse(rev.begin(), rev.end());
    EXPECT_EQ(mixed_volume(rev), mv);
    auto scaled = K;
    scaled[0] = K[0].dilate(3);
    EXPECT_EQ(mixed_volume(scaled), 3 * mv);
    // MV(K, ..., K) = m! vol(K)
    std::vector<LatticePolytope> diag(m, K[1]);
    EXPECT_EQ(mixed_volume(diag), K[1].normalized_volume());
    // enlarging a body never decreases MV
    auto bigger = K;
    std::vector<LatticePoint> pts = K[0].vertices();
    pts.push_back(LatticePoint(m, 4));
    bigger[0] = LatticePolytope(m, pts);
    EXPECT_GE(mixed_volume(bigger), mv);
  }
}

TEST(MixedVolume, BernsteinOnRandomSparseSystems) {
  SplitMix64 rng(2718);
  int nonzero = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    auto R = qq_ring(n == 1 ? "x" : n == 2 ? "x,y" : "x,y,z");
    std::vector<std::vector<LatticePoint>> supports;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<LatticePoint> A;
      const int size = static_cast<int>(rng.uniform(2, 5));
      for (int k = 0; k < size; ++k) {
        LatticePoint a(n);
        for (auto& x : a) x = rng.uniform(0, 3);
        A.push_back(a);
      }
      supports.push_back(A);
    }
    auto S = SparseSupport::generic(supports, rng.next());
    auto sys = S.instantiate(R);
    std::vector<LatticePolytope> K;
    for (const auto& f : sys) K.push_back(newton_polytope(f));
    const BigInt mv = mixed_volume(K);
    nonzero += mv > 0;
    EXPECT_EQ(mv, static_cast<long>(torus_count(sys, 2147483629u))) << "trial " << trial;
  }
  EXPECT_GE(nonzero, 10);
}

TEST(SparseMl, GenericConic) {
  auto X = V("x,y", {"3*x^2-5*x*y+7*y^2+11*x-13*y+17"});
  auto rep = sparse_ml_degree(SparseSupport::from_polynomials(X.generators()), 2);
  EXPECT_EQ(rep.value, 4);
  ASSERT_EQ(rep.parts.size(), 2u);
  EXPECT_EQ(rep.parts[1].second, 4);
  EXPECT_EQ(rep.parts[1].second, ml_degree(X).value);
}

TEST(SparseMl, LinearConstraint) {
  auto rep = sparse_ml_degree(SparseSupport::generic({{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), 3);
  EXPECT_EQ(rep.value, 1);
  auto X = V("x,y,z", {"2*x-3*y+5*z-7"});
  EXPECT_EQ(ml_degree(X).value, 1);
}

TEST(SparseMl, RandomSupportsAgreeWithGroebner) {
  SplitMix64 rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
    auto R = qq_ring(n == 2 ? "x,y" : "x,y,z");
    std::vector<LatticePoint> A{LatticePoint(n, 0)};
    const int size = static_cast<int>(rng.uniform(2, 4));
    for (int k = 0; k < size; ++k) {
      LatticePoint a(n);
      for (auto& x : a) x = rng.uniform(0, 2);
      A.push_back(a);
    }
    auto sys = SparseSupport::generic({A}, rng.next()).instantiate(R);
    auto rep = sparse_ml_degree(SparseSupport::from_polynomials(sys), n);
    ASSERT_EQ(rep.parts.size(), 2u);
    EXPECT_EQ(rep.parts[0].second, rep.parts[1].second) << sys[0];
  }
}
