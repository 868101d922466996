// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "optdeg/classcalc.hpp"
#include "optdeg/morsify.hpp"
#include "optdeg/polytope.hpp"
#include "corpus.hpp"
#include "test_util.hpp"

using namespace optdeg;
using namespace optdeg::testing;

namespace {

using Clock = std::chrono::steady_clock;

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }

  template <class T>
  void equal(const T& got, const T& want, const std::string& what) {
    if (got == want) return;
    std::ostringstream s;
    s << what << ": got " << show(got) << ", want " << show(want);
    failures_.push_back(s.str());
  }

  // Runs fn, records exceptions as failures and checks the wall-time budget.
  void timed(const std::string& what, double budget_seconds, const std::function<void()>& fn) {
    const auto start = Clock::now();
    try {
      fn();
    } catch (const std::exception& e) {
      failures_.push_back(what + ": threw " + e.what());
    }
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    seconds_ += s;
    if (s > budget_seconds) {
      std::ostringstream m;
      m << what << ": took " << s << " s (budget " << budget_seconds << " s)";
      failures_.push_back(m.str());
    }
  }

  bool report() const {
    std::printf("%s %2d  %-58s (%.2f s)", failures_.empty() ? "PASS" : "FAIL", id_, title_.c_str(), seconds_);
    for (const auto& f : failures_) std::printf("\n        - %s", f.c_str());
    std::printf("\n");
    std::fflush(stdout);
    return failures_.empty();
  }

 private:
  static std::string show(long long v) { return std::to_string(v); }
  static std::string show(const BigInt& v) { return v.get_str(); }
  template <class T>
  static std::string show(const std::vector<T>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + show(v[i]);
    return s + ")";
  }

  int id_;
  std::string title_;
  std::vector<std::string> failures_;
  double seconds_ = 0;
};

std::vector<BigInt> Z(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return v;
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
  if (!q) throw std::runtime_error("torus system is not zero-dimensional");
  return *q;
}

const std::vector<std::string> kDet3{"a*e*i+b*f*g+c*d*h-c*e*g-b*d*i-a*f*h"};

bool criterion1() {
  Criterion c(1, "ED worked examples");
  c.timed("line", 1, [&] { c.equal(ed_degree(V("x,y,z,w", {"x+y+z+w-4"})).value, 1LL, "linear space"); });
  c.timed("circle", 1, [&] { c.equal(ed_degree(V("x,y", {"x^2+y^2-1"})).value, 2LL, "circle"); });
  c.timed("cardioid", 1, [&] { c.equal(ed_degree(V("x,y", {"(x^2+y^2+x)^2-x^2-y^2"})).value, 3LL, "cardioid"); });
  return c.report();
}

bool criterion2() {
  Criterion c(2, "projective ED degrees");
  c.timed("nodal curve", 60,
          [&] { c.equal(projective_ed_degree(V("x0,x1,x2", {"x0^2*x2-x1^2*(x1+x2)"})).value, 7LL, "nodal curve"); });
  c.timed("Whitney umbrella", 60, [&] {
    c.equal(projective_ed_degree(V("x0,x1,x2,x3", {"x0^2*x1-x2*x3^2"})).value, 10LL, "Whitney umbrella");
  });
  c.timed("toric quartic", 60, [&] {
    c.equal(projective_ed_degree(V("x0,x1,x2,x3", {"x0^3*x1-x2*x3^3"})).value, 10LL, "toric quartic");
  });
  return c.report();
}

bool criterion3() {
  Criterion c(3, "ED defects, quadric defect = sum of nodal Milnor numbers");
  c.timed("toric quartic", 120, [&] {
    auto r = ed_defect(V("x0,x1,x2,x3", {"x0^3*x1-x2*x3^3"}));
    c.equal(r.value, 4LL, "toric quartic defect");
    c.equal(r.parts.at(0).second, 14LL, "toric quartic generic pED");
  });
  long long quadric_defect = -1;
  c.timed("quadric", 120, [&] {
    auto r = ed_defect(V("x0,x1,x2,x3", {"x0*x3-x1*x2"}));
    quadric_defect = r.value;
    c.equal(r.value, 4LL, "quadric defect");
    c.equal(r.parts.at(0).second, 6LL, "quadric generic pED");
    c.equal(r.parts.at(1).second, 2LL, "quadric unit pED");
  });
  c.timed("Whitney umbrella", 120,
          [&] { c.equal(ed_defect(V("x0,x1,x2,x3", {"x0^2*x1-x2*x3^2"})).value, 0LL, "Whitney umbrella defect"); });
  c.timed("nodal Milnor numbers", 120, [&] {
    // Segre chart (a, c) -> (ac, a, c, 1): the isotropic quadric pulls back to (a^2+1)(c^2+1),
    // singular at the four nodes (+-i, +-i)
    auto R = qq_ring("a,c");
    auto g = P("(a^2+1)*(c^2+1)", R);
    auto L = morsify_limit(Variety(R, {}), g);
    long long sum = 0;
    int nodes = 0;
    for (const auto& cl : L.clusters) {
      if (std::abs(detail::eval_complex(g, cl.point.coords)) > 1e-6) continue;
      ++nodes;
      c.equal(static_cast<long long>(cl.multiplicity), 1LL, "nodal Milnor number");
      sum += cl.multiplicity;
    }
    c.equal(static_cast<long long>(nodes), 4LL, "nodes on the quadric");
    c.equal(sum, quadric_defect, "sum of nodal Milnor numbers vs quadric defect");
  });
  return c.report();
}

bool criterion4() {
  Criterion c(4, "ML degrees (incl. 3x3 rank<=2 mixture)");
  c.timed("Hardy-Weinberg", 1, [&] {
    c.equal(ml_degree(V("p0,p1,p2", {"4*p0*p2-p1^2"}), MlFlavor::Statistical).value, 1LL, "Hardy-Weinberg");
  });
  c.timed("generic conic", 5,
          [&] { c.equal(ml_degree(V("x,y", {"3*x^2-5*x*y+7*y^2+11*x-13*y+17"})).value, 4LL, "generic conic"); });
  c.timed("mixture model", 600, [&] {
    c.equal(ml_degree(V("a,b,c,d,e,f,g,h,i", kDet3), MlFlavor::Statistical).value, 10LL, "rank <= 2 mixture");
  });
  return c.report();
}

bool criterion5() {
  Criterion c(5, "removal ML / Euler obstruction on the nodal cubic");
  c.timed("nodal cubic", 60, [&] {
    auto X = V("x,y", {kNodal});
    Rational t(-5, 34);  // second intersection of the line through the node with slope 1
    auto p0 = euler_obstruction_at_point(X, {Rational(5), Rational(-7)});
    auto p1 = euler_obstruction_at_point(X, {Rational(2) + t, Rational(3) + t});
    auto p2 = euler_obstruction_at_point(X, {Rational(2), Rational(3)});
    c.equal(p0.removal, std::vector<long long>{7, 10, 3}, "generic point r");
    c.equal(p1.removal, std::vector<long long>{7, 10, 2}, "smooth point r");
    c.equal(p2.removal, std::vector<long long>{7, 10, 1}, "node r");
    c.equal(p0.value, 0LL, "Eu at a generic point");
    c.equal(p1.value, 1LL, "Eu at a smooth point");
    c.equal(p2.value, 2LL, "Eu at the node");
  });
  return c.report();
}

bool criterion6() {
  Criterion c(6, "sectional LO and polar degrees (incl. 3x3 determinant)");
  c.timed("space curve", 30, [&] {
    auto X = V("x,y,z", {"x^2+y^2+z^2-1", "y-x^2"});
    auto s = sectional_degrees(X, DegreeKind::LO).values;
    auto p = polar_degrees(X).values;
    c.equal(s, std::vector<long long>{6, 4}, "sectional LO");
    c.equal(p, std::vector<long long>{8, 4}, "polar degrees");
    c.expect(s != p, "sectional and polar degrees must differ for this curve");
  });
  c.timed("3x3 determinant", 600, [&] {
    auto X = V("a,b,c,d,e,f,g,h,i", kDet3);
    auto s = sectional_degrees(X, DegreeKind::LO).values;
    // an affine cone has s_i = 0 below the first nonzero polar class
    std::vector<long long> tail;
    for (long long v : s)
      if (v != 0 || !tail.empty()) tail.push_back(v);
    c.equal(tail, std::vector<long long>{6, 12, 12, 6, 3}, "nonzero sectional LO degrees");
    c.equal(static_cast<long long>(s.size()), 9LL, "entries s_0..s_dim");
    c.equal(polar_degrees(X).values, s, "polar = sectional for a cone");
  });
  return c.report();
}

bool criterion7() {
  Criterion c(7, "involution calculus");
  c.timed("involutivity", 1, [&] {
    SplitMix64 rng(2024);
    int bad = 0;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Rational> co;
      const int deg = static_cast<int>(rng.uniform(0, 10));
      for (int i = 0; i <= deg; ++i) {
        co.emplace_back(static_cast<long>(rng.uniform(-50, 50)), static_cast<unsigned long>(rng.uniform(1, 7)));
        co.back().canonicalize();
      }
      UniPolynomial p(co);
      bad += !(aluffi_involution(aluffi_involution(p)) == p);
    }
    c.equal(static_cast<long long>(bad), 0LL, "non-involutive cases of 200");
  });
  c.timed("st1/st2 mutual inversion", 1, [&] {
    SplitMix64 rng(99);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const int d = static_cast<int>(rng.uniform(0, 7));
      const int n = d + static_cast<int>(rng.uniform(0, 3));
      std::vector<BigInt> v;
      for (int i = 0; i <= d; ++i) v.emplace_back(static_cast<long>(rng.uniform(-1000, 1000)));
      DegreePolynomial S(n, d, v);
      bad += !(sectional_from_bidegrees(bidegrees_from_sectional(S)) == S);
      bad += !(bidegrees_from_sectional(sectional_from_bidegrees(S)) == S);
    }
    c.equal(static_cast<long long>(bad), 0LL, "round-trip failures of 100");
  });
  c.timed("bidegree/Chern-Mather round trip", 1, [&] {
    SplitMix64 rng(5);
    int bad = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const int d = static_cast<int>(rng.uniform(0, 8));
      const int n = d + static_cast<int>(rng.uniform(0, 2));
      std::vector<BigInt> b;
      for (int i = 0; i <= d; ++i) b.emplace_back(static_cast<long>(rng.uniform(-1000, 1000)));
      auto a = chern_mather_from_lo_bidegrees(b, n, d).a;
      bad += !(chern_mather_from_lo_bidegrees(a, n, d, true).a == b);
    }
    c.equal(static_cast<long long>(bad), 0LL, "round-trip failures of 50");
  });
  c.timed("circle", 1, [&] {
    auto X = V("x,y", {"x^2+y^2-1"});
    auto s = sectional_degrees(X, DegreeKind::LO).values;
    std::vector<BigInt> sb;
    for (long long v : s) sb.emplace_back(static_cast<long>(v));
    auto b = bidegrees_from_sectional(DegreePolynomial(2, 1, sb)).v;
    c.equal(b, Z({2, 2}), "circle LO-bidegrees");
    auto a = chern_mather_from_lo_bidegrees(b, 2, 1).a;
    c.equal(a, Z({0, 2}), "circle Chern-Mather class");
    // a_0 is the Euler characteristic of the smooth affine conic C^*
    c.equal(a[0], BigInt(0), "chi(C^*)");
  });
  c.timed("cone points", 1, [&] {
    c.equal(cone_point_euler_obstruction(V("x,y", {"x*y"})), BigInt(2), "Eu of V(xy) at 0");
    c.equal(cone_point_euler_obstruction(V("x,y,z", {"x^2+y^2+z^2"})), BigInt(0), "Eu of the quadric cone at 0");
  });
  return c.report();
}

bool criterion8() {
  Criterion c(8, "mixed volume, Bernstein, sparse ML degree");
  c.timed("square/simplex", 1, [&] {
    LatticePolytope square(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    LatticePolytope simplex(2, {{0, 0}, {1, 0}, {0, 1}});
    c.equal(mixed_volume({square, simplex}), BigInt(2), "MV(square, simplex)");
  });
  c.timed("Bernstein suite", 120, [&] {
    SplitMix64 rng(2718);
    int bad = 0;
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
      auto sys = SparseSupport::generic(supports, rng.next()).instantiate(R);
      std::vector<LatticePolytope> K;
      for (const auto& f : sys) K.push_back(newton_polytope(f));
      bad += !(mixed_volume(K) == static_cast<long>(torus_count(sys, 2147483629u)));
    }
    c.equal(static_cast<long long>(bad), 0LL, "systems where MV != torus solution count (of 20)");
  });
  c.timed("sparse ML of a generic conic", 60, [&] {
    auto X = V("x,y", {"3*x^2-5*x*y+7*y^2+11*x-13*y+17"});
    auto r = sparse_ml_degree(SparseSupport::from_polynomials(X.generators()), 2);
    c.equal(r.value, 4LL, "mixed volume of likelihood polytopes");
    c.equal(r.value, ml_degree(X).value, "Groebner ML degree");
  });
  return c.report();
}

bool criterion9() {
  Criterion c(9, "Morsification");
  c.timed("corpus", 60, [&] {
    auto XY = affine_space("x,y");
    auto f = P("x+x^2*y", XY.ring());
    c.equal(morse_point_count(XY, f).value, 2LL, "Morse count of x+x^2y");
    auto L = morsify_limit(XY, f);
    c.equal(static_cast<long long>(L.clusters.size()), 0LL, "finite limits of x+x^2y");
    c.equal(static_cast<long long>(L.escaped_count), 2LL, "escaped points of x+x^2y");

    auto X1 = affine_space("x");
    auto cube = P("x^3", X1.ring());
    auto C = morsify_limit(X1, cube);
    c.equal(static_cast<long long>(C.clusters.size()), 1LL, "limit clusters of x^3");
    if (C.clusters.size() == 1) {
      c.expect(std::abs(C.clusters[0].point.coords[0]) < 1e-9, "limit of x^3 is 0");
      c.equal(static_cast<long long>(C.clusters[0].multiplicity), milnor_number_at_origin(cube).value,
              "multiplicity of x^3 vs Milnor number");
      c.equal(static_cast<long long>(C.clusters[0].multiplicity), 2LL, "multiplicity of x^3");
    }

    for (const auto& m : morse_corpus()) {
      auto g = P(m.f, m.X.ring());
      const long long morse = morse_point_count(m.X, g).value;
      auto lim = morsify_limit(m.X, g);
      long long total = lim.escaped_count;
      for (const auto& cl : lim.clusters) total += cl.multiplicity;
      c.equal(total, morse, "conservation on " + m.name);
      c.equal(morse, m.morse, "Morse count of " + m.name);
    }
  });
  return c.report();
}

bool criterion10() {
  Criterion c(10, "engine properties and corpus stability");
  c.timed("quotient dimension order independence", 60, [&] {
    SplitMix64 rng(31);
    auto R2 = fp_ring("x,y");
    auto R3 = fp_ring("x,y,z");
    int bad = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto& R = trial % 2 ? R3 : R2;
      std::vector<Polynomial<PrimeField>> gens;
      for (std::size_t i = 0; i < R->size(); ++i) gens.push_back(random_poly(rng, R, trial % 2 ? 2 : 3, 6, 1000));
      auto a = quotient_dimension(buchberger(gens, MonomialOrder::degrevlex()));
      auto b = quotient_dimension(buchberger(gens, MonomialOrder::lex()));
      bad += !a || a != b;
    }
    c.equal(static_cast<long long>(bad), 0LL, "order-dependent quotient dimensions (of 20)");
  });
  c.timed("saturation idempotence", 60, [&] {
    SplitMix64 rng(12);
    auto R = fp_ring("x,y,z");
    int bad = 0;
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Polynomial<PrimeField>> I{random_poly(rng, R, 2, 3, 100) * P("x", R),
                                            random_poly(rng, R, 2, 3, 100) * P("y+z", R) * P("x", R)};
      auto s1 = buchberger(saturate(I, P("x", R)));
      auto s11 = buchberger(saturate(s1.generators(), P("x", R)));
      bad += !(s1.generators() == s11.generators());
    }
    c.equal(static_cast<long long>(bad), 0LL, "non-idempotent saturations (of 6)");
  });
  c.timed("corpus stability", 300, [&] {
    for (const auto& entry : degree_corpus()) {
      auto X = V(entry.vars, entry.gens);
      std::set<std::vector<long long>> seen;
      for (std::uint64_t seed : {3u, 4u})
        for (std::uint32_t p : {1000000007u, 2147483629u}) {
          DegreeOptions o;
          o.seed = seed;
          o.prime = p;
          seen.insert(entry.degrees(X, o));
        }
      c.equal(static_cast<long long>(seen.size()), 1LL, "distinct answers for " + entry.name);
    }
  });
  return c.report();
}

}  // namespace

int main() {
  int failed = 0;
  for (auto run : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8,
                   criterion9, criterion10})
    failed += !run();
  return failed;
}
