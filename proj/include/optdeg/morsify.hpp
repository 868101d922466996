#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "optdeg/degrees.hpp"

namespace optdeg {

using Complex = std::complex<double>;

struct NumericPoint {
  std::vector<Complex> coords;
  double residual = 0;  // max over equations of |g(x)| / max(1, sum_terms |c m(x)|)
  double tolerance = 0;
  int multiplicity = 1;  // eigenvalues merged into this point
};

struct LimitCluster {
  NumericPoint point;
  int multiplicity = 0;
};

/// lim_{t->0} of the critical points of f - t l on X_reg, plus the points lost to infinity.
struct LimitSet {
  std::vector<LimitCluster> clusters;
  int escaped_count = 0;
  long long morse_count = 0;  // critical points of f - t l at every tracked t
  std::vector<double> schedule;
  Provenance provenance;
};

struct MorseSchedule {
  Rational t0{1, 8};
  Rational ratio{1, 4};
  int steps = 8;
  double divergence = 1e6;
  double cluster_radius = 1e-6;
  double tolerance = 1e-8;
};

namespace detail {

inline Complex eval_complex(const Polynomial<RationalField>& f, const std::vector<Complex>& x, double* scale = nullptr) {
  Complex acc = 0;
  double s = 0;
  for (const auto& t : f.terms()) {
    Complex m = t.coeff.get_d();
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int e = 0; e < t.monomial.exp[i]; ++e) m *= x[i];
    acc += m;
    s += std::abs(m);
  }
  if (scale) *scale = s;
  return acc;
}

inline double backward_residual(const std::vector<Polynomial<RationalField>>& eqs, const std::vector<Complex>& x) {
  double r = 0;
  for (const auto& g : eqs) {
    double s = 0;
    const double v = std::abs(eval_complex(g, x, &s));
    r = std::max(r, v / std::max(1.0, s));
  }
  return r;
}

inline Eigen::MatrixXcd to_complex_matrix(const Matrix<RationalField>& m, bool transpose) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_d();
      if (transpose) {
        out(j, i) = v;
      } else {
        out(i, j) = v;
      }
    }
  return out;
}

inline double norm(const std::vector<Complex>& x) {
  double s = 0;
  for (const auto& c : x) s += std::norm(c);
  return std::sqrt(s);
}

inline double distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

// Gauss-Newton on an overdetermined-or-square system; keeps the better iterate.
inline void polish(const std::vector<Polynomial<RationalField>>& eqs,
                   const std::vector<std::vector<Polynomial<RationalField>>>& jac, std::vector<Complex>& x) {
  double best = backward_residual(eqs, x);
  for (int it = 0; it < 6 && best > 1e-15; ++it) {
    const auto m = static_cast<Eigen::Index>(eqs.size());
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXcd J(m, n);
    Eigen::VectorXcd F(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      F(i) = eval_complex(eqs[static_cast<std::size_t>(i)], x);
      for (Eigen::Index j = 0; j < n; ++j)
        J(i, j) = eval_complex(jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], x);
    }
    Eigen::VectorXcd dx = J.completeOrthogonalDecomposition().solve(F);
    std::vector<Complex> y = x;
    for (Eigen::Index j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] -= dx(j);
    const double r = backward_residual(eqs, y);
    if (!(r < best)) break;
    best = r;
    x = std::move(y);
  }
}

// Univariate helpers over F_p, coefficients low to high.
inline void trim(std::vector<std::uint32_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b,
                                           const PrimeField& F) {
  trim(a);
  const auto inv = F.inv(b.back());
  while (a.size() >= b.size()) {
    const auto q = F.mul(a.back(), inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = F.sub(a[shift + i], F.mul(q, b[i]));
    trim(a);
  }
  return a;
}

inline std::vector<std::uint32_t> poly_gcd(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                                           const PrimeField& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Number of distinct solutions, as the degree of the squarefree part of the minimal
/// polynomial of h on K[x]/I (computed mod p by a Krylov sequence). Exact whenever h
/// separates the solutions and p is not unlucky.
inline std::size_t distinct_solutions(const std::vector<Polynomial<RationalField>>& ideal,
                                      const Polynomial<RationalField>& h, const GroebnerOptions& gopts,
                                      std::uint32_t prime = kStructurePrime) {
  using Poly = Polynomial<PrimeField>;
  const PrimeField F(prime);
  auto R = with_field(ideal.front().ring(), F);
  auto gb = buchberger(to_field(ideal, R), MonomialOrder::degrevlex(), gopts);
  auto sm = standard_monomials(gb.leading_monomials(), R->size());
  if (!sm) throw DomainError("numeric_solve", "ideal is not zero-dimensional");
  const std::size_t N = sm->size();
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < N; ++i) index.emplace((*sm)[i], i);
  const Poly H = h.map_coefficients(R);

  // rows: reduced Krylov vectors with their pivot and the combination of h^0..h^k they encode
  struct Row {
    std::vector<std::uint32_t> v, combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  Poly cur = normal_form(Poly::constant(R, F.one()), gb);
  for (std::size_t k = 0; k <= N; ++k) {
    std::vector<std::uint32_t> v(N, 0), combo(k + 1, 0);
    for (const auto& t : cur.terms()) v[index.at(t.monomial)] = t.coeff;
    combo[k] = 1;
    for (const auto& r : rows) {
      if (v[r.pivot] == 0) continue;
      const auto c = v[r.pivot];
      for (std::size_t i = 0; i < N; ++i) v[i] = F.sub(v[i], F.mul(c, r.v[i]));
      for (std::size_t i = 0; i < r.combo.size(); ++i) combo[i] = F.sub(combo[i], F.mul(c, r.combo[i]));
    }
    std::size_t piv = N;
    for (std::size_t i = 0; i < N && piv == N; ++i)
      if (v[i] != 0) piv = i;
    if (piv == N) {
      // combo is the minimal polynomial of h
      std::vector<std::uint32_t> der;
      for (std::size_t i = 1; i < combo.size(); ++i) der.push_back(F.mul(F.from_int(static_cast<long long>(i)), combo[i]));
      auto g = poly_gcd(combo, der, F);
      trim(combo);
      return (combo.size() - 1) - (g.size() - 1);
    }
    const auto inv = F.inv(v[piv]);
    for (auto& x : v) x = F.mul(x, inv);
    for (auto& x : combo) x = F.mul(x, inv);
    rows.push_back({std::move(v), std::move(combo), piv});
    cur = normal_form(H * cur, gb);
  }
  throw std::logic_error("distinct_solutions: Krylov sequence did not close");
}

}  // namespace detail

/// Solutions of a zero-dimensional ideal from the eigenvectors of a multiplication matrix.
/// Near-identical points are merged (multiplicity = merged eigenvalues), so the count never
/// exceeds the quotient dimension.
inline std::vector<NumericPoint> numeric_solve(const std::vector<Polynomial<RationalField>>& ideal,
                                               double tolerance = 1e-8, std::uint64_t seed = 1,
                                               const GroebnerOptions& gopts = {}) {
  using Poly = Polynomial<RationalField>;
  if (ideal.empty()) throw DomainError("numeric_solve", "empty generator list");
  const auto& ring = ideal.front().ring();
  const std::size_t n = ring->size();
  auto gb = buchberger(ideal, MonomialOrder::degrevlex(), gopts);
  auto sm = standard_monomials(gb.leading_monomials(), n);
  if (!sm) throw DomainError("numeric_solve", "ideal is not zero-dimensional");
  if (sm->size() > 200) throw ResourceLimitError("numeric_solve", "quotient dimension " + std::to_string(sm->size()) + " exceeds 200");
  if (sm->empty()) return {};

  SplitMix64 rng(seed);
  std::vector<Rational> hc;
  for (std::size_t i = 0; i < n; ++i) hc.emplace_back(static_cast<long>(rng.nonzero(97)), 97UL);
  for (auto& c : hc) c.canonicalize();
  const Poly h = linear_form(ring, hc, Rational(0));

  std::vector<Monomial> basis;
  const Eigen::MatrixXcd A = detail::to_complex_matrix(multiplication_matrix(gb, h, &basis), true);
  std::size_t one = basis.size();
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].is_one()) one = i;
  if (one == basis.size()) throw std::logic_error("numeric_solve: 1 is not a standard monomial");
  std::vector<Eigen::MatrixXcd> X;
  for (std::size_t k = 0; k < n; ++k)
    X.push_back(detail::to_complex_matrix(multiplication_matrix(gb, Poly::variable(ring, k)), true));

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success) throw NumericError("numeric_solve", "eigenvalue iteration did not converge");

  // v is (b_j(xi))_j up to scale, so x_k(xi) = (X_k v)[one] / v[one]
  std::vector<std::vector<Complex>> raw;
  double worst_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
    Eigen::VectorXcd v = es.eigenvectors().col(e);
    const Complex pivot = v(static_cast<Eigen::Index>(one));
    worst_pivot = std::min(worst_pivot, std::abs(pivot) / v.norm());
    std::vector<Complex> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = (X[k] * v)(static_cast<Eigen::Index>(one)) / pivot;
    raw.push_back(std::move(x));
  }

  // merge the closest eigenvalues until exactly as many groups remain as distinct solutions
  const std::size_t distinct = std::min(raw.size(), detail::distinct_solutions(ideal, h, gopts));
  std::vector<int> label(raw.size());
  std::iota(label.begin(), label.end(), 0);
  {
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    const auto& ev = es.eigenvalues();
    for (std::size_t a = 0; a < raw.size(); ++a)
      for (std::size_t b = a + 1; b < raw.size(); ++b)
        pairs.emplace_back(std::abs(ev(static_cast<Eigen::Index>(a)) - ev(static_cast<Eigen::Index>(b))), a, b);
    std::sort(pairs.begin(), pairs.end());
    std::size_t groups = raw.size();
    for (const auto& [d, a, b] : pairs) {
      if (groups <= distinct) break;
      const int la = label[a], lb = label[b];
      if (la == lb) continue;
      for (auto& l : label)
        if (l == lb) l = la;
      --groups;
    }
  }
  std::vector<int> ids(label);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const int labels = static_cast<int>(ids.size());
  for (auto& l : label) l = static_cast<int>(std::lower_bound(ids.begin(), ids.end(), l) - ids.begin());

  auto jac = jacobian(ideal);
  std::vector<NumericPoint> out;
  for (int l = 0; l < labels; ++l) {
    NumericPoint p;
    p.coords.assign(n, Complex(0));
    p.multiplicity = 0;
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (label[i] == l) {
        ++p.multiplicity;
        for (std::size_t k = 0; k < n; ++k) p.coords[k] += raw[i][k];
      }
    for (auto& c : p.coords) c /= static_cast<double>(p.multiplicity);
    if (p.multiplicity == 1) detail::polish(ideal, jac, p.coords);
    p.residual = detail::backward_residual(ideal, p.coords);
    p.tolerance = tolerance;
    if (!(p.residual < tolerance))
      throw NumericError("numeric_solve", "residual " + std::to_string(p.residual) + " exceeds tolerance " +
                                              std::to_string(tolerance) + " (ill-conditioned; smallest eigenvector pivot " +
                                              std::to_string(worst_pivot) + ")");
    out.push_back(std::move(p));
  }
  return out;
}

namespace detail {

template <class Field>
Problem<Field> morse_problem(const Variety& X, const Polynomial<RationalField>& f, const RingPtr<Field>& ring,
                             const typename Field::Element& t, const std::vector<typename Field::Element>& l) {
  Problem<Field> pb;
  pb.ring = ring;
  pb.generators = to_field(X.generators(), ring);
  const auto& field = ring->field();
  auto F = f.map_coefficients(ring);
  for (std::size_t i = 0; i < ring->size(); ++i)
    pb.gradient.poly.push_back(F.derivative(i) - Polynomial<Field>::constant(ring, field.mul(t, l[i])));
  return pb;
}

inline void check_objective(const char* op, const Variety& X, const Polynomial<RationalField>& f) {
  if (!same_ring(f.ring(), X.ring())) throw DomainError(op, "objective lives in a different ring");
  auto fp = with_field(X.ring(), PrimeField(kStructurePrime));
  auto F = f.map_coefficients(fp);
  if (X.generators().empty()) {
    if (F.is_constant()) throw DomainError(op, "objective is constant");
    return;
  }
  auto nf = normal_form(F, buchberger(to_field(X.generators(), fp)));
  if (nf.is_constant()) throw DomainError(op, "objective is constant on X");
}

/// Critical equations of f - t l as polynomials over QQ, Rabinowitsch-extended so every
/// solution lies on X_reg; the first X.ambient_dimension() coordinates are the point.
inline std::vector<Polynomial<RationalField>> morse_equations(const Variety& X, const Polynomial<RationalField>& f,
                                                              const Rational& t, const std::vector<Rational>& l,
                                                              SplitMix64& rng, const GroebnerOptions& gopts) {
  using Poly = Polynomial<RationalField>;
  auto sys = build_critical_system(morse_problem<RationalField>(X, f, X.ring(), t, l), rng, gopts);
  std::vector<std::string> ws;
  std::vector<const Poly*> targets;
  for (std::size_t i = 0; i < sys.saturation_targets.size(); ++i) {
    const auto& h = sys.saturation_targets[i];
    if (sys.implied[i] || h.is_constant()) continue;
    targets.push_back(&h);
    ws.push_back("w" + std::to_string(targets.size()));
  }
  auto ext = extend_ring(sys.ring, ws);
  std::vector<Poly> eqs;
  for (const auto& e : sys.equations) eqs.push_back(e.embed(ext));
  for (std::size_t i = 0; i < targets.size(); ++i)
    eqs.push_back(Poly::variable(ext, sys.ring->size() + i) * targets[i]->embed(ext) -
                  Poly::constant(ext, Rational(1)));
  return eqs;
}

// One level of vector Aitken extrapolation; returns false when the sequence is not contracting.
inline bool aitken(const std::vector<std::vector<Complex>>& seq, std::vector<std::vector<Complex>>& out) {
  out.clear();
  for (std::size_t k = 2; k < seq.size(); ++k) {
    std::vector<Complex> d1(seq[k].size()), d2(seq[k].size());
    double dot = 0, n1 = 0;
    for (std::size_t i = 0; i < d1.size(); ++i) {
      d1[i] = seq[k - 1][i] - seq[k - 2][i];
      d2[i] = seq[k][i] - seq[k - 1][i];
      dot += std::real(std::conj(d1[i]) * d2[i]);
      n1 += std::norm(d1[i]);
    }
    std::vector<Complex> x = seq[k];
    if (n1 > 1e-28 * std::max(1.0, norm(seq[k]) * norm(seq[k]))) {
      const double rho = dot / n1;
      if (!(std::abs(rho) < 0.98)) return false;
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += d2[i] * (rho / (1 - rho));
    }
    out.push_back(std::move(x));
  }
  return !out.empty();
}

struct Trajectory {
  std::vector<std::vector<Complex>> positions;  // one per t_k
};

struct Classified {
  bool escaped = false;
  std::vector<Complex> limit;
  double error = 0;
};

inline Classified classify(const Trajectory& tr, const MorseSchedule& s) {
  const auto& P = tr.positions;
  const std::size_t K = P.size();
  Classified c;
  std::vector<double> norms;
  for (const auto& p : P) norms.push_back(norm(p));
  if (norms.back() > s.divergence) {
    c.escaped = true;
    return c;
  }
  if (K >= 4) {
    bool growing = true;
    for (std::size_t k = K - 3; k < K; ++k) growing = growing && norms[k] > 1.1 * norms[k - 1];
    if (growing) {
      c.escaped = true;
      return c;
    }
  }
  // iterated Aitken on the tail; each level removes one Puiseux term
  std::vector<std::vector<Complex>> level = P, next;
  std::vector<Complex> best = P.back();
  double err = K >= 2 ? distance(P[K - 1], P[K - 2]) : 0;
  for (int depth = 0; depth < 3 && level.size() >= 3; ++depth) {
    if (!aitken(level, next)) break;
    const double e = next.size() >= 2 ? distance(next.back(), next[next.size() - 2]) : err;
    if (!(e < err)) break;
    best = next.back();
    err = e;
    level = next;
  }
  c.limit = best;
  c.error = err;
  return c;
}

}  // namespace detail

/// Critical points of f - t0 l on X_reg for generic t0 and l (exact count).
inline DegreeReport morse_point_count(const Variety& X, const Polynomial<RationalField>& f,
                                      const DegreeOptions& opts = {}) {
  detail::check_objective("morse_point_count", X, f);
  auto [v, prov] = detail::certified_run<std::size_t>("morse_point_count", opts, [&](std::uint64_t s, const auto& field) {
    using Field = std::decay_t<decltype(field)>;
    SplitMix64 rng(s);
    auto ring = with_field(X.ring(), field);
    auto t = detail::random_unit(field, rng);
    std::vector<typename Field::Element> l;
    for (std::size_t i = 0; i < ring->size(); ++i) l.push_back(detail::random_unit(field, rng));
    return critical_count(detail::morse_problem<Field>(X, f, ring, t, l), rng, opts.groebner);
  });
  return {"morse", static_cast<long long>(v), {}, prov};
}

/// Limits of the critical points of f - t l as t -> 0 along t_k = t0 ratio^k: trajectories are
/// matched across steps, then either extrapolated to a limit or counted as escaping.
inline LimitSet morsify_limit(const Variety& X, const Polynomial<RationalField>& f, std::uint64_t seed = 1,
                              MorseSchedule schedule = {}, const DegreeOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  detail::check_objective("morsify_limit", X, f);
  if (!(schedule.t0 > 0) || !(schedule.ratio > 0) || !(schedule.ratio < 1) || schedule.steps < 3)
    throw DomainError("morsify_limit", "need t0 > 0, 0 < ratio < 1 and at least 3 steps");
  const std::size_t n = X.ambient_dimension();
  DegreeOptions copts = opts;
  copts.seed = seed ^ 0x6D6F727365ULL;
  const auto exact = morse_point_count(X, f, copts);

  for (int attempt = 0; attempt < 2; ++attempt) {
    SplitMix64 rng(seed);
    std::vector<Rational> l;
    for (std::size_t i = 0; i < n; ++i) l.emplace_back(static_cast<long>(rng.nonzero(9)));

    LimitSet out;
    out.morse_count = exact.value;
    out.provenance = exact.provenance;
    std::vector<detail::Trajectory> traj;
    Rational t = schedule.t0;
    for (int k = 0; k <= schedule.steps; ++k, t *= schedule.ratio) {
      out.schedule.push_back(t.get_d());
      SplitMix64 sysrng = rng.fork(static_cast<std::uint64_t>(k));
      auto eqs = detail::morse_equations(X, f, t, l, sysrng, opts.groebner);
      auto pts = numeric_solve(eqs, schedule.tolerance, seed + static_cast<std::uint64_t>(k), opts.groebner);
      std::vector<std::vector<Complex>> here;
      for (const auto& p : pts)
        for (int m = 0; m < p.multiplicity; ++m) here.emplace_back(p.coords.begin(), p.coords.begin() + n);
      if (static_cast<long long>(here.size()) != exact.value)
        throw NumericError("morsify_limit", "found " + std::to_string(here.size()) + " critical points at t = " +
                                                t.get_str() + ", expected " + std::to_string(exact.value));
      if (k == 0) {
        for (auto& x : here) traj.push_back({{std::move(x)}});
        continue;
      }
      // greedy global matching by distance to the previous positions
      std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
      for (std::size_t a = 0; a < traj.size(); ++a)
        for (std::size_t b = 0; b < here.size(); ++b)
          pairs.emplace_back(detail::distance(traj[a].positions.back(), here[b]), a, b);
      std::sort(pairs.begin(), pairs.end());
      std::vector<bool> ta(traj.size(), false), hb(here.size(), false);
      for (const auto& [d, a, b] : pairs) {
        if (ta[a] || hb[b]) continue;
        ta[a] = hb[b] = true;
        traj[a].positions.push_back(here[b]);
      }
    }

    std::vector<detail::Classified> cls;
    for (const auto& tr : traj) {
      auto c = detail::classify(tr, schedule);
      if (c.escaped) {
        ++out.escaped_count;
      } else {
        cls.push_back(std::move(c));
      }
    }
    // cluster the limits; radius grows with each trajectory's extrapolation error
    std::vector<double> radius;
    for (const auto& c : cls)
      radius.push_back(std::max(schedule.cluster_radius * std::max(1.0, detail::norm(c.limit)), 10 * c.error));
    std::vector<int> label(cls.size(), -1);
    int labels = 0;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (label[i] >= 0) continue;
      label[i] = labels;
      std::vector<std::size_t> stack{i};
      while (!stack.empty()) {
        std::size_t a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < cls.size(); ++b)
          if (label[b] < 0 && detail::distance(cls[a].limit, cls[b].limit) < std::max(radius[a], radius[b])) {
            label[b] = labels;
            stack.push_back(b);
          }
      }
      ++labels;
    }
    bool ambiguous = false;
    for (std::size_t a = 0; a < cls.size(); ++a)
      for (std::size_t b = 0; b < cls.size(); ++b)
        if (label[a] != label[b] &&
            detail::distance(cls[a].limit, cls[b].limit) < 1e3 * std::max(radius[a], radius[b]))
          ambiguous = true;
    if (ambiguous) {
      if (attempt == 0) {
        schedule.steps += 4;
        continue;
      }
      throw AmbiguousClusterError("morsify_limit", "two limit clusters stay within tolerance after refinement");
    }
    for (int l2 = 0; l2 < labels; ++l2) {
      LimitCluster cl;
      cl.point.coords.assign(n, Complex(0));
      double worst = 0;
      for (std::size_t i = 0; i < cls.size(); ++i)
        if (label[i] == l2) {
          ++cl.multiplicity;
          for (std::size_t k = 0; k < n; ++k) cl.point.coords[k] += cls[i].limit[k];
          worst = std::max(worst, radius[i]);
        }
      for (auto& c : cl.point.coords) {
        c /= static_cast<double>(cl.multiplicity);
        // snap round-off so exact limits print as exact values
        if (std::abs(c.real()) < 1e-12) c.real(0);
        if (std::abs(c.imag()) < 1e-12) c.imag(0);
      }
      cl.point.multiplicity = cl.multiplicity;
      cl.point.tolerance = worst;
      cl.point.residual = X.generators().empty() ? 0 : detail::backward_residual(X.generators(), cl.point.coords);
      out.clusters.push_back(std::move(cl));
    }
    std::sort(out.clusters.begin(), out.clusters.end(), [](const LimitCluster& a, const LimitCluster& b) {
      for (std::size_t k = 0; k < a.point.coords.size(); ++k) {
        if (std::abs(a.point.coords[k].real() - b.point.coords[k].real()) > 1e-9)
          return a.point.coords[k].real() < b.point.coords[k].real();
        if (std::abs(a.point.coords[k].imag() - b.point.coords[k].imag()) > 1e-9)
          return a.point.coords[k].imag() < b.point.coords[k].imag();
      }
      return false;
    });
    long long total = out.escaped_count;
    for (const auto& c : out.clusters) total += c.multiplicity;
    if (total != out.morse_count) throw std::logic_error("morsify_limit: trajectory count not conserved");
    out.provenance.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  throw std::logic_error("morsify_limit: unreachable");
}

/// mu = dim K[x]/J - dim K[x]/(J : h^inf) for a generic linear h through the origin: the
/// saturation strips exactly the component of J supported at 0.
inline DegreeReport milnor_number_at_origin(const Polynomial<RationalField>& f, const DegreeOptions& opts = {}) {
  if (f.is_zero()) throw DomainError("milnor_number_at_origin", "zero polynomial");
  if (sgn(f.constant_term()) != 0) throw DomainError("milnor_number_at_origin", "f(0) must vanish");
  const auto& ring = f.ring();
  for (std::size_t i = 0; i < ring->size(); ++i)
    if (sgn(f.derivative(i).constant_term()) != 0)
      throw NotSingularAtOriginError("milnor_number_at_origin", "the origin is not a critical point");
  auto [v, prov] = detail::certified_run<std::size_t>("milnor_number_at_origin", opts, [&](std::uint64_t s,
                                                                                          const auto& field) {
    using Field = std::decay_t<decltype(field)>;
    SplitMix64 rng(s);
    auto R = with_field(ring, field);
    auto F = f.map_coefficients(R);
    std::vector<Polynomial<Field>> J;
    for (std::size_t i = 0; i < R->size(); ++i) J.push_back(F.derivative(i));
    auto total = quotient_dimension(buchberger(J, MonomialOrder::degrevlex(), opts.groebner));
    if (!total) throw NonIsolatedError("milnor_number_at_origin", "Jacobian ideal is not zero-dimensional");
    std::vector<typename Field::Element> a;
    for (std::size_t i = 0; i < R->size(); ++i) a.push_back(detail::random_unit(field, rng));
    auto h = linear_form(R, a, field.zero());
    auto away = quotient_dimension(buchberger(saturate(J, h, opts.groebner), MonomialOrder::degrevlex(), opts.groebner));
    return *total - away.value_or(0);
  });
  return {"milnor", static_cast<long long>(v), {}, prov};
}

}  // namespace optdeg
