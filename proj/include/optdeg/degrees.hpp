#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optdeg/critical.hpp"

namespace optdeg {

struct DegreeOptions {
  std::uint64_t seed = 1;
  std::optional<std::uint32_t> prime;  // first run only; replicas draw their own
  bool certify = false;                // two (seed, prime) runs, a third on disagreement
  bool rational_pass = false;          // additionally repeat the first run over QQ
  GroebnerOptions groebner;
};

struct Provenance {
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint32_t> primes;
  bool certified = false;  // at least two independent runs agreed
  bool rational_checked = false;
  double wall_seconds = 0;
};

struct DegreeReport {
  std::string kind;
  long long value = 0;
  std::vector<std::pair<std::string, long long>> parts;  // named intermediate counts
  Provenance provenance;
};

enum class DegreeKind { ED, ML, LO };

inline std::string to_string(DegreeKind k) {
  switch (k) {
    case DegreeKind::ED: return "ED";
    case DegreeKind::ML: return "ML";
    case DegreeKind::LO: return "LO";
  }
  return "?";
}

struct SectionalVector {
  DegreeKind kind = DegreeKind::LO;
  std::vector<long long> values;  // s_0 .. s_d (polar: delta_1 .. delta_{d+1})
  Provenance provenance;
};

struct ObstructionReport {
  std::vector<Rational> point;
  std::vector<long long> removal;  // r_0 .. r_{d+1}
  long long value = 0;
  Provenance provenance;
};

enum class MlFlavor { VeryAffine, Statistical };

/// Unit, explicit or freshly random (generic) weights for the squared distance.
struct EdWeights {
  enum class Kind { Unit, Explicit, Generic };
  Kind kind = Kind::Unit;
  std::vector<Rational> values;

  static EdWeights unit() { return {}; }
  static EdWeights generic() { return {Kind::Generic, {}}; }
  static EdWeights given(std::vector<Rational> w) {
    for (const auto& x : w)
      if (sgn(x) == 0) throw DomainError("EdWeights", "weights must be nonzero");
    return {Kind::Explicit, std::move(w)};
  }
};

namespace detail {

inline std::uint64_t replica_seed(std::uint64_t seed, int i) {
  if (i == 0) return seed;
  SplitMix64 r(seed ^ (0x632BE59BD9B4E019ULL * static_cast<std::uint64_t>(i)));
  return r.next();
}

/// Runs `once(seed, field)` per the certification policy. Disagreement is surfaced:
/// without a majority the op fails with NonGenericDataError.
template <class R, class Fn>
std::pair<R, Provenance> certified_run(const char* op, const DegreeOptions& opts, Fn&& once) {
  const auto start = std::chrono::steady_clock::now();
  Provenance prov;
  std::vector<R> values;
  auto run = [&](int i) {
    std::uint64_t s = replica_seed(opts.seed, i);
    std::uint32_t p = (i == 0 && opts.prime) ? *opts.prime : prime_for_seed(s);
    while (std::find(prov.primes.begin(), prov.primes.end(), p) != prov.primes.end()) p = prime_for_seed(p + s);
    prov.seeds.push_back(s);
    prov.primes.push_back(p);
    values.push_back(once(s, PrimeField(p)));
  };
  run(0);
  R value = values[0];
  if (opts.certify) {
    run(1);
    if (values[1] == values[0]) {
      prov.certified = true;
    } else {
      run(2);
      if (values[2] == values[0] || values[2] == values[1]) {
        value = values[2];
        prov.certified = true;
      } else {
        throw NonGenericDataError(op, "three (seed, prime) runs disagree; no majority");
      }
    }
  }
  if (opts.rational_pass) {
    R exact = once(opts.seed, RationalField{});
    if (!(exact == values[0])) throw NonGenericDataError(op, "exact QQ run disagrees with the prime-field run");
    prov.rational_checked = true;
  }
  prov.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {value, prov};
}

template <class Field>
std::vector<typename Field::Element> sample_point(const Field& field, SplitMix64& rng, std::size_t n) {
  std::vector<typename Field::Element> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back(field.from_int(rng.uniform(-kDefaultSampleBound, kDefaultSampleBound)));
  return u;
}

template <class Field>
std::size_t ed_once(const Variety& X, const EdWeights& w, std::uint64_t seed, const Field& field,
                    const GroebnerOptions& gopts) {
  SplitMix64 rng(seed);
  auto pb = base_problem(X, field);
  const std::size_t n = pb.ring->size();
  auto u = sample_point(field, rng, n);
  std::vector<typename Field::Element> lam;
  if (w.kind == EdWeights::Kind::Explicit) {
    if (w.values.size() != n) throw DomainError("ed_degree", "weight vector dimension does not match the ring");
    for (const auto& x : w.values) lam.push_back(field.from_rational(x));
  } else if (w.kind == EdWeights::Kind::Generic) {
    for (std::size_t i = 0; i < n; ++i) lam.push_back(random_unit(field, rng));
  }
  pb.gradient = distance_gradient(pb.ring, u, lam);
  return critical_count(std::move(pb), rng, gopts);
}

/// Σ p_i - 1, appended when it is not already in the ideal.
template <class Field>
void append_sum_to_one(Problem<Field>& pb, const GroebnerOptions& gopts) {
  auto s = Polynomial<Field>::constant(pb.ring, pb.ring->field().neg(pb.ring->field().one()));
  for (std::size_t i = 0; i < pb.ring->size(); ++i) s += Polynomial<Field>::variable(pb.ring, i);
  if (!pb.generators.empty() && buchberger(pb.generators, MonomialOrder::degrevlex(), gopts).contains(s)) return;
  pb.generators.push_back(s);
}

template <class Field>
bool misses_torus(const Problem<Field>& pb, const GroebnerOptions& gopts) {
  if (pb.generators.empty()) return false;
  auto prod = Polynomial<Field>::constant(pb.ring, pb.ring->field().one());
  for (std::size_t i = 0; i < pb.ring->size(); ++i) prod *= Polynomial<Field>::variable(pb.ring, i);
  auto sat = saturate(pb.generators, prod, gopts);
  return sat.size() == 1 && sat[0].is_constant() && !sat[0].is_zero();
}

template <class Field>
std::size_t ml_once(const Variety& X, MlFlavor flavor, std::uint64_t seed, const Field& field,
                    const GroebnerOptions& gopts) {
  SplitMix64 rng(seed);
  auto pb = base_problem(X, field);
  if (flavor == MlFlavor::Statistical) append_sum_to_one(pb, gopts);
  pb.gradient = torus_gradient(pb.ring, coordinate_denominators(pb.ring), rng);
  Problem<Field> saved = pb;
  std::size_t count = critical_count(std::move(pb), rng, gopts);
  if (count == 0 && misses_torus(saved, gopts))
    throw EmptyTorusPartError("ml_degree", "X does not meet the torus (saturation by the coordinates is the unit ideal)");
  return count;
}

template <class Field>
std::size_t lo_once(Problem<Field> pb, SplitMix64& rng, const GroebnerOptions& gopts) {
  pb.gradient = linear_gradient(pb.ring, rng);
  return critical_count(std::move(pb), rng, gopts);
}

/// s_0..s_d of the problem's variety (dimension d): s_i slices by i random affine hyperplanes.
template <class Field>
std::vector<long long> sectional_once(const Problem<Field>& base, int d, DegreeKind kind, SplitMix64& rng,
                                      const GroebnerOptions& gopts) {
  std::vector<long long> s;
  const auto& ring = base.ring;
  auto slice = [&](int i, SplitMix64& r) {
    for (int attempt = 0; attempt < 3; ++attempt) {
      Problem<Field> pb = base;
      for (int j = 0; j < i; ++j) pb.generators.push_back(random_hyperplane(ring, r));
      if (i == 0 || dimension_of(ring, pb.generators, gopts) == d - i) return pb;
    }
    throw DimensionDropError("sectional_degrees", "random slice of codimension " + std::to_string(i) +
                                                      " failed to cut the dimension three times");
  };
  for (int i = 0; i <= d; ++i) {
    SplitMix64 r = rng.fork(static_cast<std::uint64_t>(i));
    Problem<Field> pb = slice(i, r);
    switch (kind) {
      case DegreeKind::LO: pb.gradient = linear_gradient(ring, r); break;
      case DegreeKind::ED: pb.gradient = distance_gradient(ring, sample_point(ring->field(), r, ring->size()), {}); break;
      case DegreeKind::ML: pb.gradient = torus_gradient(ring, coordinate_denominators(ring), r); break;
    }
    s.push_back(static_cast<long long>(critical_count(std::move(pb), r, gopts)));
  }
  // s_d must be deg X: count X ∩ (d fresh hyperplanes) directly
  SplitMix64 r = rng.fork(0xDE6);
  Problem<Field> pts = slice(d, r);
  auto q = quotient_dimension(buchberger(pts.generators.empty() ? std::vector<Polynomial<Field>>{Polynomial<Field>::zero(ring)}
                                                                : pts.generators,
                                         MonomialOrder::degrevlex(), gopts));
  if (!q || static_cast<long long>(*q) != s.back())
    throw NonGenericDataError("sectional_degrees", "s_d = " + std::to_string(s.back()) + " differs from deg X = " +
                                                       (q ? std::to_string(*q) : std::string("inf")));
  return s;
}

/// Affine chart of the projective closure in which a random hyperplane plays the role of
/// infinity: closure generators plus l(x) = 1.
template <class Field>
Problem<Field> random_chart(const Variety& Y, const Field& field, SplitMix64& rng, const GroebnerOptions& gopts) {
  auto pb = base_problem(Y, field);
  const int d = Y.dimension();
  auto hring = homogenizing_ring(pb.ring);
  std::vector<Polynomial<Field>> H;
  for (const auto& g : pb.generators) H.push_back(homogenize(g, hring));
  bool complete = true;
  if (!H.empty()) {
    auto withh = H;
    withh.push_back(Polynomial<Field>::variable(hring, 0));
    complete = dimension_of(hring, H, gopts) == d + 1 && dimension_of(hring, withh, gopts) == d;
  }
  if (!complete) {
    // homogenized degrevlex basis generates the ideal of the closure
    H.clear();
    for (const auto& g : buchberger(pb.generators, MonomialOrder::degrevlex(), gopts).generators())
      H.push_back(homogenize(g, hring));
  }
  std::vector<typename Field::Element> a;
  for (std::size_t i = 0; i < hring->size(); ++i) a.push_back(random_unit(field, rng));
  H.push_back(linear_form(hring, a, field.neg(field.one())));
  Problem<Field> out;
  out.ring = hring;
  out.generators = std::move(H);
  return out;
}

template <class Field>
std::vector<long long> removal_once(const Variety& X, const std::vector<Rational>& P, std::uint64_t seed,
                                    const Field& field, const GroebnerOptions& gopts) {
  SplitMix64 rng(seed);
  auto base = base_problem(X, field);
  const auto& ring = base.ring;
  const int d = X.dimension();
  std::vector<typename Field::Element> pt;
  for (const auto& x : P) pt.push_back(field.from_rational(x));
  std::vector<Polynomial<Field>> H;
  for (int k = 0; k <= d; ++k) H.push_back(random_hyperplane(ring, rng, &pt));
  std::vector<long long> r;
  for (int k = 0; k <= d + 1; ++k) {
    Problem<Field> pb = base;
    auto dens = coordinate_denominators(ring);
    for (int j = 0; j + 1 < k; ++j) pb.generators.push_back(H[static_cast<std::size_t>(j)]);
    if (k >= 1) dens.push_back(H[static_cast<std::size_t>(k - 1)]);  // removal: f = H^(k) as an extra torus coordinate
    SplitMix64 sub = rng.fork(static_cast<std::uint64_t>(k));
    pb.gradient = torus_gradient(ring, std::move(dens), sub);
    r.push_back(static_cast<long long>(critical_count(std::move(pb), sub, gopts)));
  }
  return r;
}

}  // namespace detail

/// Number of complex critical points of the (weighted) squared distance to X from a generic u.
inline DegreeReport ed_degree(const Variety& X, const EdWeights& weights = {}, const DegreeOptions& opts = {}) {
  auto [v, prov] = detail::certified_run<std::size_t>("ed_degree", opts, [&](std::uint64_t s, const auto& field) {
    return detail::ed_once(X, weights, s, field, opts.groebner);
  });
  return {"ed", static_cast<long long>(v), {}, prov};
}

/// ED degree of the affine cone over the projective variety Y.
inline DegreeReport projective_ed_degree(const Variety& Y, const EdWeights& weights = {},
                                         const DegreeOptions& opts = {}) {
  if (!Y.homogeneous()) throw DomainError("projective_ed_degree", "generators must be homogeneous");
  auto r = ed_degree(Y, weights, opts);
  r.kind = "ped";
  return r;
}

/// Generic-weight pED minus unit pED.
inline DegreeReport ed_defect(const Variety& Y, const DegreeOptions& opts = {}) {
  if (!Y.homogeneous()) throw DomainError("ed_defect", "generators must be homogeneous");
  auto [v, prov] =
      detail::certified_run<std::vector<long long>>("ed_defect", opts, [&](std::uint64_t s, const auto& field) {
        long long generic = static_cast<long long>(detail::ed_once(Y, EdWeights::generic(), s, field, opts.groebner));
        long long unit = static_cast<long long>(detail::ed_once(Y, EdWeights::unit(), s, field, opts.groebner));
        return std::vector<long long>{generic, unit};
      });
  return {"defect", v[0] - v[1], {{"ped_generic", v[0]}, {"ped_unit", v[1]}}, prov};
}

/// Critical points of a generic master function prod x_i^{u_i} on X ∩ torus. The
/// statistical flavor works on X ∩ {Σ p_i = 1}.
inline DegreeReport ml_degree(const Variety& X, MlFlavor flavor = MlFlavor::VeryAffine,
                              const DegreeOptions& opts = {}) {
  auto [v, prov] = detail::certified_run<std::size_t>("ml_degree", opts, [&](std::uint64_t s, const auto& field) {
    return detail::ml_once(X, flavor, s, field, opts.groebner);
  });
  return {flavor == MlFlavor::Statistical ? "ml-statistical" : "ml", static_cast<long long>(v), {}, prov};
}

/// Critical points of a generic linear function on X_reg.
inline DegreeReport lo_degree(const Variety& X, const DegreeOptions& opts = {}) {
  auto [v, prov] = detail::certified_run<std::size_t>("lo_degree", opts, [&](std::uint64_t s, const auto& field) {
    SplitMix64 rng(s);
    return detail::lo_once(detail::base_problem(X, field), rng, opts.groebner);
  });
  return {"lo", static_cast<long long>(v), {}, prov};
}

/// s_i = degree of X ∩ (i generic affine hyperplanes), i = 0..dim X.
inline SectionalVector sectional_degrees(const Variety& X, DegreeKind kind, const DegreeOptions& opts = {}) {
  auto [v, prov] = detail::certified_run<std::vector<long long>>(
      "sectional_degrees", opts, [&](std::uint64_t s, const auto& field) {
        SplitMix64 rng(s);
        return detail::sectional_once(detail::base_problem(X, field), X.dimension(), kind, rng, opts.groebner);
      });
  return {kind, v, prov};
}

/// Polar degrees delta_1..delta_{d+1} of the projective closure of Y: sectional LO degrees
/// after a random change of the hyperplane at infinity.
inline SectionalVector polar_degrees(const Variety& Y, const DegreeOptions& opts = {}) {
  auto [v, prov] = detail::certified_run<std::vector<long long>>(
      "polar_degrees", opts, [&](std::uint64_t s, const auto& field) {
        SplitMix64 rng(s);
        auto chart = detail::random_chart(Y, field, rng, opts.groebner);
        return detail::sectional_once(chart, Y.dimension(), DegreeKind::LO, rng, opts.groebner);
      });
  return {DegreeKind::LO, v, prov};
}

/// Eu_X(P) = (-1)^d r_0 + (-1)^{d-1} r_1 + ... + r_d - r_{d+1} from removal ML degrees.
inline ObstructionReport euler_obstruction_at_point(const Variety& X, const std::vector<Rational>& P,
                                                    const DegreeOptions& opts = {}) {
  if (P.size() != X.ambient_dimension()) throw DomainError("euler_obstruction_at_point", "point dimension mismatch");
  for (const auto& x : P)
    if (sgn(x) == 0) throw DomainError("euler_obstruction_at_point", "point must lie in the torus (nonzero coordinates)");
  auto [r, prov] = detail::certified_run<std::vector<long long>>(
      "euler_obstruction_at_point", opts,
      [&](std::uint64_t s, const auto& field) { return detail::removal_once(X, P, s, field, opts.groebner); });
  const int d = X.dimension();
  long long eu = 0;
  for (int k = 0; k <= d; ++k) eu += ((d - k) % 2 == 0 ? 1 : -1) * r[static_cast<std::size_t>(k)];
  eu -= r[static_cast<std::size_t>(d + 1)];
  return {P, r, eu, prov};
}

/// deg X: points of X ∩ (dim X generic hyperplanes).
inline long long variety_degree(const Variety& X, const DegreeOptions& opts = {}) {
  auto [v, prov] = detail::certified_run<std::size_t>("variety_degree", opts, [&](std::uint64_t s, const auto& field) {
    SplitMix64 rng(s);
    auto pb = detail::base_problem(X, field);
    for (int j = 0; j < X.dimension(); ++j) pb.generators.push_back(detail::random_hyperplane(pb.ring, rng));
    if (pb.generators.empty()) return std::size_t{1};
    auto q = quotient_dimension(buchberger(pb.generators, MonomialOrder::degrevlex(), opts.groebner));
    if (!q) throw DimensionDropError("variety_degree", "slice is not zero-dimensional");
    return *q;
  });
  return static_cast<long long>(v);
}

}  // namespace optdeg
