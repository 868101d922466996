#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "optdeg/groebner.hpp"
#include "optdeg/sampler.hpp"
#include "optdeg/variety.hpp"

namespace optdeg {

/// Objective gradient in the current coordinates: a polynomial part (one entry per
/// variable, or empty) plus a loglinear part sum_m u_m * grad(D_m) / D_m.
template <class Field>
struct Gradient {
  std::vector<Polynomial<Field>> poly;
  std::vector<typename Field::Element> exponents;
  std::vector<Polynomial<Field>> denominators;
};

/// A variety with an objective, over one field, before the critical system is formed.
template <class Field>
struct Problem {
  RingPtr<Field> ring;
  std::vector<Polynomial<Field>> generators;
  Gradient<Field> gradient;
  bool empty = false;  // a generator reduced to a nonzero constant or a denominator to zero
};

template <class Field>
struct CriticalSystem {
  enum class Formulation { Multipliers, Minors };

  RingPtr<Field> ring;  // original variables, then multipliers nu_1..nu_k
  std::size_t original_variables = 0;
  std::size_t multipliers = 0;
  Formulation formulation = Formulation::Multipliers;
  std::vector<Polynomial<Field>> equations;
  std::vector<Polynomial<Field>> saturation_targets;
  /// implied[i]: target i cannot vanish on V(equations) (e.g. u_i - p_i * (...) = 0
  /// forces p_i != 0), so counting may skip its saturation.
  std::vector<bool> implied;
};

namespace detail {

template <class Field>
typename Field::Element random_unit(const Field& field, SplitMix64& rng, long long bound = kDefaultSampleBound) {
  for (;;) {
    auto v = field.from_int(rng.nonzero(bound));
    if (!field.is_zero(v)) return v;
  }
}

template <class Field>
Gradient<Field> make_gradient(const Objective& obj, const RingPtr<Field>& ring) {
  const auto& field = ring->field();
  const std::size_t n = ring->size();
  Gradient<Field> g;
  switch (obj.kind) {
    case Objective::Kind::SquaredDistance: {
      if (obj.data.size() != n) throw DomainError("Objective", "data point dimension does not match the ring");
      if (!obj.weights.empty() && obj.weights.size() != n)
        throw DomainError("Objective", "weight vector dimension does not match the ring");
      for (std::size_t i = 0; i < n; ++i) {
        auto lam = obj.weights.empty() ? field.one() : field.from_rational(obj.weights[i]);
        auto two_lam = field.add(lam, lam);
        g.poly.push_back((Polynomial<Field>::variable(ring, i) -
                          Polynomial<Field>::constant(ring, field.from_rational(obj.data[i])))
                             .scaled(two_lam));
      }
      break;
    }
    case Objective::Kind::Linear:
      if (obj.data.size() != n) throw DomainError("Objective", "coefficient dimension does not match the ring");
      for (std::size_t i = 0; i < n; ++i)
        g.poly.push_back(Polynomial<Field>::constant(ring, field.from_rational(obj.data[i])));
      break;
    case Objective::Kind::LogLinear:
      for (std::size_t m = 0; m < obj.denominators.size(); ++m) {
        g.exponents.push_back(field.from_rational(obj.data[m]));
        g.denominators.push_back(obj.denominators[m].map_coefficients(ring));
      }
      break;
  }
  return g;
}

/// Squared distance (unit or weighted) with data u, as a gradient.
template <class Field>
Gradient<Field> distance_gradient(const RingPtr<Field>& ring, const std::vector<typename Field::Element>& u,
                                  const std::vector<typename Field::Element>& weights) {
  const auto& field = ring->field();
  Gradient<Field> g;
  for (std::size_t i = 0; i < ring->size(); ++i) {
    auto lam = weights.empty() ? field.one() : weights[i];
    g.poly.push_back((Polynomial<Field>::variable(ring, i) - Polynomial<Field>::constant(ring, u[i]))
                         .scaled(field.add(lam, lam)));
  }
  return g;
}

template <class Field>
Gradient<Field> linear_gradient(const RingPtr<Field>& ring, SplitMix64& rng) {
  Gradient<Field> g;
  for (std::size_t i = 0; i < ring->size(); ++i)
    g.poly.push_back(Polynomial<Field>::constant(ring, random_unit(ring->field(), rng)));
  return g;
}

template <class Field>
Gradient<Field> torus_gradient(const RingPtr<Field>& ring, std::vector<Polynomial<Field>> denominators,
                               SplitMix64& rng) {
  Gradient<Field> g;
  for (std::size_t m = 0; m < denominators.size(); ++m) g.exponents.push_back(random_unit(ring->field(), rng));
  g.denominators = std::move(denominators);
  return g;
}

template <class Field>
std::vector<Polynomial<Field>> coordinate_denominators(const RingPtr<Field>& ring) {
  std::vector<Polynomial<Field>> out;
  for (std::size_t i = 0; i < ring->size(); ++i) out.push_back(Polynomial<Field>::variable(ring, i));
  return out;
}

/// Random affine hyperplane sum a_i x_i + b; through `point` when given.
template <class Field>
Polynomial<Field> random_hyperplane(const RingPtr<Field>& ring, SplitMix64& rng,
                                    const std::vector<typename Field::Element>* point = nullptr) {
  const auto& field = ring->field();
  std::vector<typename Field::Element> a;
  for (std::size_t i = 0; i < ring->size(); ++i) a.push_back(random_unit(field, rng));
  auto b = random_unit(field, rng);
  if (point) {
    b = field.zero();
    for (std::size_t i = 0; i < a.size(); ++i) b = field.sub(b, field.mul(a[i], (*point)[i]));
  }
  return linear_form(ring, a, b);
}

template <class Field>
Problem<Field> base_problem(const Variety& X, const Field& field) {
  Problem<Field> pb;
  pb.ring = with_field(X.ring(), field);
  pb.generators = to_field(X.generators(), pb.ring);
  return pb;
}

/// Solves each linear generator for one variable and substitutes it everywhere.
/// Critical points of the objective on X correspond one-to-one before and after
/// (the substitution is an affine isomorphism onto the linear section).
template <class Field>
Problem<Field> substitute_linear(Problem<Field> pb) {
  using Poly = Polynomial<Field>;
  for (;;) {
    if (pb.empty) return pb;
    std::size_t j = pb.generators.size();
    for (std::size_t k = 0; k < pb.generators.size(); ++k)
      if (pb.generators[k].total_degree() == 1) {
        j = k;
        break;
      }
    if (j == pb.generators.size()) return pb;
    const Poly g = pb.generators[j];
    const auto& field = pb.ring->field();
    const std::size_t n = pb.ring->size();
    // pivot: last variable occurring in g
    std::size_t v = n;
    std::vector<typename Field::Element> coef(n, field.zero());
    for (const auto& t : g.terms())
      if (t.monomial.degree == 1)
        for (std::size_t i = 0; i < n; ++i)
          if (t.monomial.exp[i]) coef[i] = t.coeff;
    for (std::size_t i = 0; i < n; ++i)
      if (!field.is_zero(coef[i])) v = i;
    auto inv_a = field.inv(coef[v]);

    std::vector<std::string> vars;
    for (std::size_t i = 0; i < n; ++i)
      if (i != v) vars.push_back(pb.ring->name(i));
    auto target = make_ring<Field>(vars, field);
    // x_v = -(g - a x_v) / a, written in the target ring
    std::vector<Term<Field>> image;
    for (const auto& t : g.terms()) {
      if (t.monomial.exp[v]) continue;
      Monomial m;
      std::size_t pos = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (i != v) m.exp[pos++] = t.monomial.exp[i];
      m.refresh();
      image.push_back({m, field.neg(field.mul(t.coeff, inv_a))});
    }
    std::map<std::string, Poly> assignment{{pb.ring->name(v), Poly::from_terms(target, std::move(image))}};
    auto sub = [&](const Poly& f) { return specialize(f, assignment, target); };

    Problem<Field> next;
    next.ring = target;
    for (std::size_t k = 0; k < pb.generators.size(); ++k) {
      if (k == j) continue;
      Poly h = sub(pb.generators[k]);
      if (h.is_zero()) continue;
      if (h.is_constant()) next.empty = true;
      next.generators.push_back(std::move(h));
    }
    if (!pb.gradient.poly.empty()) {
      // chain rule: d/dy_i = d/dx_i + (dx_v/dx_i) d/dx_v with dx_v/dx_i = -c_i / a
      for (std::size_t i = 0; i < n; ++i) {
        if (i == v) continue;
        Poly gi = pb.gradient.poly[i];
        if (!field.is_zero(coef[i])) gi -= pb.gradient.poly[v].scaled(field.mul(coef[i], inv_a));
        next.gradient.poly.push_back(sub(gi));
      }
    }
    for (std::size_t m = 0; m < pb.gradient.denominators.size(); ++m) {
      Poly d = sub(pb.gradient.denominators[m]);
      if (d.is_zero()) {
        next.empty = true;
        continue;
      }
      if (d.is_constant()) continue;  // log-derivative vanishes
      next.gradient.exponents.push_back(pb.gradient.exponents[m]);
      next.gradient.denominators.push_back(std::move(d));
    }
    pb = std::move(next);
  }
}

template <class Field>
using PolyMatrix = std::vector<std::vector<Polynomial<Field>>>;

inline void for_each_subset(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// All r x r minors using the given rows (exactly r of them) and any r columns.
template <class Field>
std::vector<Polynomial<Field>> minors_of_rows(const PolyMatrix<Field>& m, const std::vector<std::size_t>& rows,
                                              std::size_t ncols) {
  std::vector<Polynomial<Field>> out;
  for_each_subset(ncols, rows.size(), [&](const std::vector<std::size_t>& cols) {
    PolyMatrix<Field> sub;
    for (std::size_t r : rows) {
      std::vector<Polynomial<Field>> row;
      for (std::size_t c : cols) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    auto d = determinant(sub);
    if (!d.is_zero()) out.push_back(std::move(d));
  });
  return out;
}

/// Random combination of the c x c minors of the Jacobian: vanishes on Sing(X).
template <class Field>
Polynomial<Field> singular_witness(const PolyMatrix<Field>& jac, std::size_t c, const RingPtr<Field>& ring,
                                   SplitMix64& rng) {
  Polynomial<Field> acc(ring);
  for_each_subset(jac.size(), c, [&](const std::vector<std::size_t>& rows) {
    for (auto& m : minors_of_rows(jac, rows, ring->size())) acc += m.scaled(random_unit(ring->field(), rng));
  });
  return acc;
}

}  // namespace detail

/// Critical equations of the objective on X_reg: Lagrange multipliers when the
/// presentation is a complete intersection, otherwise rank conditions on the Jacobian
/// augmented by the gradient row.
template <class Field>
CriticalSystem<Field> build_critical_system(const Problem<Field>& pb, SplitMix64& rng,
                                            const GroebnerOptions& gopts = {}) {
  using Poly = Polynomial<Field>;
  const auto& ring = pb.ring;
  const auto& field = ring->field();
  const std::size_t n = ring->size();
  const std::size_t k = pb.generators.size();
  const int dim = detail::dimension_of(ring, pb.generators, gopts);
  if (dim < 0) throw DomainError("build_critical_system", "variety is empty");
  const std::size_t c = n - static_cast<std::size_t>(dim);
  if (k < c)
    throw DomainError("build_critical_system", "fewer generators (" + std::to_string(k) + ") than the codimension (" +
                                                   std::to_string(c) + "); supply a presentation with at least c "
                                                   "generators so the minors formulation applies");
  const auto& grad = pb.gradient;
  if (!grad.poly.empty() && grad.poly.size() != n) throw DomainError("build_critical_system", "gradient size mismatch");
  for (const auto& d : grad.denominators)
    if (!same_ring(d.ring(), ring)) throw DomainError("build_critical_system", "denominator in a different ring");

  auto jac = jacobian(pb.generators);
  CriticalSystem<Field> sys;
  sys.original_variables = n;

  // rows cleared by the denominators that actually depend on x_i
  auto cleared_row = [&](std::size_t i, std::vector<std::size_t>* used) {
    Poly row = grad.poly.empty() ? Poly(ring) : grad.poly[i];
    std::vector<std::size_t> dep;
    for (std::size_t m = 0; m < grad.denominators.size(); ++m)
      if (!grad.denominators[m].derivative(i).is_zero()) dep.push_back(m);
    Poly clear = Poly::constant(ring, field.one());
    for (std::size_t m : dep) clear *= grad.denominators[m];
    row *= clear;
    for (std::size_t m : dep) {
      Poly term = grad.denominators[m].derivative(i).scaled(grad.exponents[m]);
      for (std::size_t o : dep)
        if (o != m) term *= grad.denominators[o];
      row += term;
    }
    if (used) *used = dep;
    return std::make_pair(row, clear);
  };

  Poly witness = c > 0 ? detail::singular_witness(jac, c, ring, rng) : Poly::constant(ring, field.one());

  if (k == c) {
    sys.formulation = CriticalSystem<Field>::Formulation::Multipliers;
    std::vector<std::string> nus;
    for (std::size_t j = 0; j < k; ++j) nus.push_back("nu" + std::to_string(j + 1));
    auto ext = extend_ring(ring, nus);
    sys.ring = ext;
    sys.multipliers = k;
    for (const auto& g : pb.generators) sys.equations.push_back(g.embed(ext));
    std::vector<bool> implied(grad.denominators.size(), false);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> dep;
      auto [row, clear] = cleared_row(i, &dep);
      Poly eq = row.embed(ext);
      Poly lag(ext);
      for (std::size_t j = 0; j < k; ++j) lag += Poly::variable(ext, n + j) * jac[j][i].embed(ext);
      eq -= clear.embed(ext) * lag;
      sys.equations.push_back(std::move(eq));
      if (dep.size() == 1 && grad.denominators[dep[0]].derivative(i).is_constant()) implied[dep[0]] = true;
    }
    if (c > 0) {
      sys.saturation_targets.push_back(witness.embed(ext));
      sys.implied.push_back(false);
    }
    for (std::size_t m = 0; m < grad.denominators.size(); ++m) {
      sys.saturation_targets.push_back(grad.denominators[m].embed(ext));
      sys.implied.push_back(implied[m]);
    }
    return sys;
  }

  sys.formulation = CriticalSystem<Field>::Formulation::Minors;
  sys.ring = ring;
  sys.equations = pb.generators;
  // gradient row scaled by the product of all denominators (one common factor keeps the rank)
  Poly all = Poly::constant(ring, field.one());
  for (const auto& d : grad.denominators) all *= d;
  std::vector<Poly> grow;
  for (std::size_t i = 0; i < n; ++i) {
    Poly row = grad.poly.empty() ? Poly(ring) : grad.poly[i] * all;
    for (std::size_t m = 0; m < grad.denominators.size(); ++m) {
      Poly term = grad.denominators[m].derivative(i).scaled(grad.exponents[m]);
      for (std::size_t o = 0; o < grad.denominators.size(); ++o)
        if (o != m) term *= grad.denominators[o];
      row += term;
    }
    grow.push_back(std::move(row));
  }
  detail::PolyMatrix<Field> aug{grow};
  aug.insert(aug.end(), jac.begin(), jac.end());
  // (c+1)-minors through the gradient row: rank [grad; Jac] <= c
  detail::for_each_subset(k, c, [&](const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> r{0};
    for (std::size_t x : rows) r.push_back(x + 1);
    for (auto& m : detail::minors_of_rows(aug, r, n)) sys.equations.push_back(std::move(m));
  });
  if (c > 0) {
    sys.saturation_targets.push_back(witness);
    sys.implied.push_back(false);
  }
  for (const auto& d : grad.denominators) {
    sys.saturation_targets.push_back(d);
    sys.implied.push_back(false);
  }
  return sys;
}

/// Number of solutions (with multiplicity) of the equations off every saturation target:
/// dim K[x, w] / (I + <w_t h_t - 1>), one Rabinowitsch variable per target.
template <class Field>
std::size_t count_solutions(const CriticalSystem<Field>& sys, const GroebnerOptions& gopts = {}) {
  using Poly = Polynomial<Field>;
  std::vector<std::string> ws;
  std::vector<const Poly*> targets;
  for (std::size_t t = 0; t < sys.saturation_targets.size(); ++t) {
    if (sys.implied[t]) continue;
    const auto& h = sys.saturation_targets[t];
    if (h.is_zero()) return 0;
    if (h.is_constant()) continue;
    targets.push_back(&h);
    ws.push_back("w" + std::to_string(targets.size()));
  }
  auto ext = extend_ring(sys.ring, ws);
  std::vector<Poly> eqs;
  for (const auto& e : sys.equations) eqs.push_back(e.embed(ext));
  const std::size_t base = sys.ring->size();
  for (std::size_t t = 0; t < targets.size(); ++t)
    eqs.push_back(Poly::variable(ext, base + t) * targets[t]->embed(ext) -
                  Poly::constant(ext, ext->field().one()));
  if (eqs.empty()) eqs.push_back(Poly::zero(ext));
  auto q = quotient_dimension(buchberger(eqs, MonomialOrder::degrevlex(), gopts));
  if (!q) throw PositiveDimensionalError("count_solutions", "saturated critical ideal is not zero-dimensional");
  return *q;
}

/// Reduce linear constraints, build the critical system, count.
template <class Field>
std::size_t critical_count(Problem<Field> pb, SplitMix64& rng, const GroebnerOptions& gopts = {}) {
  pb = detail::substitute_linear(std::move(pb));
  if (pb.empty) return 0;
  return count_solutions(build_critical_system(pb, rng, gopts), gopts);
}

/// Exact-QQ critical system of an explicit objective on X (inspection / export).
inline CriticalSystem<RationalField> build_critical_system(const Variety& X, const Objective& obj,
                                                           std::uint64_t seed = 0) {
  Problem<RationalField> pb;
  pb.ring = X.ring();
  pb.generators = X.generators();
  pb.gradient = detail::make_gradient(obj, X.ring());
  SplitMix64 rng(seed);
  return build_critical_system(pb, rng);
}

}  // namespace optdeg
