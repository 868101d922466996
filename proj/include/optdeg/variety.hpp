#pragma once

#include <string>
#include <vector>

#include "optdeg/groebner.hpp"
#include "optdeg/parse.hpp"
#include "optdeg/sampler.hpp"

namespace optdeg {

namespace detail {

// Dimension checks run modulo this prime; exact rational Buchberger is not worth it here.
inline constexpr std::uint32_t kStructurePrime = 2147483647U;

template <class Field>
std::vector<Polynomial<Field>> to_field(const std::vector<Polynomial<RationalField>>& polys,
                                        const RingPtr<Field>& ring) {
  std::vector<Polynomial<Field>> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(p.map_coefficients(ring));
  return out;
}

template <class Field>
int dimension_of(const RingPtr<Field>& ring, const std::vector<Polynomial<Field>>& gens,
                 const GroebnerOptions& opts = {}) {
  if (gens.empty()) return static_cast<int>(ring->size());
  return krull_dimension(gens, opts);
}

}  // namespace detail

/// X = V(g_1, ..., g_k) in affine space over QQ. An empty generator list is the whole space.
class Variety {
 public:
  using Poly = Polynomial<RationalField>;

  Variety(RingPtr<RationalField> ring, std::vector<Poly> generators)
      : ring_(std::move(ring)), generators_(std::move(generators)) {
    for (const auto& g : generators_)
      if (!same_ring(g.ring(), ring_)) throw DomainError("Variety", "generators live in different rings");
    homogeneous_ = true;
    for (const auto& g : generators_) homogeneous_ = homogeneous_ && g.is_homogeneous();
    std::vector<Poly> nonzero;
    for (const auto& g : generators_)
      if (!g.is_zero()) nonzero.push_back(g);
    generators_ = std::move(nonzero);
    auto fp = with_field(ring_, PrimeField(detail::kStructurePrime));
    int dim = detail::dimension_of(fp, detail::to_field(generators_, fp));
    if (dim < 0) throw DomainError("Variety", "generators define the empty set (unit ideal)");
    codim_ = static_cast<int>(ring_->size()) - dim;
  }

  explicit Variety(std::vector<Poly> generators)
      : Variety(generators.empty() ? throw DomainError("Variety", "empty generator list") : generators.front().ring(),
                generators) {}

  static Variety parse(const std::vector<std::string>& variables, const std::vector<std::string>& generators) {
    auto ring = make_ring<RationalField>(variables, RationalField{});
    return Variety(ring, parse_polys(generators, ring));
  }

  const RingPtr<RationalField>& ring() const noexcept { return ring_; }
  const std::vector<Poly>& generators() const noexcept { return generators_; }
  bool homogeneous() const noexcept { return homogeneous_; }
  int codim() const noexcept { return codim_; }
  int dimension() const noexcept { return static_cast<int>(ring_->size()) - codim_; }
  std::size_t ambient_dimension() const noexcept { return ring_->size(); }

 private:
  RingPtr<RationalField> ring_;
  std::vector<Poly> generators_;
  bool homogeneous_ = true;
  int codim_ = 0;
};

/// What is being optimized on X. Data vectors are explicit here; the degree operations
/// sample their own.
struct Objective {
  enum class Kind { SquaredDistance, LogLinear, Linear };

  Kind kind = Kind::SquaredDistance;
  std::vector<Rational> weights;  // squared distance only; empty means all ones
  std::vector<Rational> data;     // u: one per coordinate, or one per denominator
  std::vector<Polynomial<RationalField>> denominators;

  static Objective squared_distance(std::vector<Rational> u, std::vector<Rational> weights = {}) {
    for (const auto& w : weights)
      if (sgn(w) == 0) throw DomainError("Objective", "weights must be nonzero");
    return Objective{Kind::SquaredDistance, std::move(weights), std::move(u), {}};
  }
  static Objective loglinear(std::vector<Rational> u, std::vector<Polynomial<RationalField>> denominators) {
    if (u.size() != denominators.size())
      throw DomainError("Objective", "one exponent per torus denominator required");
    for (const auto& d : denominators)
      if (d.is_zero()) throw DomainError("Objective", "torus denominators must be nonzero");
    return Objective{Kind::LogLinear, {}, std::move(u), std::move(denominators)};
  }
  static Objective linear(std::vector<Rational> u) { return Objective{Kind::Linear, {}, std::move(u), {}}; }

  static std::vector<Rational> from_data(const DataPoint& dp) {
    std::vector<Rational> out;
    for (long long v : dp.values) out.emplace_back(static_cast<long>(v));
    return out;
  }
};

/// f^h = x_0^{deg f} f(x / x_0) in a ring with the homogenizing variable prepended.
template <class Field>
Polynomial<Field> homogenize(const Polynomial<Field>& f, const RingPtr<Field>& target) {
  if (target->size() != f.ring()->size() + 1) throw DomainError("homogenize", "target needs exactly one extra variable");
  const int deg = f.total_degree();
  std::vector<Term<Field>> terms;
  for (const auto& t : f.terms()) {
    Monomial m;
    m.exp[0] = static_cast<std::uint8_t>(deg - t.monomial.degree);
    for (std::size_t i = 0; i < f.ring()->size(); ++i) m.exp[i + 1] = t.monomial.exp[i];
    m.refresh();
    terms.push_back({m, t.coeff});
  }
  return Polynomial<Field>::from_terms(target, std::move(terms));
}

template <class Field>
RingPtr<Field> homogenizing_ring(const RingPtr<Field>& ring) {
  std::string h = "h0";
  while (ring->index_of(h)) h += "_";
  std::vector<std::string> vars{h};
  vars.insert(vars.end(), ring->variables().begin(), ring->variables().end());
  return make_ring<Field>(vars, ring->field());
}

}  // namespace optdeg
