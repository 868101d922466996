#pragma once

#include <string>
#include <vector>

#include "optdeg/parse.hpp"
#include "optdeg/polynomial.hpp"
#include "optdeg/sampler.hpp"

namespace optdeg::testing {

inline RingPtr<RationalField> qq_ring(const std::string& vars) {
  return make_ring<RationalField>(split_list(vars), RationalField{});
}

inline RingPtr<PrimeField> fp_ring(const std::string& vars, std::uint32_t p = 1000000007) {
  return make_ring<PrimeField>(split_list(vars), PrimeField(p));
}

template <class Field>
Polynomial<Field> P(const std::string& text, const RingPtr<Field>& ring) {
  return parse_poly(text, ring);
}

/// Random dense-ish polynomial with small integer coefficients.
template <class Field>
Polynomial<Field> random_poly(SplitMix64& rng, const RingPtr<Field>& ring, int max_degree, int terms,
                              long long coeff_bound = 9) {
  std::vector<Term<Field>> out;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int budget = static_cast<int>(rng.uniform(0, max_degree));
    for (std::size_t i = 0; i < ring->size() && budget > 0; ++i) {
      int e = static_cast<int>(rng.uniform(0, budget));
      m.exp[i] = static_cast<std::uint8_t>(e);
      budget -= e;
    }
    m.refresh();
    out.push_back({m, ring->field().from_int(rng.uniform(-coeff_bound, coeff_bound))});
  }
  return Polynomial<Field>::from_terms(ring, std::move(out));
}

}  // namespace optdeg::testing
