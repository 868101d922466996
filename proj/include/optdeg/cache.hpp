#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "optdeg/groebner.hpp"
#include "optdeg/parse.hpp"

namespace optdeg {

namespace detail {

template <class Field>
std::string ring_signature(const PolyRing<Field>& ring) {
  std::string s;
  for (const auto& v : ring.variables()) s += v + ",";
  return s + "|" + ring.field().name() + "|" + ring.order().to_string();
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, std::uint64_t key) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx.gb", static_cast<unsigned long long>(key));
  return dir / buf;
}

}  // namespace detail

/// On-disk basis cache: one text file per ideal, keyed by a hash of (ring, canonical
/// generators, order). First line is the ring signature; then one generator per line.
template <class Field>
std::optional<GroebnerBasis<Field>> load_cached_basis(const std::filesystem::path& dir, const RingPtr<Field>& ring,
                                                      std::uint64_t key) {
  std::ifstream in(detail::cache_file(dir, key));
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != detail::ring_signature(*ring)) return std::nullopt;
  std::vector<Polynomial<Field>> gens;
  try {
    while (std::getline(in, line))
      if (!line.empty()) gens.push_back(parse_poly(line, ring));
  } catch (const Error&) {
    return std::nullopt;
  }
  if (gens.empty()) return std::nullopt;
  return GroebnerBasis<Field>(ring, std::move(gens), key, true);
}

template <class Field>
void store_cached_basis(const std::filesystem::path& dir, const GroebnerBasis<Field>& gb) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return;
  auto target = detail::cache_file(dir, gb.source_hash());
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << detail::ring_signature(*gb.ring()) << "\n";
    for (const auto& g : gb.generators()) out << g.to_string() << "\n";
  }
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace optdeg
