#pragma once

// Shared instance corpora: every degree the suite certifies, as (name, runner) pairs, and the
// Morsification instances.

#include <functional>
#include <string>
#include <vector>

#include "optdeg/degrees.hpp"
#include "test_util.hpp"

namespace optdeg::testing {

inline Variety V(const std::string& vars, const std::vector<std::string>& gens) {
  return Variety::parse(split_list(vars), gens);
}

// generic cubic with a node at (2, 3): only degree-2 and degree-3 terms around the node
inline const std::string kNodal =
    "3*(x-2)^2 - 5*(x-2)*(y-3) + 7*(y-3)^2 + 11*(x-2)^3 - 13*(x-2)^2*(y-3) + 17*(x-2)*(y-3)^2 + 19*(y-3)^3";

struct CorpusEntry {
  std::string name;
  std::string vars;
  std::vector<std::string> gens;
  std::function<std::vector<long long>(const Variety&, const DegreeOptions&)> degrees;
  long long expected_ed = -1;  // affine ED degree when the entry is used for ED, else -1
};

inline std::vector<CorpusEntry> degree_corpus() {
  auto ed = [](const Variety& X, const DegreeOptions& o) { return std::vector<long long>{ed_degree(X, {}, o).value}; };
  auto ped = [](const Variety& X, const DegreeOptions& o) {
    return std::vector<long long>{projective_ed_degree(X, {}, o).value};
  };
  auto defect = [](const Variety& X, const DegreeOptions& o) {
    auto r = ed_defect(X, o);
    return std::vector<long long>{r.value, r.parts[0].second, r.parts[1].second};
  };
  auto ml = [](const Variety& X, const DegreeOptions& o) {
    return std::vector<long long>{ml_degree(X, MlFlavor::VeryAffine, o).value};
  };
  auto sml = [](const Variety& X, const DegreeOptions& o) {
    return std::vector<long long>{ml_degree(X, MlFlavor::Statistical, o).value};
  };
  auto lo_sec = [](const Variety& X, const DegreeOptions& o) { return sectional_degrees(X, DegreeKind::LO, o).values; };
  auto polar = [](const Variety& X, const DegreeOptions& o) { return polar_degrees(X, o).values; };
  return {
      {"line", "x,y,z,w", {"x+y+z+w-4"}, ed, 1},
      {"circle", "x,y", {"x^2+y^2-1"}, ed, 2},
      {"cardioid", "x,y", {"(x^2+y^2+x)^2-x^2-y^2"}, ed, 3},
      {"twisted-cubic", "x,y,z", {"y-x^2", "z-x*y", "x*z-y^2"}, ed, 5},
      {"parabola-on-sphere", "x,y,z", {"x^2+y^2+z^2-1", "y-x^2"}, ed, -1},
      {"nodal-plane-curve", "x0,x1,x2", {"x0^2*x2-x1^2*(x1+x2)"}, ped, -1},
      {"whitney-umbrella", "x0,x1,x2,x3", {"x0^2*x1-x2*x3^2"}, defect, -1},
      {"toric-quartic", "x0,x1,x2,x3", {"x0^3*x1-x2*x3^3"}, defect, -1},
      {"quadric-2x2", "x0,x1,x2,x3", {"x0*x3-x1*x2"}, defect, -1},
      {"hardy-weinberg", "p0,p1,p2", {"4*p0*p2-p1^2", "p0+p1+p2-1"}, sml, -1},
      {"generic-conic", "x,y", {"3*x^2-5*x*y+7*y^2+11*x-13*y+17"}, ml, -1},
      {"nodal-cubic", "x,y", {kNodal}, ml, -1},
      {"space-curve-sectional", "x,y,z", {"x^2+y^2+z^2-1", "y-x^2"}, lo_sec, -1},
      {"space-curve-polar", "x,y,z", {"x^2+y^2+z^2-1", "y-x^2"}, polar, -1},
  };
}

inline Variety affine_space(const std::string& vars) { return Variety(qq_ring(vars), {}); }

// f on X with its Morse count, escaping points and real limit points.
struct MorseCase {
  std::string name;
  Variety X;
  std::string f;
  long long morse;
  int escaped;
  std::vector<std::pair<std::vector<double>, int>> limits;  // real limit points with multiplicity
};

inline std::vector<MorseCase> morse_corpus() {
  return {
      {"x+x^2y", affine_space("x,y"), "x+x^2*y", 2, 2, {}},
      {"x^3", affine_space("x"), "x^3", 2, 0, {{{0}, 2}}},
      {"x^2", affine_space("x"), "x^2", 1, 0, {{{0}, 1}}},
      {"cusp", affine_space("x,y"), "x^3-y^2", 2, 0, {{{0, 0}, 2}}},
      {"morse", affine_space("x,y"), "x^2+y^2", 1, 0, {{{0, 0}, 1}}},
      {"double-well", affine_space("x"), "x^4-2*x^2", 3, 0, {{{-1}, 1}, {{0}, 1}, {{1}, 1}}},
      {"D4", affine_space("x,y"), "x^2*y+y^3", 4, 0, {{{0, 0}, 4}}},
      {"circle-height", V("x,y", {"x^2+y^2-1"}), "x", 2, 0, {{{-1, 0}, 1}, {{1, 0}, 1}}},
      {"parabola-height", V("x,y", {"y-x^2"}), "y", 1, 0, {{{0, 0}, 1}}},
      {"escape-times-morse", affine_space("x,y,z"), "x+x^2*y+z^2", 2, 2, {}},
  };
}

}  // namespace optdeg::testing
