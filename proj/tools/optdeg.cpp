// optdeg: command-line front end. One task per invocation; the report on stdout echoes the
// job so that feeding the echo back through --input reproduces the payload.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "optdeg/classcalc.hpp"
#include "optdeg/degrees.hpp"
#include "optdeg/morsify.hpp"
#include "optdeg/polytope.hpp"

using json = nlohmann::json;
using namespace optdeg;

namespace {

constexpr const char* kVersion = "optdeg 0.1.0";

enum Exit { kOk = 0, kFailure = 1, kNonGeneric = 2, kInvalid = 3, kResource = 4 };

struct Job {
  std::vector<std::string> variables;
  std::vector<std::string> generators;
  std::string task;
  json params = json::object();
  std::uint64_t seed = 1;
  std::optional<std::uint32_t> prime;
  bool certify = false;
  bool rational = false;
};

const std::map<std::string, std::set<std::string>>& task_params() {
  static const std::map<std::string, std::set<std::string>> table{
      {"ed", {"weights"}},
      {"ped", {"weights"}},
      {"defect", {}},
      {"ml", {"flavor"}},
      {"lo", {}},
      {"sectional", {"kind"}},
      {"polar", {}},
      {"eu", {"point"}},
      {"involution", {"poly"}},
      {"bs-transform", {"values", "n", "d", "inverse"}},
      {"chern", {"values", "n", "d", "inverse", "flavor"}},
      {"cone-eu", {"values"}},
      {"ed-bound", {"n", "degrees", "codim"}},
      {"mixedvol", {"polytopes"}},
      {"sparse-ml", {"supports", "n"}},
      {"morsify", {"f", "t0", "ratio", "steps", "tolerance", "divergence", "cluster_radius"}},
      {"milnor", {"f"}},
  };
  return table;
}

[[noreturn]] void invalid(const std::string& what) { throw ParseError("cli", what); }

// ---- input conversion -------------------------------------------------------------------

Rational to_rational(const json& j, const char* key) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) invalid(std::string(key) + ": expected an integer or a rational string");
  try {
    Rational q(j.get<std::string>());
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  } catch (const std::invalid_argument&) {
    invalid(std::string(key) + ": malformed rational '" + j.get<std::string>() + "'");
  }
}

BigInt to_bigint(const json& j, const char* key) {
  Rational q = to_rational(j, key);
  if (q.get_den() != 1) invalid(std::string(key) + ": expected an integer");
  return q.get_num();
}

long long to_int(const json& j, const char* key) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    BigInt z = to_bigint(j, key);
    if (!z.fits_slong_p()) invalid(std::string(key) + ": integer out of range");
    return z.get_si();
  }
  invalid(std::string(key) + ": expected an integer");
}

double to_double(const json& j, const char* key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return to_rational(j, key).get_d();
  invalid(std::string(key) + ": expected a number");
}

const json& array_param(const json& params, const char* key) {
  const json& a = params.at(key);
  if (!a.is_array()) invalid(std::string(key) + ": expected a list");
  return a;
}

std::vector<Rational> rational_list(const json& params, const char* key) {
  std::vector<Rational> out;
  for (const auto& x : array_param(params, key)) out.push_back(to_rational(x, key));
  return out;
}

std::vector<BigInt> bigint_list(const json& params, const char* key) {
  std::vector<BigInt> out;
  for (const auto& x : array_param(params, key)) out.push_back(to_bigint(x, key));
  return out;
}

std::vector<LatticePoint> point_set(const json& j, const char* key) {
  if (!j.is_array() || j.empty()) invalid(std::string(key) + ": expected a non-empty list of lattice points");
  std::vector<LatticePoint> out;
  for (const auto& p : j) {
    if (!p.is_array()) invalid(std::string(key) + ": lattice points are lists of integers");
    LatticePoint q;
    for (const auto& x : p) q.push_back(to_int(x, key));
    if (!out.empty() && q.size() != out.front().size()) invalid(std::string(key) + ": points of different lengths");
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<std::vector<LatticePoint>> point_sets(const json& params, const char* key) {
  std::vector<std::vector<LatticePoint>> out;
  for (const auto& s : array_param(params, key)) out.push_back(point_set(s, key));
  return out;
}

std::vector<std::string> string_list(const json& j, const char* key) {
  if (!j.is_array()) invalid(std::string(key) + ": expected a list of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) invalid(std::string(key) + ": expected a list of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

// JSON form of a comma list: integers stay numbers, anything else stays a string.
json scalar_of(const std::string& s) {
  if (!s.empty() && s.find_first_not_of("-0123456789") == std::string::npos) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  return s;
}

json list_of(const std::string& text) {
  json out = json::array();
  for (const auto& s : split_list(text)) out.push_back(scalar_of(s));
  return out;
}

json parse_json_flag(const std::string& text, const char* key) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    invalid(std::string(key) + ": " + e.what());
  }
}

Job job_from_json(const json& doc) {
  if (!doc.is_object()) invalid("input document must be a JSON object");
  static const std::set<std::string> known{"ring", "generators", "task", "params", "seed", "prime", "certify", "rational"};
  for (const auto& [k, v] : doc.items())
    if (!known.count(k)) invalid("unknown input field '" + k + "'");
  Job job;
  if (doc.contains("ring")) {
    const auto& ring = doc["ring"];
    if (!ring.is_object()) invalid("ring: expected an object");
    if (ring.contains("variables")) job.variables = string_list(ring["variables"], "ring.variables");
    if (ring.contains("field")) {
      const auto& f = ring["field"];
      if (f.is_string() && f == "QQ") {
      } else if (f.is_object() && f.size() == 1 && f.contains("Fp")) {
        job.prime = static_cast<std::uint32_t>(to_int(f["Fp"], "ring.field.Fp"));
      } else {
        invalid("ring.field: expected \"QQ\" or {\"Fp\": p}");
      }
    }
  }
  if (doc.contains("generators")) job.generators = string_list(doc["generators"], "generators");
  if (doc.contains("task")) {
    if (!doc["task"].is_string()) invalid("task: expected a string");
    job.task = doc["task"];
  }
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) invalid("params: expected an object");
    job.params = doc["params"];
  }
  if (doc.contains("seed")) job.seed = static_cast<std::uint64_t>(to_int(doc["seed"], "seed"));
  if (doc.contains("prime")) job.prime = static_cast<std::uint32_t>(to_int(doc["prime"], "prime"));
  if (doc.contains("certify")) job.certify = doc["certify"].get<bool>();
  if (doc.contains("rational")) job.rational = doc["rational"].get<bool>();
  return job;
}

json job_to_json(const Job& job) {
  json j;
  j["ring"] = {{"variables", job.variables}, {"field", "QQ"}};
  j["generators"] = job.generators;
  j["task"] = job.task;
  j["params"] = job.params;
  j["seed"] = job.seed;
  if (job.prime) j["prime"] = *job.prime;
  j["certify"] = job.certify;
  j["rational"] = job.rational;
  return j;
}

void validate(const Job& job) {
  const auto& table = task_params();
  auto it = table.find(job.task);
  if (it == table.end()) invalid(job.task.empty() ? "no task given" : "unknown task '" + job.task + "'");
  for (const auto& [k, v] : job.params.items())
    if (!it->second.count(k)) invalid("task '" + job.task + "' does not take parameter '" + k + "'");
}

// ---- output ------------------------------------------------------------------------------

json number_of(const BigInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json number_of(const Rational& q) {
  if (q.get_den() == 1) return number_of(BigInt(q.get_num()));
  return q.get_str();
}

// 12 significant digits, no negative zero: stable across runs and platforms.
double printable(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double y = std::strtod(buf, nullptr);
  return y == 0 ? 0.0 : y;
}

json provenance_of(const Provenance& p, bool timings) {
  json j{{"seeds", p.seeds}, {"primes", p.primes}, {"certified", p.certified}, {"rational_checked", p.rational_checked}};
  if (timings) j["wall_seconds"] = p.wall_seconds;
  return j;
}

json degree_payload(const DegreeReport& r, bool timings) {
  json j{{"value", r.value}, {"provenance", provenance_of(r.provenance, timings)}};
  if (!r.parts.empty()) {
    json parts = json::object();
    for (const auto& [k, v] : r.parts) parts[k] = v;
    j["parts"] = parts;
  }
  return j;
}

json vector_payload(const SectionalVector& s, bool timings) {
  return {{"values", s.values}, {"kind", to_string(s.kind)}, {"provenance", provenance_of(s.provenance, timings)}};
}

json bigints(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(number_of(x));
  return a;
}

json limit_payload(const LimitSet& L, bool timings) {
  json clusters = json::array();
  for (const auto& c : L.clusters) {
    json pt = json::array();
    for (const auto& z : c.point.coords) pt.push_back({printable(z.real()), printable(z.imag())});
    clusters.push_back({{"point", pt}, {"multiplicity", c.multiplicity}});
  }
  json schedule = json::array();
  for (double t : L.schedule) schedule.push_back(printable(t));
  return {{"clusters", clusters},
          {"escaped", L.escaped_count},
          {"morse_count", L.morse_count},
          {"schedule", schedule},
          {"provenance", provenance_of(L.provenance, timings)}};
}

// ---- dispatch ----------------------------------------------------------------------------

Variety variety_of(const Job& job) {
  if (job.variables.empty()) invalid("task '" + job.task + "' needs --vars");
  return Variety::parse(job.variables, job.generators);
}

Polynomial<RationalField> objective_of(const Job& job, const Variety& X) {
  if (!job.params.contains("f")) invalid("task '" + job.task + "' needs --f");
  if (!job.params["f"].is_string()) invalid("f: expected a polynomial string");
  return parse_poly(job.params["f"].get<std::string>(), X.ring());
}

EdWeights weights_of(const Job& job) {
  if (!job.params.contains("weights")) return EdWeights::unit();
  const auto& w = job.params["weights"];
  if (w == "unit") return EdWeights::unit();
  if (w == "generic") return EdWeights::generic();
  if (w.is_array()) return EdWeights::given(rational_list(job.params, "weights"));
  invalid("weights: expected \"unit\", \"generic\" or a list");
}

std::string string_param(const Job& job, const char* key, const std::string& fallback) {
  if (!job.params.contains(key)) return fallback;
  if (!job.params[key].is_string()) invalid(std::string(key) + ": expected a string");
  return job.params[key];
}

bool bool_param(const Job& job, const char* key) {
  if (!job.params.contains(key)) return false;
  if (!job.params[key].is_boolean()) invalid(std::string(key) + ": expected true or false");
  return job.params[key];
}

DegreePolynomial degree_polynomial_of(const Job& job) {
  if (!job.params.contains("values")) invalid("task '" + job.task + "' needs --values");
  auto v = bigint_list(job.params, "values");
  const int d = job.params.contains("d") ? static_cast<int>(to_int(job.params["d"], "d")) : static_cast<int>(v.size()) - 1;
  const int n = job.params.contains("n") ? static_cast<int>(to_int(job.params["n"], "n")) : d;
  return DegreePolynomial(n, d, std::move(v));
}

json run_task(const Job& job, const DegreeOptions& opts, bool timings) {
  const std::string& t = job.task;
  if (t == "ed") return degree_payload(ed_degree(variety_of(job), weights_of(job), opts), timings);
  if (t == "ped") return degree_payload(projective_ed_degree(variety_of(job), weights_of(job), opts), timings);
  if (t == "defect") return degree_payload(ed_defect(variety_of(job), opts), timings);
  if (t == "ml") {
    const auto flavor = string_param(job, "flavor", "very-affine");
    if (flavor != "very-affine" && flavor != "statistical") invalid("flavor: expected very-affine or statistical");
    return degree_payload(
        ml_degree(variety_of(job), flavor == "statistical" ? MlFlavor::Statistical : MlFlavor::VeryAffine, opts),
        timings);
  }
  if (t == "lo") return degree_payload(lo_degree(variety_of(job), opts), timings);
  if (t == "sectional") {
    const auto kind = string_param(job, "kind", "LO");
    DegreeKind k;
    if (kind == "LO") {
      k = DegreeKind::LO;
    } else if (kind == "ED") {
      k = DegreeKind::ED;
    } else if (kind == "ML") {
      k = DegreeKind::ML;
    } else {
      invalid("kind: expected LO, ED or ML");
    }
    return vector_payload(sectional_degrees(variety_of(job), k, opts), timings);
  }
  if (t == "polar") return vector_payload(polar_degrees(variety_of(job), opts), timings);
  if (t == "eu") {
    if (!job.params.contains("point")) invalid("task 'eu' needs --point");
    auto r = euler_obstruction_at_point(variety_of(job), rational_list(job.params, "point"), opts);
    return {{"value", r.value}, {"removal", r.removal}, {"provenance", provenance_of(r.provenance, timings)}};
  }
  if (t == "involution") {
    if (!job.params.contains("poly")) invalid("task 'involution' needs --poly");
    auto p = aluffi_involution(UniPolynomial(rational_list(job.params, "poly")));
    json c = json::array();
    for (const auto& x : p.coeffs()) c.push_back(number_of(x));
    return {{"values", c}};
  }
  if (t == "bs-transform") {
    auto P = degree_polynomial_of(job);
    auto Q = bool_param(job, "inverse") ? sectional_from_bidegrees(P) : bidegrees_from_sectional(P);
    return {{"values", bigints(Q.v)}, {"n", Q.n}, {"d", Q.d}};
  }
  if (t == "chern") {
    const auto flavor = string_param(job, "flavor", "lo");
    if (flavor == "ml") {
      if (!job.params.contains("values")) invalid("task 'chern' needs --values");
      return {{"values", bigints(chern_mather_from_ml_bidegrees(bigint_list(job.params, "values")).a)}};
    }
    if (flavor != "lo") invalid("flavor: expected lo or ml");
    auto P = degree_polynomial_of(job);
    return {{"values", bigints(chern_mather_from_lo_bidegrees(P.v, P.n, P.d, bool_param(job, "inverse")).a)}};
  }
  if (t == "cone-eu") {
    if (job.params.contains("values")) return {{"value", number_of(cone_point_euler_obstruction(bigint_list(job.params, "values")))}};
    auto X = variety_of(job);
    if (!X.homogeneous()) throw DomainError("cone_point_euler_obstruction", "variety is not an affine cone");
    auto s = sectional_degrees(X, DegreeKind::LO, opts);
    std::vector<BigInt> b;
    for (long long x : s.values) b.emplace_back(static_cast<long>(x));
    return {{"value", number_of(cone_point_euler_obstruction(b))},
            {"bidegrees", s.values},
            {"provenance", provenance_of(s.provenance, timings)}};
  }
  if (t == "ed-bound") {
    std::vector<int> degrees;
    int n, c;
    if (job.params.contains("degrees")) {
      for (const auto& x : array_param(job.params, "degrees")) degrees.push_back(static_cast<int>(to_int(x, "degrees")));
      if (!job.params.contains("n")) invalid("task 'ed-bound' with --degrees needs --n");
      n = static_cast<int>(to_int(job.params["n"], "n"));
      c = job.params.contains("codim") ? static_cast<int>(to_int(job.params["codim"], "codim"))
                                       : static_cast<int>(degrees.size());
    } else {
      auto X = variety_of(job);
      for (const auto& g : X.generators()) degrees.push_back(g.total_degree());
      n = static_cast<int>(X.ambient_dimension());
      c = job.params.contains("codim") ? static_cast<int>(to_int(job.params["codim"], "codim"))
                                       : std::min(X.codim(), static_cast<int>(degrees.size()));
    }
    return {{"value", number_of(ed_upper_bound(n, degrees, c))}};
  }
  if (t == "mixedvol") {
    std::vector<LatticePolytope> K;
    if (job.params.contains("polytopes")) {
      for (auto& pts : point_sets(job.params, "polytopes")) {
        const std::size_t m = pts.front().size();
        K.emplace_back(m, std::move(pts));
      }
    } else {
      auto X = variety_of(job);
      for (const auto& g : X.generators()) K.push_back(newton_polytope(g));
    }
    return {{"value", number_of(mixed_volume(K))}};
  }
  if (t == "sparse-ml") {
    if (job.params.contains("supports")) {
      auto A = point_sets(job.params, "supports");
      const std::size_t n = job.params.contains("n") ? static_cast<std::size_t>(to_int(job.params["n"], "n"))
                                                     : A.front().front().size();
      return degree_payload(sparse_ml_degree(SparseSupport::generic(std::move(A), job.seed), n, opts), timings);
    }
    auto X = variety_of(job);
    return degree_payload(sparse_ml_degree(SparseSupport::from_polynomials(X.generators()), X.ambient_dimension(), opts),
                          timings);
  }
  if (t == "morsify") {
    auto X = variety_of(job);
    auto f = objective_of(job, X);
    MorseSchedule s;
    if (job.params.contains("t0")) s.t0 = to_rational(job.params["t0"], "t0");
    if (job.params.contains("ratio")) s.ratio = to_rational(job.params["ratio"], "ratio");
    if (job.params.contains("steps")) s.steps = static_cast<int>(to_int(job.params["steps"], "steps"));
    if (job.params.contains("tolerance")) s.tolerance = to_double(job.params["tolerance"], "tolerance");
    if (job.params.contains("divergence")) s.divergence = to_double(job.params["divergence"], "divergence");
    if (job.params.contains("cluster_radius")) s.cluster_radius = to_double(job.params["cluster_radius"], "cluster_radius");
    return limit_payload(morsify_limit(X, f, job.seed, s, opts), timings);
  }
  if (t == "milnor") {
    auto X = variety_of(job);
    return degree_payload(milnor_number_at_origin(objective_of(job, X), opts), timings);
  }
  invalid("unknown task '" + t + "'");
}

void print_text(std::ostream& out, const json& report) {
  out << "task: " << report["task"].get<std::string>() << "\n";
  for (const auto& [k, v] : report.items()) {
    if (k == "provenance" || k == "task" || k == "job" || k == "version") continue;
    out << k << ": " << v.dump() << "\n";
  }
  if (report.contains("provenance")) {
    const auto& p = report["provenance"];
    out << "certified: " << (p["certified"].get<bool>() ? "yes" : "no") << "\n";
    out << "primes: " << p["primes"].dump() << "\n";
  }
  out << "version: " << report["version"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic degrees of polynomial optimization problems", "optdeg"};
  app.set_version_flag("--version", kVersion);

  std::string task, input, format = "json", cache_dir;
  std::optional<std::string> vars, gens, weights, flavor, kind, point, poly, values, degrees, polytopes, supports, f, t0,
      ratio;
  std::optional<long long> n, d, codim, steps;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> prime;
  std::optional<double> tolerance, divergence, cluster_radius;
  bool certify = false, rational = false, inverse = false, timings = false;

  app.add_option("task", task, "ed, ped, defect, ml, lo, sectional, polar, eu, involution, bs-transform, chern, "
                               "cone-eu, ed-bound, mixedvol, sparse-ml, morsify, milnor");
  app.add_option("--input", input, "JSON job document; flags override its fields");
  app.add_option("--vars", vars, "comma-separated variable names");
  app.add_option("--gens", gens, "comma-separated generators");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--prime", prime, "prime for the first run");
  app.add_flag("--certify", certify, "two (seed, prime) runs, a third on disagreement");
  app.add_flag("--rational", rational, "repeat the first run over QQ");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", cache_dir, "Groebner basis cache (default $OPTDEG_CACHE)");
  app.add_flag("--timings", timings, "include wall times and cache hits (not reproducible)");
  app.add_option("--weights", weights, "ed/ped: unit, generic or a comma list");
  app.add_option("--flavor", flavor, "ml: very-affine|statistical; chern: lo|ml");
  app.add_option("--kind", kind, "sectional: LO, ED or ML");
  app.add_option("--point", point, "eu: comma-separated rational point");
  app.add_option("--poly", poly, "involution: coefficients, constant term first");
  app.add_option("--values", values, "bs-transform, chern, cone-eu: integer vector");
  app.add_option("--n", n, "ambient dimension");
  app.add_option("--d", d, "dimension");
  app.add_flag("--inverse", inverse, "bs-transform: bidegrees to sectional; chern: Chern-Mather to bidegrees");
  app.add_option("--degrees", degrees, "ed-bound: generator degrees");
  app.add_option("--codim", codim, "ed-bound: codimension");
  app.add_option("--polytopes", polytopes, "mixedvol: JSON list of point lists");
  app.add_option("--supports", supports, "sparse-ml: JSON list of exponent lists");
  app.add_option("--f", f, "morsify, milnor: the function");
  app.add_option("--t0", t0, "morsify: first t");
  app.add_option("--ratio", ratio, "morsify: t_{k+1} / t_k");
  app.add_option("--steps", steps, "morsify: number of t values");
  app.add_option("--tolerance", tolerance, "morsify: residual tolerance");
  app.add_option("--divergence", divergence, "morsify: escape threshold");
  app.add_option("--cluster-radius", cluster_radius, "morsify: limit clustering radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    Job job;
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) invalid("cannot read " + input);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::parse_error& e) {
        invalid(input + ": " + e.what());
      }
      job = job_from_json(doc);
    }
    if (!task.empty()) job.task = task;
    if (vars) job.variables = split_list(*vars);
    if (gens) job.generators = split_list(*gens);
    if (seed) job.seed = *seed;
    if (prime) job.prime = *prime;
    if (certify) job.certify = true;
    if (rational) job.rational = true;
    auto& P = job.params;
    if (weights) P["weights"] = (*weights == "unit" || *weights == "generic") ? json(*weights) : list_of(*weights);
    if (flavor) P["flavor"] = *flavor;
    if (kind) P["kind"] = *kind;
    if (point) P["point"] = list_of(*point);
    if (poly) P["poly"] = list_of(*poly);
    if (values) P["values"] = list_of(*values);
    if (n) P["n"] = *n;
    if (d) P["d"] = *d;
    if (inverse) P["inverse"] = true;
    if (degrees) P["degrees"] = list_of(*degrees);
    if (codim) P["codim"] = *codim;
    if (polytopes) P["polytopes"] = parse_json_flag(*polytopes, "polytopes");
    if (supports) P["supports"] = parse_json_flag(*supports, "supports");
    if (f) P["f"] = *f;
    if (t0) P["t0"] = scalar_of(*t0);
    if (ratio) P["ratio"] = scalar_of(*ratio);
    if (steps) P["steps"] = *steps;
    if (tolerance) P["tolerance"] = *tolerance;
    if (divergence) P["divergence"] = *divergence;
    if (cluster_radius) P["cluster_radius"] = *cluster_radius;
    validate(job);

    DegreeOptions opts;
    opts.seed = job.seed;
    opts.prime = job.prime;
    opts.certify = job.certify;
    opts.rational_pass = job.rational;
    if (!cache_dir.empty()) opts.groebner.cache_dir = cache_dir;

    const std::size_t hits_before = detail::cache_hits();
    json result = run_task(job, opts, timings);
    if (timings && result.contains("provenance"))
      result["provenance"]["cache_hits"] = detail::cache_hits() - hits_before;

    json report = result;
    report["task"] = job.task;
    report["job"] = job_to_json(job);
    report["version"] = kVersion;
    if (format == "text") {
      print_text(std::cout, report);
    } else {
      std::cout << report.dump(2) << "\n";
    }
    return kOk;
  } catch (const NonGenericDataError& e) {
    std::cerr << "optdeg: " << e.what() << "\n";
    return kNonGeneric;
  } catch (const ResourceLimitError& e) {
    std::cerr << "optdeg: " << e.what() << "\n";
    return kResource;
  } catch (const ParseError& e) {
    std::cerr << "optdeg: " << e.what() << "\n";
    return kInvalid;
  } catch (const DomainError& e) {
    std::cerr << "optdeg: " << e.what() << "\n";
    return kInvalid;
  } catch (const json::exception& e) {
    std::cerr << "optdeg: cli: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "optdeg: " << e.what() << "\n";
    return kFailure;
  }
}
