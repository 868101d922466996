#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "optdeg/errors.hpp"
#include "optdeg/polynomial.hpp"

namespace optdeg {

namespace detail {

// Process-wide count of bases served from the on-disk cache.
inline std::atomic<std::size_t>& cache_hits() {
  static std::atomic<std::size_t> hits{0};
  return hits;
}

}  // namespace detail

struct ResourceLimits {
  std::size_t max_basis_elements = 50'000;
  int max_degree = 60;
};

struct GroebnerOptions {
  ResourceLimits limits;
  /// Basis cache directory; defaults to $OPTDEG_CACHE when set.
  std::optional<std::filesystem::path> cache_dir = default_cache_dir();

  static std::optional<std::filesystem::path> default_cache_dir() {
    if (const char* env = std::getenv("OPTDEG_CACHE"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
  }
};

/// Reduced Groebner basis: monic generators, no leading monomial divides another,
/// every generator fully reduced against the others. Sorted by leading monomial,
/// smallest first.
template <class Field>
class GroebnerBasis {
 public:
  using Poly = Polynomial<Field>;

  GroebnerBasis(RingPtr<Field> ring, std::vector<Poly> generators, std::uint64_t source_hash, bool from_cache = false)
      : ring_(std::move(ring)), generators_(std::move(generators)), source_hash_(source_hash), from_cache_(from_cache) {}

  const RingPtr<Field>& ring() const noexcept { return ring_; }
  const MonomialOrder& order() const noexcept { return ring_->order(); }
  const std::vector<Poly>& generators() const noexcept { return generators_; }
  std::uint64_t source_hash() const noexcept { return source_hash_; }
  bool from_cache() const noexcept { return from_cache_; }
  std::size_t size() const noexcept { return generators_.size(); }

  bool is_unit() const noexcept { return generators_.size() == 1 && generators_[0].is_constant(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    out.reserve(generators_.size());
    for (const auto& g : generators_) out.push_back(g.leading_monomial());
    return out;
  }

  bool contains(const Poly& f) const;

 private:
  RingPtr<Field> ring_;
  std::vector<Poly> generators_;
  std::uint64_t source_hash_;
  bool from_cache_;
};

namespace detail {

template <class Field>
using TermVec = std::vector<Term<Field>>;

/// out = a[from..] - c * m * b   (all sorted descending; b's terms times m stay sorted)
template <class Field>
void sub_scaled_shifted(const Field& f, const MonomialOrder& order, const TermVec<Field>& a, std::size_t from,
                        const typename Field::Element& c, const Monomial& m, const TermVec<Field>& b,
                        std::size_t b_from, TermVec<Field>& out) {
  out.clear();
  out.reserve(a.size() - from + b.size() - b_from);
  std::size_t i = from, j = b_from;
  while (i < a.size() && j < b.size()) {
    Monomial bm = b[j].monomial * m;
    int cmp = order.compare(a[i].monomial, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({bm, f.neg(f.mul(c, b[j].coeff))});
      ++j;
    } else {
      auto v = f.sub(a[i].coeff, f.mul(c, b[j].coeff));
      if (!f.is_zero(v)) out.push_back({a[i].monomial, v});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].monomial * m, f.neg(f.mul(c, b[j].coeff))});
}

inline std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  h ^= 0xFF;
  h *= 1099511628211ULL;
  return h;
}

template <class Field>
std::uint64_t ideal_hash(const RingPtr<Field>& ring, const std::vector<Polynomial<Field>>& gens) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& v : ring->variables()) h = fnv1a(h, v);
  h = fnv1a(h, ring->field().name());
  h = fnv1a(h, ring->order().to_string());
  for (const auto& g : gens) h = fnv1a(h, g.to_string());
  return h;
}

/// Working state of one Buchberger run.
template <class Field>
class Buchberger {
 public:
  using Element = typename Field::Element;
  using Poly = Polynomial<Field>;

  Buchberger(RingPtr<Field> ring, const ResourceLimits& limits)
      : ring_(std::move(ring)), field_(ring_->field()), order_(ring_->order()), limits_(limits) {}

  std::vector<Poly> run(const std::vector<Poly>& input) {
    for (const auto& f : input) {
      if (f.is_zero()) continue;
      TermVec<Field> h = f.terms();
      int sugar = f.total_degree();
      reduce(h, sugar);
      if (h.empty()) continue;
      if (h.front().monomial.is_one()) return unit();
      make_monic(h);
      insert(std::move(h), sugar);
    }
    while (!pairs_.empty()) {
      Pair p = select();
      if (static_cast<int>(p.lcm.degree) > limits_.max_degree)
        throw ResourceLimitError("buchberger", "desk-scale exceeded: S-pair degree " + std::to_string(p.lcm.degree) +
                                                   " > " + std::to_string(limits_.max_degree));
      TermVec<Field> h = spoly(p);
      int sugar = p.sugar;
      reduce(h, sugar);
      if (h.empty()) continue;
      if (h.front().monomial.is_one()) return unit();
      make_monic(h);
      insert(std::move(h), sugar);
    }
    return finish();
  }

 private:
  struct Entry {
    TermVec<Field> terms;
    Monomial lm;
    int sugar;
    bool active;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
  };

  std::vector<Poly> unit() const { return {Poly::constant(ring_, field_.one())}; }

  void make_monic(TermVec<Field>& h) const {
    if (field_.is_one(h.front().coeff)) return;
    Element inv = field_.inv(h.front().coeff);
    for (auto& t : h) t.coeff = field_.mul(t.coeff, inv);
  }

  const Entry* find_reducer(const Monomial& m) const {
    for (std::size_t k : active_)
      if (divides(basis_[k].lm, m)) return &basis_[k];
    return nullptr;
  }

  /// Full reduction of h against the active basis (top and tail).
  void reduce(TermVec<Field>& h, int& sugar) {
    TermVec<Field> remainder;
    TermVec<Field> scratch;
    std::size_t pos = 0;
    while (pos < h.size()) {
      const Monomial& m = h[pos].monomial;
      const Entry* g = find_reducer(m);
      if (!g) {
        remainder.push_back(h[pos]);
        ++pos;
        continue;
      }
      Monomial q = quotient(m, g->lm);
      Element c = h[pos].coeff;  // reducers are monic
      sugar = std::max(sugar, static_cast<int>(q.degree) + g->sugar);
      // leading terms cancel: skip them on both sides
      sub_scaled_shifted(field_, order_, h, pos + 1, c, q, g->terms, 1, scratch);
      h.swap(scratch);
      pos = 0;
    }
    h.swap(remainder);
  }

  TermVec<Field> spoly(const Pair& p) const {
    const Entry& a = basis_[p.i];
    const Entry& b = basis_[p.j];
    Monomial qa = quotient(p.lcm, a.lm);
    Monomial qb = quotient(p.lcm, b.lm);
    TermVec<Field> ta;
    ta.reserve(a.terms.size());
    for (std::size_t k = 1; k < a.terms.size(); ++k) ta.push_back({a.terms[k].monomial * qa, a.terms[k].coeff});
    TermVec<Field> out;
    sub_scaled_shifted(field_, order_, ta, 0, field_.one(), qb, b.terms, 1, out);
    return out;
  }

  Pair select() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.sugar < b.sugar || (a.sugar == b.sugar && order_.compare(a.lcm, b.lcm) < 0)) best = k;
    }
    Pair p = pairs_[best];
    pairs_[best] = pairs_.back();
    pairs_.pop_back();
    return p;
  }

  Pair make_pair(std::size_t i, std::size_t j) const {
    Monomial l = lcm(basis_[i].lm, basis_[j].lm);
    int si = basis_[i].sugar + (l.degree - basis_[i].lm.degree);
    int sj = basis_[j].sugar + (l.degree - basis_[j].lm.degree);
    return Pair{i, j, l, std::max(si, sj)};
  }

  /// Gebauer-Moeller update with the product criterion.
  void insert(TermVec<Field> h, int sugar) {
    if (basis_.size() >= limits_.max_basis_elements)
      throw ResourceLimitError("buchberger", "desk-scale exceeded: more than " +
                                                 std::to_string(limits_.max_basis_elements) + " basis elements");
    if (static_cast<int>(h.front().monomial.degree) > limits_.max_degree)
      throw ResourceLimitError("buchberger", "desk-scale exceeded: basis element of degree " +
                                                 std::to_string(h.front().monomial.degree));
    const std::size_t hi = basis_.size();
    Monomial hlm = h.front().monomial;
    basis_.push_back(Entry{std::move(h), hlm, sugar, true});

    std::vector<Pair> candidates;
    candidates.reserve(active_.size());
    for (std::size_t g : active_) candidates.push_back(make_pair(g, hi));

    std::vector<char> keep(candidates.size(), 1);
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      if (coprime(basis_[candidates[a].i].lm, hlm)) continue;
      for (std::size_t b = 0; b < candidates.size(); ++b) {
        if (a == b || !keep[b]) continue;
        if (divides(candidates[b].lcm, candidates[a].lcm)) {
          // drop a when a strictly larger multiple exists; for equal lcms keep one
          if (!(candidates[b].lcm == candidates[a].lcm) || b < a) {
            keep[a] = 0;
            break;
          }
        }
      }
    }
    // chain criterion on old pairs
    std::vector<Pair> next;
    next.reserve(pairs_.size() + candidates.size());
    for (const Pair& p : pairs_) {
      if (divides(hlm, p.lcm)) {
        Monomial l1 = lcm(basis_[p.i].lm, hlm);
        Monomial l2 = lcm(basis_[p.j].lm, hlm);
        if (!(l1 == p.lcm) && !(l2 == p.lcm)) continue;
      }
      next.push_back(p);
    }
    for (std::size_t a = 0; a < candidates.size(); ++a)
      if (keep[a] && !coprime(basis_[candidates[a].i].lm, hlm)) next.push_back(candidates[a]);
    pairs_.swap(next);

    std::vector<std::size_t> still;
    still.reserve(active_.size() + 1);
    for (std::size_t g : active_) {
      if (divides(hlm, basis_[g].lm))
        basis_[g].active = false;
      else
        still.push_back(g);
    }
    still.push_back(hi);
    active_.swap(still);
  }

  std::vector<Poly> finish() {
    std::vector<std::size_t> idx = active_;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return order_.compare(basis_[a].lm, basis_[b].lm) < 0; });
    std::vector<Poly> out;
    out.reserve(idx.size());
    for (std::size_t k : idx) {
      // tail-reduce against the other minimal generators
      Entry& e = basis_[k];
      TermVec<Field> tail(e.terms.begin() + 1, e.terms.end());
      int s = e.sugar;
      std::vector<std::size_t> saved = active_;
      active_.clear();
      for (std::size_t o : idx)
        if (o != k) active_.push_back(o);
      reduce(tail, s);
      active_ = saved;
      TermVec<Field> full;
      full.reserve(tail.size() + 1);
      full.push_back(e.terms.front());
      full.insert(full.end(), tail.begin(), tail.end());
      out.push_back(Poly::from_sorted_terms(ring_, std::move(full)));
    }
    return out;
  }

  RingPtr<Field> ring_;
  const Field& field_;
  const MonomialOrder& order_;
  ResourceLimits limits_;
  std::vector<Entry> basis_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace detail

template <class Field>
std::optional<GroebnerBasis<Field>> load_cached_basis(const std::filesystem::path& dir, const RingPtr<Field>& ring,
                                                      std::uint64_t key);
template <class Field>
void store_cached_basis(const std::filesystem::path& dir, const GroebnerBasis<Field>& gb);

/// Reduced Groebner basis of `generators` with respect to `order`.
template <class Field>
GroebnerBasis<Field> buchberger(const std::vector<Polynomial<Field>>& generators, const MonomialOrder& order,
                                const GroebnerOptions& options = {}) {
  if (generators.empty()) throw DomainError("buchberger", "empty generator list");
  const auto& base = generators.front().ring();
  for (const auto& g : generators)
    if (!same_ring(g.ring(), base)) throw DomainError("buchberger", "generators live in different rings");
  RingPtr<Field> ring = base->order() == order ? base : with_order(base, order);
  std::vector<Polynomial<Field>> input;
  input.reserve(generators.size());
  for (const auto& g : generators) input.push_back(ring == base ? g : g.in_ring(ring));

  std::uint64_t key = detail::ideal_hash(ring, input);
  if (options.cache_dir) {
    if (auto cached = load_cached_basis<Field>(*options.cache_dir, ring, key)) {
      ++detail::cache_hits();
      return *cached;
    }
  }
  detail::Buchberger<Field> engine(ring, options.limits);
  GroebnerBasis<Field> gb(ring, engine.run(input), key);
  if (options.cache_dir) store_cached_basis(*options.cache_dir, gb);
  return gb;
}

template <class Field>
GroebnerBasis<Field> buchberger(const std::vector<Polynomial<Field>>& generators, const GroebnerOptions& options = {}) {
  if (generators.empty()) throw DomainError("buchberger", "empty generator list");
  return buchberger(generators, generators.front().ring()->order(), options);
}

/// Remainder of f modulo gb: no term divisible by a leading monomial of gb.
template <class Field>
Polynomial<Field> normal_form(const Polynomial<Field>& f, const GroebnerBasis<Field>& gb) {
  const auto& ring = gb.ring();
  if (f.ring()->variables() != ring->variables() || !(f.ring()->field() == ring->field()))
    throw DomainError("normal_form", "polynomial and basis live in different rings");
  Polynomial<Field> h = same_ring(f.ring(), ring) ? f : f.in_ring(ring);
  const auto& field = ring->field();
  const auto& order = ring->order();
  const auto& gens = gb.generators();
  detail::TermVec<Field> cur = h.terms();
  detail::TermVec<Field> rem, scratch;
  std::size_t pos = 0;
  while (pos < cur.size()) {
    const Monomial& m = cur[pos].monomial;
    const Polynomial<Field>* red = nullptr;
    for (const auto& g : gens)
      if (divides(g.leading_monomial(), m)) {
        red = &g;
        break;
      }
    if (!red) {
      rem.push_back(cur[pos++]);
      continue;
    }
    Monomial q = quotient(m, red->leading_monomial());
    auto c = field.div(cur[pos].coeff, red->leading_coeff());
    detail::sub_scaled_shifted(field, order, cur, pos + 1, c, q, red->terms(), 1, scratch);
    cur.swap(scratch);
    pos = 0;
  }
  return Polynomial<Field>::from_sorted_terms(ring, std::move(rem));
}

template <class Field>
bool GroebnerBasis<Field>::contains(const Poly& f) const {
  return normal_form(f, *this).is_zero();
}

/// Standard monomials (not divisible by any leading monomial). Returns nullopt when the
/// set is infinite. `limit` bounds enumeration.
inline std::optional<std::vector<Monomial>> standard_monomials(const std::vector<Monomial>& leading, std::size_t nvars,
                                                               std::size_t limit = 5'000'000) {
  for (const auto& m : leading)
    if (m.is_one()) return std::vector<Monomial>{};
  std::vector<int> bound(nvars, -1);
  for (const auto& m : leading) {
    if (std::popcount(m.support) != 1) continue;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m.exp[i] && (bound[i] < 0 || m.exp[i] < bound[i])) bound[i] = m.exp[i];
  }
  for (std::size_t i = 0; i < nvars; ++i)
    if (bound[i] < 0) return std::nullopt;
  std::vector<Monomial> out;
  Monomial cur;
  auto blocked = [&](const Monomial& m) {
    for (const auto& l : leading)
      if (divides(l, m)) return true;
    return false;
  };
  // depth-first over variables, pruning by downward closure
  auto rec = [&](auto&& self, std::size_t var) -> void {
    if (var == nvars) {
      out.push_back(cur);
      if (out.size() > limit) throw ResourceLimitError("standard_monomials", "quotient too large to enumerate");
      return;
    }
    for (int e = 0; e < bound[var]; ++e) {
      cur.exp[var] = static_cast<std::uint8_t>(e);
      cur.refresh();
      if (blocked(cur)) break;
      self(self, var + 1);
    }
    cur.exp[var] = 0;
    cur.refresh();
  };
  rec(rec, 0);
  return out;
}

/// Count of standard monomials, or nullopt if infinite (positive-dimensional ideal).
template <class Field>
std::optional<std::size_t> quotient_dimension(const GroebnerBasis<Field>& gb) {
  auto sm = standard_monomials(gb.leading_monomials(), gb.ring()->size());
  if (!sm) return std::nullopt;
  return sm->size();
}

template <class Field>
std::optional<std::size_t> quotient_dimension(const std::vector<Polynomial<Field>>& ideal,
                                              const GroebnerOptions& options = {}) {
  return quotient_dimension(buchberger(ideal, MonomialOrder::degrevlex(), options));
}

/// Dimension of V(I) from the leading-term ideal: n minus the minimum size of a
/// variable set meeting every leading monomial's support. -1 for the unit ideal.
inline int krull_dimension_of_leading(const std::vector<Monomial>& leading, std::size_t nvars) {
  std::vector<std::uint32_t> supports;
  for (const auto& m : leading) {
    if (m.is_one()) return -1;
    supports.push_back(m.support);
  }
  std::size_t best = nvars;
  auto rec = [&](auto&& self, std::uint32_t chosen, std::size_t count) -> void {
    if (count >= best) return;
    for (std::uint32_t s : supports) {
      if ((s & chosen) != 0) continue;
      for (std::size_t i = 0; i < nvars; ++i)
        if (s & (1U << i)) self(self, chosen | (1U << i), count + 1);
      return;
    }
    best = count;
  };
  rec(rec, 0U, 0);
  return static_cast<int>(nvars - best);
}

template <class Field>
int krull_dimension(const GroebnerBasis<Field>& gb) {
  return krull_dimension_of_leading(gb.leading_monomials(), gb.ring()->size());
}

template <class Field>
int krull_dimension(const std::vector<Polynomial<Field>>& ideal, const GroebnerOptions& options = {}) {
  if (ideal.empty()) throw DomainError("krull_dimension", "empty generator list");
  return krull_dimension(buchberger(ideal, MonomialOrder::degrevlex(), options));
}

/// Generators of I ∩ K[remaining variables], expressed in a ring of the remaining variables.
template <class Field>
std::vector<Polynomial<Field>> eliminate(const std::vector<Polynomial<Field>>& ideal,
                                         const std::vector<std::string>& drop, const GroebnerOptions& options = {}) {
  if (ideal.empty()) throw DomainError("eliminate", "empty generator list");
  const auto& ring = ideal.front().ring();
  std::vector<std::string> first, rest;
  for (const auto& d : drop) {
    if (!ring->index_of(d)) throw DomainError("eliminate", "variable '" + d + "' not in ring");
    if (std::find(first.begin(), first.end(), d) == first.end()) first.push_back(d);
  }
  for (const auto& v : ring->variables())
    if (std::find(first.begin(), first.end(), v) == first.end()) rest.push_back(v);
  if (first.empty() || rest.empty()) throw DomainError("eliminate", "drop must be a nonempty proper subset");
  std::vector<std::string> all = first;
  all.insert(all.end(), rest.begin(), rest.end());
  auto elim_ring = make_ring<Field>(all, ring->field(), MonomialOrder::elimination(first.size()));
  std::vector<Polynomial<Field>> lifted;
  for (const auto& g : ideal) lifted.push_back(g.embed(elim_ring));
  auto gb = buchberger(lifted, elim_ring->order(), options);
  auto target = make_ring<Field>(rest, ring->field());
  std::uint32_t dropped_mask = (first.size() >= 32) ? 0xFFFFFFFFU : ((1U << first.size()) - 1U);
  std::vector<Polynomial<Field>> out;
  for (const auto& g : gb.generators()) {
    if (g.support_mask() & dropped_mask) continue;
    std::vector<Term<Field>> terms;
    for (const auto& t : g.terms()) {
      Monomial m;
      for (std::size_t i = 0; i < rest.size(); ++i) m.exp[i] = t.monomial.exp[i + first.size()];
      m.refresh();
      terms.push_back({m, t.coeff});
    }
    out.push_back(Polynomial<Field>::from_terms(target, std::move(terms)));
  }
  return out;
}

/// I : h^∞ via a fresh variable w, I + <w*h - 1>, eliminating w. Result lives in I's ring.
template <class Field>
std::vector<Polynomial<Field>> saturate(const std::vector<Polynomial<Field>>& ideal, const Polynomial<Field>& h,
                                        const GroebnerOptions& options = {}) {
  if (ideal.empty()) throw DomainError("saturate", "empty generator list");
  if (h.is_zero()) throw DomainError("saturate", "saturating polynomial must be nonzero");
  const auto& ring = ideal.front().ring();
  std::vector<std::string> vars{"w"};
  while (ring->index_of(vars[0])) vars[0] += "_";
  for (const auto& v : ring->variables()) vars.push_back(v);
  auto ext = make_ring<Field>(vars, ring->field(), MonomialOrder::elimination(1));
  std::vector<Polynomial<Field>> lifted;
  for (const auto& g : ideal) lifted.push_back(g.embed(ext));
  auto w = Polynomial<Field>::variable(ext, 0);
  lifted.push_back(w * h.embed(ext) - Polynomial<Field>::constant(ext, ext->field().one()));
  auto gb = buchberger(lifted, ext->order(), options);
  std::vector<Polynomial<Field>> out;
  for (const auto& g : gb.generators()) {
    if (g.support_mask() & 1U) continue;
    out.push_back(g.embed(ring));
  }
  if (out.empty()) out.push_back(Polynomial<Field>::zero(ring));
  return out;
}

template <class Field>
using Matrix = std::vector<std::vector<typename Field::Element>>;

/// Matrix of "multiply by h, then reduce" on the standard-monomial basis:
/// column j holds the coordinates of NF(h * b_j). Eigenvalues are h at the solutions.
template <class Field>
Matrix<Field> multiplication_matrix(const GroebnerBasis<Field>& gb, const Polynomial<Field>& h,
                                    std::vector<Monomial>* basis_out = nullptr) {
  auto sm = standard_monomials(gb.leading_monomials(), gb.ring()->size());
  if (!sm) throw DomainError("multiplication_matrix", "ideal is not zero-dimensional");
  const auto& basis = *sm;
  const auto& field = gb.ring()->field();
  const std::size_t n = basis.size();
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(basis[i], i);
  Matrix<Field> m(n, std::vector<typename Field::Element>(n, field.zero()));
  Polynomial<Field> hh = same_ring(h.ring(), gb.ring()) ? h : h.in_ring(gb.ring());
  for (std::size_t j = 0; j < n; ++j) {
    auto prod = hh.mul_term(basis[j], field.one());
    auto nf = normal_form(prod, gb);
    for (const auto& t : nf.terms()) m[index.at(t.monomial)][j] = t.coeff;
  }
  if (basis_out) *basis_out = basis;
  return m;
}

}  // namespace optdeg

#include "optdeg/cache.hpp"
