#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "optdeg/errors.hpp"
#include "optdeg/field.hpp"
#include "optdeg/monomial.hpp"
#include "optdeg/ring.hpp"

namespace optdeg {

template <class Field>
struct Term {
  Monomial monomial;
  typename Field::Element coeff;
};

/// Sparse multivariate polynomial in canonical form: nonzero coefficients, distinct
/// monomials, terms sorted descending in the ring's order.
template <class Field>
class Polynomial {
 public:
  using Element = typename Field::Element;
  using TermType = Term<Field>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<Field> ring) : ring_(std::move(ring)) {}

  static Polynomial zero(const RingPtr<Field>& ring) { return Polynomial(ring); }

  static Polynomial constant(const RingPtr<Field>& ring, const Element& c) {
    Polynomial p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({Monomial{}, c});
    return p;
  }
  static Polynomial constant(const RingPtr<Field>& ring, long long c) {
    return constant(ring, ring->field().from_int(c));
  }

  static Polynomial variable(const RingPtr<Field>& ring, std::size_t index) {
    if (index >= ring->size()) throw DomainError("Polynomial::variable", "index out of range");
    Polynomial p(ring);
    p.terms_.push_back({Monomial::variable(index), ring->field().one()});
    return p;
  }
  static Polynomial variable(const RingPtr<Field>& ring, const std::string& name) {
    auto idx = ring->index_of(name);
    if (!idx) throw ParseError("Polynomial::variable", "unknown variable '" + name + "'");
    return variable(ring, *idx);
  }

  static Polynomial monomial(const RingPtr<Field>& ring, const Monomial& m, const Element& c) {
    Polynomial p(ring);
    if (!ring->field().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }

  /// Builds a canonical polynomial from arbitrary (possibly repeated, unsorted) terms.
  static Polynomial from_terms(const RingPtr<Field>& ring, std::vector<TermType> terms) {
    Polynomial p(ring);
    const auto& field = ring->field();
    const auto& order = ring->order();
    std::sort(terms.begin(), terms.end(),
              [&](const TermType& a, const TermType& b) { return order.greater(a.monomial, b.monomial); });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
        p.terms_.back().coeff = field.add(p.terms_.back().coeff, t.coeff);
        if (field.is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
      } else if (!field.is_zero(t.coeff)) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  /// Wraps terms already in canonical order. Internal fast path; no checks.
  static Polynomial from_sorted_terms(const RingPtr<Field>& ring, std::vector<TermType> terms) {
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<Field>& ring() const noexcept { return ring_; }
  const Field& field() const { return ring_->field(); }
  const std::vector<TermType>& terms() const noexcept { return terms_; }
  std::vector<TermType>& mutable_terms() noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one()); }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw DomainError("Polynomial", "zero polynomial has no leading term");
    return terms_.front().monomial;
  }
  const Element& leading_coeff() const {
    if (terms_.empty()) throw DomainError("Polynomial", "zero polynomial has no leading term");
    return terms_.front().coeff;
  }

  Element constant_term() const {
    if (!terms_.empty() && terms_.back().monomial.is_one()) return terms_.back().coeff;
    return field().zero();
  }

  /// -1 for the zero polynomial.
  int total_degree() const noexcept {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial.degree));
    return d;
  }

  int degree_in(std::size_t var) const noexcept {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.monomial.exp[var]));
    return d;
  }

  bool is_homogeneous() const noexcept {
    for (const auto& t : terms_)
      if (t.monomial.degree != terms_.front().monomial.degree) return false;
    return true;
  }

  std::uint32_t support_mask() const noexcept {
    std::uint32_t s = 0;
    for (const auto& t : terms_) s |= t.monomial.support;
    return s;
  }

  Polynomial monic() const {
    if (terms_.empty()) return *this;
    Polynomial r = *this;
    auto inv = field().inv(terms_.front().coeff);
    for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, inv);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
    return r;
  }

  Polynomial scaled(const Element& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
    return r;
  }

  /// this * c * m, which stays sorted because monomial orders are multiplicative.
  Polynomial mul_term(const Monomial& m, const Element& c) const {
    if (field().is_zero(c)) return Polynomial(ring_);
    Polynomial r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * m, field().mul(t.coeff, c)});
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same(a, b, "multiply");
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (b.size() == 1) return a.mul_term(b.terms_[0].monomial, b.terms_[0].coeff);
    if (a.size() == 1) return b.mul_term(a.terms_[0].monomial, a.terms_[0].coeff);
    const auto& f = a.field();
    std::unordered_map<Monomial, Element, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        Monomial m = s.monomial * t.monomial;
        auto prod = f.mul(s.coeff, t.coeff);
        auto it = acc.find(m);
        if (it == acc.end())
          acc.emplace(m, prod);
        else
          it->second = f.add(it->second, prod);
      }
    std::vector<TermType> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!f.is_zero(c)) terms.push_back({m, c});
    const auto& order = a.ring_->order();
    std::sort(terms.begin(), terms.end(),
              [&](const TermType& x, const TermType& y) { return order.greater(x.monomial, y.monomial); });
    return from_sorted_terms(a.ring_, std::move(terms));
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(ring_, field().one());
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k) base *= base;
    }
    return result;
  }

  /// Partial derivative with respect to variable `var`.
  Polynomial derivative(std::size_t var) const {
    if (var >= ring_->size()) throw DomainError("derivative", "variable index out of range");
    std::vector<TermType> out;
    for (const auto& t : terms_) {
      int e = t.monomial.exp[var];
      if (e == 0) continue;
      Monomial m = t.monomial;
      m.exp[var] = static_cast<std::uint8_t>(e - 1);
      m.refresh();
      out.push_back({m, field().mul(t.coeff, field().from_int(e))});
    }
    // dividing every term by the same variable preserves the order
    return from_sorted_terms(ring_, std::move(out));
  }

  Element evaluate(const std::vector<Element>& point) const {
    if (point.size() != ring_->size()) throw DomainError("evaluate", "point dimension mismatch");
    const auto& f = field();
    Element acc = f.zero();
    for (const auto& t : terms_) {
      Element v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i)
        for (int k = 0; k < t.monomial.exp[i]; ++k) v = f.mul(v, point[i]);
      acc = f.add(acc, v);
    }
    return acc;
  }

  /// Re-expresses the polynomial in a ring with the same variables but another order.
  Polynomial in_ring(const RingPtr<Field>& target) const {
    if (target->variables() != ring_->variables() || !(target->field() == ring_->field()))
      throw DomainError("in_ring", "target ring has different variables or field");
    return from_terms(target, terms_);
  }

  /// Embeds into a ring containing every variable of this one (matched by name).
  Polynomial embed(const RingPtr<Field>& target) const {
    // variables that do not occur may be absent from the target
    std::vector<std::size_t> map(ring_->size());
    const std::uint32_t used = support_mask();
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      auto idx = target->index_of(ring_->name(i));
      if (!idx && (used & (1U << i)))
        throw DomainError("embed", "variable '" + ring_->name(i) + "' missing from target ring");
      map[i] = idx.value_or(0);
    }
    std::vector<TermType> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m;
      for (std::size_t i = 0; i < ring_->size(); ++i) m.exp[map[i]] = t.monomial.exp[i];
      m.refresh();
      out.push_back({m, t.coeff});
    }
    return from_terms(target, std::move(out));
  }

  /// Coefficient-wise conversion into another field (e.g. QQ -> Fp) over a ring with
  /// the same variables.
  template <class OtherField>
  Polynomial<OtherField> map_coefficients(const RingPtr<OtherField>& target) const {
    std::vector<Term<OtherField>> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
      out.push_back({t.monomial, target->field().from_rational(field().to_rational(t.coeff))});
    return Polynomial<OtherField>::from_terms(target, std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    if (!same_ring(a.ring_, b.ring_)) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || !(a.terms_[i].coeff == b.terms_[i].coeff))
        return false;
    return true;
  }

  std::string to_string() const;

 private:
  static void check_same(const Polynomial& a, const Polynomial& b, const char* what) {
    if (!same_ring(a.ring_, b.ring_)) throw DomainError(what, "polynomials live in different rings");
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_same(a, b, subtract ? "subtract" : "add");
    const auto& f = a.field();
    const auto& order = a.ring_->order();
    std::vector<TermType> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : order.compare(a.terms_[i].monomial, b.terms_[j].monomial);
      if (c > 0) {
        out.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        out.push_back({t.monomial, subtract ? f.neg(t.coeff) : t.coeff});
      } else {
        auto s = subtract ? f.sub(a.terms_[i].coeff, b.terms_[j].coeff) : f.add(a.terms_[i].coeff, b.terms_[j].coeff);
        if (!f.is_zero(s)) out.push_back({a.terms_[i].monomial, s});
        ++i;
        ++j;
      }
    }
    return from_sorted_terms(a.ring_, std::move(out));
  }

  RingPtr<Field> ring_;
  std::vector<TermType> terms_;
};

template <class Field>
std::string monomial_to_string(const Monomial& m, const PolyRing<Field>& ring) {
  std::string s;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (m.exp[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.name(i);
    if (m.exp[i] > 1) s += "^" + std::to_string(m.exp[i]);
  }
  return s.empty() ? "1" : s;
}

template <class Field>
std::string Polynomial<Field>::to_string() const {
  if (terms_.empty()) return "0";
  const auto& f = field();
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    std::string c = f.to_string(t.coeff);
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    std::string body;
    if (t.monomial.is_one())
      body = c;
    else if (c == "1")
      body = monomial_to_string(t.monomial, *ring_);
    else
      body = c + "*" + monomial_to_string(t.monomial, *ring_);
    if (k == 0)
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

template <class Field>
std::ostream& operator<<(std::ostream& os, const Polynomial<Field>& p) {
  return os << p.to_string();
}

template <class Field>
Polynomial<Field> operator*(const typename Field::Element& c, const Polynomial<Field>& p) {
  return p.scaled(c);
}

/// Substitutes variables by polynomials of `target` (default: the source ring).
/// Variables without an entry map to the same-named variable of `target`.
template <class Field>
Polynomial<Field> specialize(const Polynomial<Field>& f, const std::map<std::string, Polynomial<Field>>& assignment,
                             RingPtr<Field> target = nullptr) {
  const auto& ring = *f.ring();
  if (!target) target = f.ring();
  for (const auto& [name, image] : assignment) {
    if (!ring.index_of(name)) throw DomainError("specialize", "variable '" + name + "' not in ring");
    if (!same_ring(image.ring(), target)) throw DomainError("specialize", "image of '" + name + "' not in target ring");
  }
  std::vector<Polynomial<Field>> images;
  images.reserve(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    auto it = assignment.find(ring.name(i));
    if (it != assignment.end()) {
      images.push_back(it->second);
    } else {
      images.push_back(Polynomial<Field>::variable(target, ring.name(i)));
    }
  }
  std::vector<std::vector<Polynomial<Field>>> powers(ring.size());
  auto power = [&](std::size_t v, int e) -> const Polynomial<Field>& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Polynomial<Field>::constant(target, target->field().one()));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[v]);
    return cache[static_cast<std::size_t>(e)];
  };
  Polynomial<Field> result(target);
  for (const auto& t : f.terms()) {
    Polynomial<Field> term = Polynomial<Field>::constant(target, t.coeff);
    for (std::size_t i = 0; i < ring.size() && !term.is_zero(); ++i)
      if (t.monomial.exp[i]) term *= power(i, t.monomial.exp[i]);
    result += term;
  }
  return result;
}

/// Value assignment convenience overload.
template <class Field>
Polynomial<Field> specialize(const Polynomial<Field>& f,
                             const std::map<std::string, typename Field::Element>& values) {
  std::map<std::string, Polynomial<Field>> assignment;
  for (const auto& [name, v] : values) assignment.emplace(name, Polynomial<Field>::constant(f.ring(), v));
  return specialize(f, assignment);
}

/// k x n matrix of partial derivatives.
template <class Field>
std::vector<std::vector<Polynomial<Field>>> jacobian(const std::vector<Polynomial<Field>>& polys) {
  std::vector<std::vector<Polynomial<Field>>> rows;
  if (polys.empty()) return rows;
  const auto& ring = polys.front().ring();
  for (const auto& g : polys) {
    if (!same_ring(g.ring(), ring)) throw DomainError("jacobian", "polynomials live in different rings");
    std::vector<Polynomial<Field>> row;
    row.reserve(ring->size());
    for (std::size_t j = 0; j < ring->size(); ++j) row.push_back(g.derivative(j));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Affine-linear form c_0 + sum c_i x_i.
template <class Field>
Polynomial<Field> linear_form(const RingPtr<Field>& ring, const std::vector<typename Field::Element>& coeffs,
                              const typename Field::Element& constant) {
  std::vector<Term<Field>> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) terms.push_back({Monomial::variable(i), coeffs[i]});
  terms.push_back({Monomial{}, constant});
  return Polynomial<Field>::from_terms(ring, std::move(terms));
}

/// Determinant by cofactor expansion along the first row (small matrices only).
template <class Field>
Polynomial<Field> determinant(const std::vector<std::vector<Polynomial<Field>>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("determinant", "empty matrix");
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Polynomial<Field> acc(m[0][0].ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial<Field>>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial<Field>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    auto term = m[0][j] * determinant(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace optdeg
