#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "optdeg/degrees.hpp"

namespace optdeg {

/// Polynomial in one formal variable with rational coefficients, c[i] the coefficient of t^i.
class UniPolynomial {
 public:
  UniPolynomial() = default;
  explicit UniPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UniPolynomial monomial(std::size_t k, Rational c = 1) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = std::move(c);
    return UniPolynomial(std::move(v));
  }

  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational at(const Rational& t) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
    return r;
  }

  friend UniPolynomial operator+(const UniPolynomial& a, const UniPolynomial& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return UniPolynomial(std::move(v));
  }
  friend UniPolynomial operator-(const UniPolynomial& a, const UniPolynomial& b) {
    return a + b * UniPolynomial({Rational(-1)});
  }
  friend UniPolynomial operator*(const UniPolynomial& a, const UniPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return UniPolynomial(std::move(v));
  }
  friend bool operator==(const UniPolynomial& a, const UniPolynomial& b) { return a.c_ == b.c_; }

  /// p(q(t)) by Horner.
  UniPolynomial compose(const UniPolynomial& q) const {
    UniPolynomial r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + UniPolynomial({*it});
    return r;
  }

  /// Quotient by (t - root); the remainder must vanish.
  UniPolynomial divide_exact_linear(const Rational& root, const char* op) const {
    if (is_zero()) return {};
    std::vector<Rational> q(c_.size() - 1, Rational(0));
    Rational carry = 0;
    for (std::size_t k = c_.size(); k-- > 0;) {
      Rational cur = c_[k] + carry * root;
      if (k == 0) {
        if (sgn(cur) != 0) throw std::logic_error(std::string(op) + ": nonzero remainder in exact division");
      } else {
        q[k - 1] = cur;
      }
      carry = cur;
    }
    return UniPolynomial(std::move(q));
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// I(p)(t) = (t p(-t-1) + p(0)) / (t+1). Swaps Chern-type and Euler-type generating polynomials.
inline UniPolynomial aluffi_involution(const UniPolynomial& p) {
  const UniPolynomial t({Rational(0), Rational(1)});
  const UniPolynomial shifted = p.compose(UniPolynomial({Rational(-1), Rational(-1)}));
  return (t * shifted + UniPolynomial({p[0]})).divide_exact_linear(Rational(-1), "aluffi_involution");
}

/// (v_0 p^d + v_1 p^{d-1} u + ... + v_d u^d) p^{n-d}.
struct DegreePolynomial {
  int n = 0;
  int d = 0;
  std::vector<BigInt> v;

  DegreePolynomial() = default;
  DegreePolynomial(int n_, int d_, std::vector<BigInt> v_) : n(n_), d(d_), v(std::move(v_)) { validate("DegreePolynomial"); }

  void validate(const char* op) const {
    if (d < 0 || d > n) throw DomainError(op, "need 0 <= d <= n");
    if (v.size() != static_cast<std::size_t>(d) + 1) throw DomainError(op, "expected d+1 coefficients");
  }
  friend bool operator==(const DegreePolynomial&, const DegreePolynomial&) = default;
};

/// a_0 .. a_d, the coefficients of [P^0] .. [P^d].
struct ChernVector {
  std::vector<BigInt> a;
  friend bool operator==(const ChernVector&, const ChernVector&) = default;
};

namespace detail {

// Both forms are homogeneous of degree d in (p, u); dehomogenizing at p = 1 loses nothing.
inline UniPolynomial dehomogenize(const DegreePolynomial& P) {
  std::vector<Rational> c;
  for (const auto& x : P.v) c.emplace_back(x);
  return UniPolynomial(std::move(c));
}

inline DegreePolynomial rehomogenize(const UniPolynomial& f, int n, int d, const char* op) {
  if (f.degree() > d) throw DomainError(op, "result exceeds the declared dimension");
  std::vector<BigInt> v;
  for (int i = 0; i <= d; ++i) {
    Rational c = f[static_cast<std::size_t>(i)];
    if (c.get_den() != 1) throw DomainError(op, "non-integral coefficient; input is not a valid degree vector");
    v.push_back(c.get_num());
  }
  return DegreePolynomial(n, d, std::move(v));
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace detail

/// B(p,u) = (u S(p,u-p) - p S(p,0)) / (u-p).
inline DegreePolynomial bidegrees_from_sectional(const DegreePolynomial& S) {
  S.validate("bidegrees_from_sectional");
  const UniPolynomial s = detail::dehomogenize(S);
  const UniPolynomial u({Rational(0), Rational(1)});
  const UniPolynomial num = u * s.compose(UniPolynomial({Rational(-1), Rational(1)})) - UniPolynomial({s[0]});
  return detail::rehomogenize(num.divide_exact_linear(Rational(1), "bidegrees_from_sectional"), S.n, S.d,
                              "bidegrees_from_sectional");
}

/// S(p,u) = (u B(p,u+p) + p B(p,0)) / (u+p).
inline DegreePolynomial sectional_from_bidegrees(const DegreePolynomial& B) {
  B.validate("sectional_from_bidegrees");
  const UniPolynomial b = detail::dehomogenize(B);
  const UniPolynomial u({Rational(0), Rational(1)});
  const UniPolynomial num = u * b.compose(UniPolynomial({Rational(1), Rational(1)})) + UniPolynomial({b[0]});
  return detail::rehomogenize(num.divide_exact_linear(Rational(-1), "sectional_from_bidegrees"), B.n, B.d,
                              "sectional_from_bidegrees");
}

/// Solves sum b_i t^{n-i} = sum a_i (-1)^{d-i} t^{n-i} (1+t)^i for a (or evaluates it for b when
/// `invert`). Comparing coefficients of t^{n-k}: b_k = sum_{i>=k} (-1)^{d-i} C(i,k) a_i.
inline ChernVector chern_mather_from_lo_bidegrees(const std::vector<BigInt>& b, int n, int d, bool invert = false) {
  if (d < 0 || d > n) throw DomainError("chern_mather_from_lo_bidegrees", "need 0 <= d <= n");
  if (b.size() != static_cast<std::size_t>(d) + 1)
    throw DomainError("chern_mather_from_lo_bidegrees", "expected d+1 entries");
  auto sign = [d](int i) { return ((d - i) % 2 == 0) ? 1 : -1; };
  std::vector<BigInt> out(b.size());
  if (invert) {
    for (int k = 0; k <= d; ++k) {
      BigInt acc = 0;
      for (int i = k; i <= d; ++i) acc += sign(i) * detail::binomial(i, k) * b[i];
      out[k] = acc;
    }
  } else {
    for (int k = d; k >= 0; --k) {
      BigInt rest = b[k];
      for (int i = k + 1; i <= d; ++i) rest -= sign(i) * detail::binomial(i, k) * out[i];
      out[k] = sign(k) * rest;
    }
  }
  return ChernVector{std::move(out)};
}

/// Very-affine sign rule: a_i = (-1)^{d-i} v_i with d = v.size() - 1.
inline ChernVector chern_mather_from_ml_bidegrees(const std::vector<BigInt>& v) {
  if (v.empty()) throw DomainError("chern_mather_from_ml_bidegrees", "empty vector");
  const int d = static_cast<int>(v.size()) - 1;
  ChernVector out;
  for (int i = 0; i <= d; ++i) out.a.push_back(((d - i) % 2 == 0) ? v[i] : BigInt(-v[i]));
  return out;
}

/// Eu at the vertex of an affine cone: b_d - b_{d-1} + ... + (-1)^d b_0.
inline BigInt cone_point_euler_obstruction(const std::vector<BigInt>& b) {
  if (b.empty()) throw DomainError("cone_point_euler_obstruction", "empty vector");
  const int d = static_cast<int>(b.size()) - 1;
  BigInt acc = 0;
  for (int i = 0; i <= d; ++i) acc += ((d - i) % 2 == 0) ? b[i] : BigInt(-b[i]);
  return acc;
}

/// Geometric route: X must be an affine cone (homogeneous generators). Its LO-bidegrees are the
/// sectional LO degrees, which for a cone coincide with the polar degrees.
inline BigInt cone_point_euler_obstruction(const Variety& X, const DegreeOptions& opts = {}) {
  if (!X.homogeneous()) throw DomainError("cone_point_euler_obstruction", "variety is not an affine cone");
  const SectionalVector s = sectional_degrees(X, DegreeKind::LO, opts);
  std::vector<BigInt> b;
  for (long long x : s.values) b.emplace_back(static_cast<long>(x));
  return cone_point_euler_obstruction(b);
}

/// d_1...d_c * sum_{i_1+...+i_c <= n-c} (d_1-1)^{i_1} ... (d_c-1)^{i_c}, using the c largest degrees.
/// Attained by a general complete intersection.
inline BigInt ed_upper_bound(int n, std::vector<int> degrees, int c) {
  const int k = static_cast<int>(degrees.size());
  if (c < 0 || c > k || k > n) throw DomainError("ed_upper_bound", "need c <= k <= n");
  for (int x : degrees)
    if (x < 1) throw DomainError("ed_upper_bound", "degrees must be positive");
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  const int top = n - c;
  // coefficients of prod_j 1/(1 - (d_j - 1) t), truncated at t^top
  std::vector<BigInt> series(static_cast<std::size_t>(top) + 1, BigInt(0));
  series[0] = 1;
  BigInt lead = 1;
  for (int j = 0; j < c; ++j) {
    lead *= degrees[j];
    const BigInt r = degrees[j] - 1;
    for (int e = 1; e <= top; ++e) series[e] += r * series[e - 1];
  }
  BigInt sum = 0;
  for (const auto& x : series) sum += x;
  return lead * sum;
}

}  // namespace optdeg
