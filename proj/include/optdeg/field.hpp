#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "optdeg/errors.hpp"

namespace optdeg {

using Rational = mpq_class;
using BigInt = mpz_class;

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod64(result, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Miller-Rabin with the bases that are deterministic for every 64-bit input.
inline bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Z/pZ for a prime 2^20 < p < 2^32. Elements are canonical residues in [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;
  static constexpr bool is_exact_rational = false;
  static constexpr std::uint64_t kMinModulus = 1ULL << 20;
  static constexpr std::uint64_t kMaxModulus = 1ULL << 32;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p <= kMinModulus || p >= kMaxModulus)
      throw DomainError("PrimeField", "modulus " + std::to_string(p) + " outside (2^20, 2^32)");
    if (!is_probable_prime(p)) throw DomainError("PrimeField", std::to_string(p) + " is not prime");
  }

  std::uint32_t modulus() const noexcept { return p_; }

  Element zero() const noexcept { return 0; }
  Element one() const noexcept { return 1; }
  bool is_zero(Element a) const noexcept { return a == 0; }
  bool is_one(Element a) const noexcept { return a == 1; }

  Element add(Element a, Element b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const noexcept {
    return a >= b ? a - b : static_cast<Element>(std::uint64_t{a} + p_ - b);
  }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>((std::uint64_t{a} * b) % p_);
  }
  Element inv(Element a) const {
    if (a == 0) throw DomainError("PrimeField::inv", "division by zero");
    return static_cast<Element>(detail::powmod64(a, p_ - 2, p_));
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  Element from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  Element from_bigint(const BigInt& v) const {
    BigInt r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Element>(r.get_ui());
  }
  Element from_rational(const Rational& q) const {
    Element den = from_bigint(q.get_den());
    if (den == 0)
      throw DomainError("PrimeField", "denominator of " + q.get_str() + " divisible by " + std::to_string(p_));
    return div(from_bigint(q.get_num()), den);
  }

  /// Symmetric representative in (-p/2, p/2].
  long long signed_value(Element a) const noexcept {
    return a > p_ / 2 ? static_cast<long long>(a) - static_cast<long long>(p_) : static_cast<long long>(a);
  }
  Rational to_rational(Element a) const { return Rational(static_cast<long>(signed_value(a))); }
  std::string to_string(Element a) const { return std::to_string(signed_value(a)); }
  std::string name() const { return "Fp(" + std::to_string(p_) + ")"; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

/// The rationals, exact, via GMP.
class RationalField {
 public:
  using Element = Rational;
  static constexpr bool is_exact_rational = true;

  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw DomainError("RationalField::inv", "division by zero");
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  Element from_int(long long v) const { return Rational(static_cast<long>(v)); }
  Element from_bigint(const BigInt& v) const { return Rational(v); }
  Element from_rational(const Rational& q) const { return q; }
  Rational to_rational(const Element& a) const { return a; }
  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }

  friend bool operator==(const RationalField&, const RationalField&) noexcept { return true; }
};

/// Parses "123", "-4/6" into a canonical rational.
inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw ParseError("parse_rational", "invalid rational literal '" + text + "'");
  if (q.get_den() == 0) throw ParseError("parse_rational", "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace optdeg
