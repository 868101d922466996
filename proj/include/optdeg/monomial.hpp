#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "optdeg/errors.hpp"

namespace optdeg {

inline constexpr std::size_t kMaxVariables = 32;

/// Dense exponent vector. Unused trailing slots stay zero, so equality and hashing
/// do not need to know the ring width.
struct Monomial {
  std::array<std::uint8_t, kMaxVariables> exp{};
  std::uint16_t degree = 0;
  std::uint32_t support = 0;  // bit i set iff exp[i] > 0

  static Monomial from_exponents(std::span<const int> e) {
    if (e.size() > kMaxVariables) throw DomainError("Monomial", "too many variables");
    Monomial m;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > 255) throw DomainError("Monomial", "exponent out of range [0, 255]");
      m.exp[i] = static_cast<std::uint8_t>(e[i]);
    }
    m.refresh();
    return m;
  }

  static Monomial variable(std::size_t index, int power = 1) {
    Monomial m;
    m.exp[index] = static_cast<std::uint8_t>(power);
    m.refresh();
    return m;
  }

  void refresh() noexcept {
    unsigned d = 0;
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      d += exp[i];
      if (exp[i]) s |= (1U << i);
    }
    degree = static_cast<std::uint16_t>(d);
    support = s;
  }

  bool is_one() const noexcept { return degree == 0; }
  int operator[](std::size_t i) const noexcept { return exp[i]; }

  std::vector<int> exponents(std::size_t nvars) const {
    return std::vector<int>(exp.begin(), exp.begin() + static_cast<std::ptrdiff_t>(nvars));
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.support == b.support && std::memcmp(a.exp.data(), b.exp.data(), kMaxVariables) == 0;
  }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    unsigned s = unsigned{a.exp[i]} + b.exp[i];
    if (s > 255) throw DomainError("Monomial", "exponent overflow (> 255)");
    r.exp[i] = static_cast<std::uint8_t>(s);
  }
  r.degree = static_cast<std::uint16_t>(a.degree + b.degree);
  r.support = a.support | b.support;
  return r;
}

/// True iff a divides b.
inline bool divides(const Monomial& a, const Monomial& b) noexcept {
  if ((a.support & ~b.support) != 0 || a.degree > b.degree) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (a.exp[i] > b.exp[i]) return false;
  return true;
}

/// b / a, assuming divides(a, b).
inline Monomial quotient(const Monomial& b, const Monomial& a) noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) r.exp[i] = static_cast<std::uint8_t>(b.exp[i] - a.exp[i]);
  r.degree = static_cast<std::uint16_t>(b.degree - a.degree);
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (r.exp[i]) s |= (1U << i);
  r.support = s;
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
  Monomial r;
  unsigned d = 0;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    r.exp[i] = a.exp[i] > b.exp[i] ? a.exp[i] : b.exp[i];
    d += r.exp[i];
  }
  r.degree = static_cast<std::uint16_t>(d);
  r.support = a.support | b.support;
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) noexcept { return (a.support & b.support) == 0; }

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      h ^= m.exp[i];
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// lex, degrevlex, or an elimination order for the first `block` variables
/// (compare their total degree first, then degrevlex on everything).
class MonomialOrder {
 public:
  enum class Kind { Lex, DegRevLex, Elimination };

  MonomialOrder() = default;
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex, 0); }
  static MonomialOrder elimination(std::size_t block) { return MonomialOrder(Kind::Elimination, block); }

  Kind kind() const noexcept { return kind_; }
  std::size_t block() const noexcept { return block_; }

  /// Three-way comparison: positive iff a > b.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    switch (kind_) {
      case Kind::Lex:
        for (std::size_t i = 0; i < kMaxVariables; ++i)
          if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
        return 0;
      case Kind::Elimination: {
        unsigned da = 0, db = 0;
        for (std::size_t i = 0; i < block_; ++i) {
          da += a.exp[i];
          db += b.exp[i];
        }
        if (da != db) return da > db ? 1 : -1;
        return grevlex(a, b);
      }
      case Kind::DegRevLex:
      default:
        return grevlex(a, b);
    }
  }

  bool greater(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) > 0; }

  /// Global degree compatibility: true for degrevlex only.
  bool is_graded() const noexcept { return kind_ == Kind::DegRevLex; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::Lex:
        return "lex";
      case Kind::Elimination:
        return "elim" + std::to_string(block_);
      default:
        return "degrevlex";
    }
  }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) noexcept {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  MonomialOrder(Kind k, std::size_t block) : kind_(k), block_(block) {}

  static int grevlex(const Monomial& a, const Monomial& b) noexcept {
    if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
    for (std::size_t i = kMaxVariables; i-- > 0;)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }

  Kind kind_ = Kind::DegRevLex;
  std::size_t block_ = 0;
};

}  // namespace optdeg
