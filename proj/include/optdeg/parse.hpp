#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "optdeg/errors.hpp"
#include "optdeg/polynomial.hpp"

namespace optdeg {

namespace detail {

// expr   := term (('+'|'-') term)*
// term   := unary (('*'|'/') unary)*
// unary  := ('+'|'-') unary | power
// power  := atom ('^' integer)?
// atom   := integer | variable | '(' expr ')'
template <class Field>
class PolyParser {
 public:
  using Poly = Polynomial<Field>;

  PolyParser(std::string_view text, RingPtr<Field> ring) : text_(text), ring_(std::move(ring)) {}

  Poly parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty input");
    Poly p = expr();
    skip_space();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("parse_poly", what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by nonzero constants");
        }
        acc = acc.scaled(ring_->field().inv(d.leading_coeff()));
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      if (pos_ - start > 3) fail("exponent overflow");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      if (e > 255) fail("exponent overflow");
      if (!base.is_zero() && static_cast<long>(base.total_degree()) * e > 255) fail("exponent overflow");
      return base.pow(e);
    }
    return base;
  }

  Poly atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      BigInt v(std::string(text_.substr(start, pos_ - start)));
      return Poly::constant(ring_, ring_->field().from_bigint(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Poly::variable(ring_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  RingPtr<Field> ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses +, -, *, /constant, ^integer, integer literals and ring variables.
template <class Field>
Polynomial<Field> parse_poly(std::string_view text, const RingPtr<Field>& ring) {
  return detail::PolyParser<Field>(text, ring).parse();
}

template <class Field>
std::vector<Polynomial<Field>> parse_polys(const std::vector<std::string>& texts, const RingPtr<Field>& ring) {
  std::vector<Polynomial<Field>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_poly(t, ring));
  return out;
}

/// Comma-separated variable list "x,y,z".
inline std::vector<std::string> split_list(std::string_view text, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

}  // namespace optdeg
