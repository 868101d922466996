#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "optdeg/errors.hpp"
#include "optdeg/field.hpp"
#include "optdeg/monomial.hpp"

namespace optdeg {

inline bool is_valid_variable_name(const std::string& name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

/// Ordered variables over a coefficient field with a term order.
template <class Field>
class PolyRing {
 public:
  PolyRing(std::vector<std::string> variables, Field field, MonomialOrder order = MonomialOrder::degrevlex())
      : variables_(std::move(variables)), field_(std::move(field)), order_(order) {
    if (variables_.size() > kMaxVariables)
      throw DomainError("PolyRing", "at most " + std::to_string(kMaxVariables) + " variables supported");
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (!is_valid_variable_name(variables_[i]))
        throw ParseError("PolyRing", "invalid variable name '" + variables_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (variables_[j] == variables_[i]) throw ParseError("PolyRing", "duplicate variable '" + variables_[i] + "'");
    }
    if (order_.kind() == MonomialOrder::Kind::Elimination &&
        (order_.block() == 0 || order_.block() >= variables_.size()))
      throw DomainError("PolyRing", "elimination block must lie strictly between 0 and the variable count");
  }

  std::size_t size() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::string& name(std::size_t i) const { return variables_.at(i); }
  const Field& field() const noexcept { return field_; }
  const MonomialOrder& order() const noexcept { return order_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - variables_.begin());
  }

  friend bool operator==(const PolyRing& a, const PolyRing& b) {
    return a.variables_ == b.variables_ && a.field_ == b.field_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> variables_;
  Field field_;
  MonomialOrder order_;
};

template <class Field>
using RingPtr = std::shared_ptr<const PolyRing<Field>>;

template <class Field>
RingPtr<Field> make_ring(std::vector<std::string> variables, Field field,
                         MonomialOrder order = MonomialOrder::degrevlex()) {
  return std::make_shared<const PolyRing<Field>>(std::move(variables), std::move(field), order);
}

template <class Field>
RingPtr<Field> with_order(const RingPtr<Field>& ring, MonomialOrder order) {
  return make_ring<Field>(ring->variables(), ring->field(), order);
}

template <class Field, class OtherField>
RingPtr<OtherField> with_field(const RingPtr<Field>& ring, OtherField field) {
  return make_ring<OtherField>(ring->variables(), std::move(field), ring->order());
}

/// Appends fresh variables (names are made unique against the existing ones).
template <class Field>
RingPtr<Field> extend_ring(const RingPtr<Field>& ring, const std::vector<std::string>& extra,
                           MonomialOrder order = MonomialOrder::degrevlex()) {
  std::vector<std::string> vars = ring->variables();
  for (std::string name : extra) {
    while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
    vars.push_back(name);
  }
  return make_ring<Field>(std::move(vars), ring->field(), order);
}

template <class Field>
bool same_ring(const RingPtr<Field>& a, const RingPtr<Field>& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace optdeg
