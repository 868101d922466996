#pragma once

#include <stdexcept>
#include <string>

namespace optdeg {

/// Base of every error raised by the library. `op()` names the operation that failed.
class Error : public std::runtime_error {
 public:
  Error(std::string op, const std::string& what)
      : std::runtime_error(op + ": " + what), op_(std::move(op)) {}
  const std::string& op() const noexcept { return op_; }

 private:
  std::string op_;
};

/// Malformed input: polynomial syntax, unknown variables, bad task parameters.
class ParseError : public Error {
 public:
  ParseError(std::string op, const std::string& what, std::size_t position = npos)
      : Error(std::move(op), position == npos ? what : what + " at position " + std::to_string(position)),
        position_(position) {}
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A precondition of an operation does not hold (mixed rings, wrong shapes, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Desk-scale exceeded: basis size or degree limit hit.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Degree counts disagree across reseeds with no majority.
class NonGenericDataError : public Error {
 public:
  using Error::Error;
};

/// The saturated critical ideal is not zero-dimensional.
class PositiveDimensionalError : public Error {
 public:
  using Error::Error;
};

/// Numeric extraction failed (non-convergence, ill-conditioning).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Two limit clusters stayed within tolerance even after refining the schedule.
class AmbiguousClusterError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Saturating by the torus denominators leaves nothing: X misses the torus.
class EmptyTorusPartError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A generic linear slice failed to cut the dimension (after reseeding).
class DimensionDropError : public Error {
 public:
  using Error::Error;
};

/// Critical locus of a germ is not isolated.
class NonIsolatedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The origin is not a critical point of the germ.
class NotSingularAtOriginError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace optdeg
