#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace awkit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Shape mismatch or index out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Externally supplied matrix failed validation (e.g. asymmetry above the
/// rejection threshold).
class InvalidMatrixError : public Error {
 public:
  using Error::Error;
};

/// An operation was called in the wrong n-vs-k regime.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Base for numerical singularities; carries the offending value.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, double offending_value)
      : Error(what), offending_value_(offending_value) {}
  double offending_value() const { return offending_value_; }

 private:
  double offending_value_ = 0.0;
};

/// A reduction pivot fell below tolerance while the matrix had not vanished.
class PivotError : public SingularityError {
 public:
  PivotError(std::size_t step, double pivot)
      : SingularityError("pivot below tolerance at step " + std::to_string(step) +
                             " (value " + std::to_string(pivot) + ")",
                         pivot),
        step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_ = 0;
};

/// A leading principal minor needed as a denominator is numerically singular.
class SingularMinorError : public SingularityError {
 public:
  explicit SingularMinorError(double value)
      : SingularityError("leading principal minor is numerically singular", value) {}
};

/// Iterative solver failed to converge; carries the final residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// File could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input content (bad JSON/CSV, schema violation).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace awkit
