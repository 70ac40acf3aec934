#pragma once

#include <stdexcept>
#include <string>

namespace zgb {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a pole (s = 0, s = 1, non-positive integers for log-gamma).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An evaluator failed at a quadrature node.
class SamplingError : public DomainError {
 public:
  SamplingError(const std::string& what, double theta) : DomainError(what), theta_(theta) {}
  double theta() const noexcept { return theta_; }

 private:
  double theta_;
};

/// Invalid configuration of a computation: window, grid, annulus, radius.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The request is beyond what the current precision or table depth can deliver.
class CapacityError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Malformed command-line input or configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace zgb
