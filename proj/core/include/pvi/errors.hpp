#pragma once

#include <stdexcept>
#include <string>

namespace pvi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'") {}
};

/// Evaluation or substitution hit a vanishing denominator.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A supplied square-root branch does not square to the declared value.
class BranchError : public Error {
 public:
  using Error::Error;
};

class RootContextMismatch : public Error {
 public:
  RootContextMismatch() : Error("operands belong to different root extensions") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Point lies on a fixed singularity of the equation (y in {0,1,t}, t in {0,1}).
class SingularConfiguration : public Error {
 public:
  using Error::Error;
};

/// A gauge-transformed Lax matrix does not have the shape of M.
class TemplateMismatch : public Error {
 public:
  using Error::Error;
};

class ResonanceError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  enum class Kind { singularity, step_underflow, step_limit };
  IntegrationError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

}  // namespace pvi
