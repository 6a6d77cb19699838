#pragma once

#include <stdexcept>
#include <string>

namespace ecd {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problems with user-supplied data. The CLI maps these to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A postcondition failed on recomputation. The CLI maps these to exit code 2.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

class SingularCurve : public InputError {
 public:
  SingularCurve() : InputError("singular curve: discriminant is zero") {}
};

class NotOnCurve : public InputError {
 public:
  using InputError::InputError;
};

class GeneratorNotOnCurve : public NotOnCurve {
 public:
  using NotOnCurve::NotOnCurve;
};

class InfinityHasNoDenominator : public InputError {
 public:
  InfinityHasNoDenominator()
      : InputError("the point at infinity has no denominator") {}
};

class MalformedPoint : public InputError {
 public:
  using InputError::InputError;
};

class FactoringTimeout : public InputError {
 public:
  using InputError::InputError;
};

class EmptyBasis : public InputError {
 public:
  EmptyBasis()
      : InputError("empty basis: rank 0 with trivial torsion has no points besides O") {}
};

class InsufficientData : public InputError {
 public:
  using InputError::InputError;
};

class EmptyCensus : public InputError {
 public:
  EmptyCensus() : InputError("census contains no points") {}
};

class TorsionGenerator : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionViolation : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace ecd
