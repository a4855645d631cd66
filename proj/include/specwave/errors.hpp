#pragma once

#include <stdexcept>
#include <string>

namespace specwave {

// Base of every error the library raises. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: a caller violated a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DuplicatePoles : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidInterval : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InsufficientData : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonpositiveValue : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class PoleInLowerHalfPlane : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NonpositiveEpsilon : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class GridMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class EmptyWindow : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class EvaluationOnSpectrum : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class SingularPoint : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical breakdown: the inputs were acceptable but the computation failed.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class NoReferenceAvailable : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace specwave
