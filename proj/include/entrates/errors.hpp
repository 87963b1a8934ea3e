#pragma once

#include <stdexcept>
#include <string>

namespace entrates {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or dimensions that do not fit together.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented invariant (Hermiticity, trace, PSD, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Scalar argument outside the function's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Values that are individually fine but contradict each other, e.g. D > F.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Files that cannot be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace entrates
