#pragma once

#include <stdexcept>
#include <string>

namespace pwk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two radicands met in one expression.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Guardrail tripped (term count, order, step budget).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pwk
