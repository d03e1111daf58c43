#pragma once

#include <stdexcept>
#include <string>

namespace solvable {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed form is undefined for the given arguments (e.g. alpha == 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exact value outgrew the configured decimal digit budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Exact and floating scalars were combined, or float -> exact was requested.
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Exact square root requested of a Gaussian rational that is not a square.
class NotPerfectSquare : public Error {
 public:
  using Error::Error;
};

/// A finite shift table was queried past its end.
class ShiftExhausted : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace solvable
