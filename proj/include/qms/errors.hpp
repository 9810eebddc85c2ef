#pragma once

#include <stdexcept>
#include <string>

namespace qms {

/// Base class for all qmslab errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or out-of-range matrix/vector dimensions, including the
/// configurable dimension cap.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A value violates a domain invariant beyond tolerance (non-Hermitian
/// density matrix, negative eigenvalue, bad parameter range, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Configuration parsing / field validation failure (CLI layer).
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace qms
