#pragma once

#include <stdexcept>
#include <string>

namespace hburg {

/// Invalid physical parameter (carries the offending parameter name in what()).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Geometry mismatch: grid too small for the support, cone outside the grid, t beyond T*.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its contract (too few records, missing certificate, ...).
class PreconditionError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace hburg
