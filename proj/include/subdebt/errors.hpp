#ifndef SUBDEBT_ERRORS_HPP
#define SUBDEBT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subdebt {

/// Raised when a parameter set violates a model invariant (non-positive face, maturity, ...).
class InvalidInputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// d1 and vega are undefined at zero volatility; pricing falls back to the deterministic limit.
class DegenerateVolatilityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Central difference would step to a non-positive volatility.
class BumpTooLargeError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed scenario or table file.
class ConfigParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) {
    throw InvalidInputError(message);
  }
}

}  // namespace detail
}  // namespace subdebt

#endif
