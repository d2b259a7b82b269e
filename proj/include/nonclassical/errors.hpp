#ifndef NONCLASSICAL_ERRORS_HPP_
#define NONCLASSICAL_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nonclassical {

/// Bad input: malformed configuration, invalid model parameters, rejected
/// kinetic functions. Maps to CLI exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (root finder did not converge, NaN in a
/// time integration, budget exhausted). Maps to CLI exit status 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object violates one of its structural invariants.
/// Maps to CLI exit status 4.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nonclassical

#endif  // NONCLASSICAL_ERRORS_HPP_
