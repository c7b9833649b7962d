#ifndef POLYFOCK_ERRORS_HPP
#define POLYFOCK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyfock {

// Bad indices and out-of-domain arguments are reported with
// std::invalid_argument / std::domain_error. The types below cover
// failures of the computation itself.

/// Non-finite integrand sample, or an eigen-solver that did not converge.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form value left the range of double precision.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An operator expected to commute with rotations does not, to tolerance.
class NotRadialError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace polyfock

#endif  // POLYFOCK_ERRORS_HPP
