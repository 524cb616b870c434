#pragma once

#include <stdexcept>
#include <string>

namespace lstrimer {

/// Precondition violated by caller-supplied data (bad index, non-finite entry, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to produce a trustworthy result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by time propagation when amplitudes leave the representable range.
class PropagationOverflow : public NumericError {
 public:
  PropagationOverflow(const std::string& what, double last_finite_t)
      : NumericError(what), last_finite_t_(last_finite_t) {}

  /// Largest time (from t = 0) for which the propagated state was still finite.
  [[nodiscard]] double last_finite_t() const noexcept { return last_finite_t_; }

 private:
  double last_finite_t_;
};

}  // namespace lstrimer
