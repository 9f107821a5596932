#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistor {

/// Malformed textual or JSON input (bad fraction, wrong shape, unknown family).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A binary form with all coefficients zero was passed where a nonzero form is required.
class DegenerateFormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A deformation parameter or plane lies in a root kernel.  Carries the offending root.
class InadmissibleError : public std::invalid_argument {
 public:
  InadmissibleError(const std::string& what, std::size_t root_index)
      : std::invalid_argument(what), root_index_(root_index) {}

  std::size_t root_index() const noexcept { return root_index_; }

 private:
  std::size_t root_index_;
};

/// Search refused or aborted because of configured size limits.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proven bound failed on computed data.  This is an alarm, never a user error.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace twistor
