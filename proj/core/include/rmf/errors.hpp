#ifndef RMF_ERRORS_HPP
#define RMF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmf {

// Arguments outside the mathematical domain of an operation
// (unsupported character, even weight for an odd series, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Shape mismatch between objects: incompatible prefactors, missing cusp
// entries, series that cannot be exported.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exact identity that was expected to hold did not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by decompose() when forward substitution leaves a nonzero residual.
class NotInSpanError : public ConsistencyError {
 public:
  NotInSpanError(const std::string& what, std::size_t exponent)
      : ConsistencyError(what), exponent_(exponent) {}

  std::size_t exponent() const noexcept { return exponent_; }

 private:
  std::size_t exponent_;
};

// Work estimate beyond the configured budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmf

#endif  // RMF_ERRORS_HPP
