#pragma once

#include <stdexcept>
#include <string>

namespace patrolgame {

// Raised when a computation is asked for outside the regimes that have a
// known construction or closed form. The message names the regime.
class UnsupportedRegime : public std::domain_error {
 public:
  explicit UnsupportedRegime(const std::string& what) : std::domain_error(what) {}
};

// Raised for geometry/norm combinations with no implemented formula.
class UnsupportedGeometry : public std::domain_error {
 public:
  explicit UnsupportedGeometry(const std::string& what) : std::domain_error(what) {}
};

// Raised when an enumeration (walk families, candidate sets) exceeds its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double partial_lower_bound)
      : std::runtime_error(what), partial_lower_bound_(partial_lower_bound) {}
  double partial_lower_bound() const { return partial_lower_bound_; }

 private:
  double partial_lower_bound_;
};

}  // namespace patrolgame
