#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hulldev {

/// Bad arguments: wrong dimension, empty point list, exponent below one, ...
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured work budget (functional count, grid size, iterations) was exhausted.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed, e.g. a certified lower bound above a proven upper bound.
/// Signals a solver bug rather than bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A ball-intersection test stayed inside the marginal band after refinement.
class MarginalIntersection : public std::runtime_error {
 public:
  MarginalIntersection(std::vector<int> subset, double gap)
      : std::runtime_error(describe(subset, gap)), subset_(std::move(subset)), gap_(gap) {}

  const std::vector<int>& subset() const noexcept { return subset_; }
  double gap() const noexcept { return gap_; }

 private:
  static std::string describe(const std::vector<int>& subset, double gap) {
    std::string s = "marginal intersection for simplex {";
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(subset[i]);
    }
    s += "} (|g* - r| = " + std::to_string(gap) + ")";
    return s;
  }

  std::vector<int> subset_;
  double gap_;
};

}  // namespace hulldev
