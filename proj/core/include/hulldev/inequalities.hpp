#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hulldev/hull.hpp"
#include "hulldev/space.hpp"

namespace hulldev {

// Weighted point families in l_p^n and the r-energy inequalities between
// them, with r = min(p, p') and r' = max(p, p').

struct WeightedFamily {
  std::vector<Vec> points;
  BarycentricWeights weights;
  Exponent p = Exponent::finite(2.0);

  /// Throws InvalidInput on empty/ragged points, size mismatch or invalid weights.
  static WeightedFamily make(std::vector<Vec> points, Vec weights, Exponent p);
  /// Uniform weights 1/k.
  static WeightedFamily uniform(std::vector<Vec> points, Exponent p);

  Vec x0() const { return weights.combine(points); }
  DualPair exponents() const { return dual_exponent(p); }
  int size() const { return static_cast<int>(points.size()); }
  int dim() const { return static_cast<int>(points.front().size()); }
  double max_norm() const;
};

enum class InequalityId { centered = 1, schoenberg = 2, refined = 3, two_family = 4 };

const char* to_string(InequalityId id);

struct InequalityMargin {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  InequalityId id = InequalityId::centered;
};

/// (sum_ij a_i a_j ||x_i - x_j||^r)^(1/r)
double energy_pairwise(const WeightedFamily& f);
/// (sum_i a_i ||x_i - x0||^r)^(1/r)
double energy_centered(const WeightedFamily& f);

/// centered <= 2^(-1/r') pairwise
InequalityMargin check_ineq1(const WeightedFamily& f);
/// pairwise <= 2^(1/r) max ||x_i||
InequalityMargin check_ineq2(const WeightedFamily& f);
/// pairwise <= 2^(1/r) ((k-1)/k)^(2/p-1) max ||x_i||; requires p <= 2.
InequalityMargin check_ineq3(const WeightedFamily& f);
/// Cross energy of the centered families against 2^(-1/r') (P(F)^r + P(G)^r)^(1/r).
InequalityMargin check_ineq4(const WeightedFamily& f, const WeightedFamily& g);

struct FuzzOptions {
  int families = 1000;
  int max_points = 8;
  int max_dim = 6;
  std::uint64_t seed = 0;
  int threads = 1;
  double tolerance = 1e-9;
};

struct FuzzCase {
  InequalityId id;
  WeightedFamily f;
  std::optional<WeightedFamily> g;  ///< set for two_family only
  InequalityMargin margin;
};

struct FuzzSummary {
  Exponent p = Exponent::finite(2.0);
  long checks = 0;
  /// Smallest margin per inequality (index id - 1); +inf when never checked.
  double worst_margin[4];
  std::vector<FuzzCase> violations;
};

/// Draws `families` random (F, G) pairs for exponent p and checks every
/// applicable inequality. Family i uses sub-seed i, so the corpus does not
/// depend on the thread count.
FuzzSummary fuzz_inequalities(Exponent p, const FuzzOptions& options);

/// Re-evaluates a stored case.
InequalityMargin recheck(const FuzzCase& c);

}  // namespace hulldev
