#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hulldev/space.hpp"

namespace hulldev {

/// Convex-combination weights, one per generator point.
struct BarycentricWeights {
  Vec alphas;

  /// Nonnegative entries summing to one within 1e-12.
  bool valid(double tol = 1e-12) const;
  Vec combine(std::span<const Vec> points) const;
};

enum class HullMethod { exact_lp, conditional_gradient };

const char* to_string(HullMethod m);

struct HullDistanceResult {
  double distance = 0.0;
  BarycentricWeights minimizer;
  Vec ambient_point;
  HullMethod method = HullMethod::exact_lp;
  /// Certified optimality gap: distance minus a dual lower bound.
  double gap = 0.0;
  bool converged = true;
  long iterations = 0;
};

struct HullOptions {
  /// Stopping gap; nonpositive selects the default for the chosen method.
  double tol = 0.0;
  /// Forces a method. Conditional gradient accepts any norm (nonsmooth norms are
  /// handled by log-sum-exp smoothing); the exact program needs a polytope ball.
  std::optional<HullMethod> method;
  long max_iterations = 100000;
};

inline constexpr double kDefaultExactTol = 1e-7;
inline constexpr double kDefaultIterativeTol = 1e-5;

/// min_i ||x - a_i||.
double dist_point_to_set(const Vec& x, std::span<const Vec> points, const NormSpec& spec);

/// Distance from x to co{points}. l_1, l_inf and polyhedral norms go through
/// an epigraph linear program; smooth l_p through away-step conditional
/// gradient with a duality-gap stopping rule. A run that hits the iteration
/// budget returns its best iterate with converged = false.
HullDistanceResult dist_to_hull(const Vec& x, std::span<const Vec> points, const NormSpec& spec,
                                const HullOptions& options = {});

/// Exact feasibility of x = sum alpha_i a_i over the simplex (residual <= 1e-9).
bool hull_membership(const Vec& x, std::span<const Vec> points);

/// Throws InvalidInput on an empty set or mixed dimensions; returns the dimension.
int check_point_set(std::span<const Vec> points);

}  // namespace hulldev
