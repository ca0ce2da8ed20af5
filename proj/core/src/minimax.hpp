#pragma once

// Kelley cutting-plane minimization of a convex function over a box, with a
// certified bracket [lower, upper] on the minimum.

#include <functional>
#include <vector>

#include <Eigen/Core>

namespace hulldev::detail {

/// Affine minorant: g(y) >= a.y + b for every y.
struct Cut {
  Eigen::VectorXd a;
  double b;
};

/// Evaluates g at x and appends at least one cut tight (or nearly so) at x.
using CutOracle = std::function<double(const Eigen::VectorXd& x, std::vector<Cut>& cuts)>;

struct KelleyOptions {
  int max_iterations = 400;
  double gap_tol = 1e-10;
  /// Stop once upper <= stop_upper or lower >= stop_lower.
  double stop_upper = -1e300;
  double stop_lower = 1e300;
  int bundle_cap = 200;
};

struct KelleyResult {
  Eigen::VectorXd best;
  double upper = 0.0;
  double lower = -1e300;
  int iterations = 0;
};

/// Minimizes g over [lo, hi], starting from x0 (clamped into the box). The
/// lower bound is the minimum of the cutting-plane model over the box, so it
/// stays valid when cuts are dropped to respect the bundle cap.
KelleyResult kelley_minimize(const CutOracle& oracle, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                             const Eigen::VectorXd& x0, const KelleyOptions& options);

}  // namespace hulldev::detail
