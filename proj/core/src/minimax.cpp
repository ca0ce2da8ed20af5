#include "minimax.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "hulldev/lp.hpp"

namespace hulldev::detail {

namespace {

struct ModelSolution {
  bool ok = false;
  Eigen::VectorXd x;
  double value = 0.0;
};

// min t over lo <= x <= hi subject to t >= a_j.x + b_j, with x = lo + z and
// t = s + max_j c_j so that every row has a nonnegative right-hand side.
ModelSolution minimize_model(const std::deque<Cut>& cuts, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const int n = static_cast<int>(lo.size());
  std::vector<double> c(cuts.size());
  double cmax = -1e300;
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    c[j] = cuts[j].b + cuts[j].a.dot(lo);
    cmax = std::max(cmax, c[j]);
  }
  LinearProgram lp(n + 1);
  lp.set_free(n);
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + 1);
  cost[n] = 1.0;
  lp.set_objective(cost);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd row = Eigen::VectorXd::Zero(n + 1);
    row[k] = 1.0;
    lp.add_le(row, hi[k] - lo[k]);
  }
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    Eigen::VectorXd row(n + 1);
    row.head(n) = cuts[j].a;
    row[n] = -1.0;
    lp.add_le(row, cmax - c[j]);
  }
  const auto sol = lp.solve();
  ModelSolution out;
  if (!sol.optimal()) return out;
  out.ok = true;
  out.x = lo + sol.x.head(n).cwiseMax(0.0).cwiseMin(hi - lo);
  out.value = sol.x[n] + cmax;
  return out;
}

}  // namespace

KelleyResult kelley_minimize(const CutOracle& oracle, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                             const Eigen::VectorXd& x0, const KelleyOptions& options) {
  KelleyResult res;
  std::deque<Cut> bundle;
  std::vector<Cut> fresh;

  Eigen::VectorXd x = x0.cwiseMax(lo).cwiseMin(hi);
  res.best = x;
  res.upper = oracle(x, fresh);
  bundle.insert(bundle.end(), fresh.begin(), fresh.end());

  for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
    if (res.upper <= options.stop_upper) break;
    const auto model = minimize_model(bundle, lo, hi);
    if (!model.ok) break;
    res.lower = std::max(res.lower, model.value);
    if (res.lower >= options.stop_lower || res.upper - res.lower <= options.gap_tol) break;

    if (static_cast<int>(bundle.size()) > options.bundle_cap) {
      const double slack_tol = 1e-9 * (1.0 + std::abs(model.value));
      std::deque<Cut> kept;
      auto excess = static_cast<long>(bundle.size()) - options.bundle_cap;
      for (auto& cut : bundle) {
        const bool tight = cut.a.dot(model.x) + cut.b >= model.value - slack_tol;
        if (!tight && excess > 0) {
          --excess;
          continue;
        }
        kept.push_back(std::move(cut));
      }
      bundle = std::move(kept);
    }

    fresh.clear();
    const double g = oracle(model.x, fresh);
    bundle.insert(bundle.end(), fresh.begin(), fresh.end());
    if (g < res.upper) {
      res.upper = g;
      res.best = model.x;
    }
  }
  return res;
}

}  // namespace hulldev::detail
