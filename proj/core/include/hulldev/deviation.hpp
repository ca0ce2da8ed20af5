#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hulldev/hull.hpp"
#include "hulldev/space.hpp"

namespace hulldev {

/// Finite point set inside B_R(0) whose convex hull deviation is measured.
struct PointConfig {
  std::vector<Vec> points;
  NormSpec spec = NormSpec::l2();
  double radius_bound = 1.0;

  /// Validates the points; radius_bound defaults to max ||a_i||. A supplied
  /// bound must cover every point to within 1e-9.
  static PointConfig make(std::vector<Vec> points, NormSpec spec, std::optional<double> radius_bound = std::nullopt);

  int dim() const { return static_cast<int>(points.front().size()); }
  int size() const { return static_cast<int>(points.size()); }
};

/// Which known bound on the CHD constant was binding. Enumerator order is the
/// tie-break precedence.
enum class BoundSource { dim_bound, lpn_bound, lp_bound, hilbert, two_dim, trivial_two, diameter };

const char* to_string(BoundSource s);

struct BoundTerm {
  BoundSource source;
  double value;
};

struct BoundResult {
  double upper = 2.0;
  BoundSource source = BoundSource::trivial_two;
  /// Every applicable term, in precedence order.
  std::vector<BoundTerm> terms;
};

struct DeviationWitness {
  BarycentricWeights weights;
  Vec point;
};

struct DeviationReport {
  double lower = 0.0;
  double upper = 0.0;
  DeviationWitness witness;
  BoundSource upper_source = BoundSource::trivial_two;
  int restarts_used = 0;
  std::uint64_t seed = 0;
};

struct AscentOptions {
  int max_sweeps = 10000;
  double min_improvement = 1e-10;
  int threads = 1;
};

/// min_i ||sum_j alpha_j a_j - a_i||: the deviation of one hull point.
double deviation_at(const PointConfig& cfg, const Vec& alphas);

/// Lower bound on h+(co D, D) by multistart local ascent over barycentric
/// weights. Each restart draws a support of at most dim + 1 points and a
/// Dirichlet(1,...,1) start, then alternates minorize-maximize linear-program
/// steps with pairwise weight exchanges (golden-section line search) until a
/// sweep improves by less than 1e-10. Deterministic in (cfg, restarts, seed);
/// restart i always uses sub-seed i, so more restarts never lower the result.
DeviationReport deviation_lower(const PointConfig& cfg, int restarts, std::uint64_t seed,
                                const AscentOptions& options = {});

/// Brute-force max of deviation_at over the barycentric grid {k_i / grid_steps},
/// refined by nested zoom grids around the best cells. Never exceeds the true
/// maximum. Test oracle; at most 5 points, grid_steps <= 500, 5e7 grid points.
double deviation_oracle(const PointConfig& cfg, int grid_steps);

/// Known bounds on the CHD constant of the space (unit ball, no diameter cap).
BoundResult space_bounds(const NormSpec& spec, int dim);

/// Minimum of all applicable bounds scaled by radius_bound, plus the
/// diameter of the configuration as an absolute cap.
BoundResult theoretical_bounds(const PointConfig& cfg);

/// deviation_lower combined with theoretical_bounds. Throws ConsistencyError
/// if lower exceeds upper by more than 1e-6.
DeviationReport chd_estimate(const PointConfig& cfg, int restarts, std::uint64_t seed,
                             const AscentOptions& options = {});

/// Standard basis of l_1^n.
PointConfig extremal_l1(int n);
/// Points a_ij = (-1)^{delta_ij} in l_inf^n.
PointConfig extremal_linf(int n);

struct SearchOptions {
  long budget = 10000;  ///< annealing steps
  std::uint64_t seed = 0;
  int inner_restarts = 2;
  int final_restarts = 32;
  double initial_temperature = 0.5;
  double cooling = 0.0;  ///< geometric factor; 0 cools to 1e-3 * T0 over the budget
  double move_scale = 1.0;  ///< perturbation sd = move_scale * max(T, T0 / 100)
  int threads = 1;
};

struct SearchResult {
  PointConfig best;
  DeviationReport report;
  long accepted_moves = 0;
};

/// Simulated annealing over k-point configurations in the unit ball.
SearchResult extremal_search(const NormSpec& spec, int dim, int k, const SearchOptions& options);

enum class XiMethod { grid2d, multistart };

const char* to_string(XiMethod m);

struct XiEstimate {
  double value = 0.0;
  Vec x;
  Vec y;
  Functional functional;
  XiMethod method = XiMethod::grid2d;
};

/// Value ||x - <p, x> y|| for unit x, y and p = norming_functional(y).
double xi_value(const Vec& x, const Vec& y, const NormSpec& spec);

/// Certified lower bound on sup ||x - <p, x> y|| over unit x, y with p in
/// J_1(y) (fixed selection). Planar spaces use a coarse-to-fine angular grid;
/// higher dimensions use multistart pattern search.
XiEstimate xi_estimate(const NormSpec& spec, int dim, long budget, std::uint64_t seed);

}  // namespace hulldev
