#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hulldev/space.hpp"

namespace hulldev {

/// Equal-radius balls B_r(c_i) under one norm.
struct BallSystem {
  std::vector<Vec> centers;
  double radius = 1.0;
  NormSpec spec = NormSpec::l2();

  static BallSystem make(std::vector<Vec> centers, double radius, NormSpec spec);
  int dim() const { return static_cast<int>(centers.front().size()); }
  int size() const { return static_cast<int>(centers.size()); }
};

using Simplex = std::vector<int>;

enum class Feasibility { feasible, infeasible, marginal };

const char* to_string(Feasibility f);

struct FeasibilityVerdict {
  Feasibility status = Feasibility::infeasible;
  std::optional<Vec> witness;
  /// radius - best achievable max-distance (upper bracket end for feasible
  /// and marginal verdicts, certified lower end for infeasible ones).
  double margin = 0.0;
  /// Certified bracket on min_x max_i ||x - c_i||.
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
};

struct IntersectOptions {
  double margin_tol = 1e-6;
  int max_iterations = 300;  ///< cutting-plane iterations; refinement uses 10x
};

/// Decides whether the balls indexed by `subset` share a point. Polytope norms
/// solve an exact linear program; smooth l_p norms bracket the min-max value by
/// cutting planes. Marginal means the value is within margin_tol of the radius
/// even after one refinement pass.
FeasibilityVerdict balls_intersect(const BallSystem& sys, const Simplex& subset, const IntersectOptions& options = {});

/// Downward-closed simplicial complex; simplices[d] holds the sorted
/// d-simplices in lexicographic order.
struct NerveComplex {
  int vertex_count = 0;
  int max_dim = 0;
  std::vector<std::vector<Simplex>> simplices;
  /// True when (max_dim + 1)-simplex candidates exist that were not tested.
  bool truncated = false;

  bool contains(const Simplex& s) const;
  std::vector<long> counts() const;
  long euler_characteristic() const;
  bool downward_closed() const;
  int top_dim() const;
};

struct NerveOptions {
  IntersectOptions intersect;
  int threads = 1;
};

/// Nerve of the ball system up to dimension max_dim. A simplex is tested only
/// when all its facets are present. Throws MarginalIntersection on a marginal
/// verdict.
NerveComplex build_nerve(const BallSystem& sys, int max_dim, const NerveOptions& options = {});

/// Betti numbers over GF(2).
struct BettiProfile {
  std::vector<long> betti;
  /// Betti numbers with b0 reduced by one.
  std::vector<long> reduced() const;
  bool reduced_trivial() const;
};

/// Ranks of Z/2 homology. Degrees run up to the top nonempty dimension, or to
/// max_dim - 1 when the complex is truncated (the top degree is then unknown).
BettiProfile betti_numbers(const NerveComplex& complex);

struct AdmissibilityReport {
  bool admissible = true;
  std::optional<Vec> uncovered;
  /// max over samples of (min_i ||s - c_i|| - radius)
  double worst_excess = 0.0;
  long samples = 0;
  int grid_steps = 0;
  int random_samples = 0;
};

/// Samples co(centers) on the barycentric grid of every (dim+1)-subset plus
/// Dirichlet draws; each sample must lie within the radius (+1e-9) of some
/// center. Sampling-based: a pass holds up to the stated resolution.
AdmissibilityReport check_admissible(const BallSystem& sys, int grid_steps, int random_samples, std::uint64_t seed);

struct SubCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExampleReport {
  BallSystem system;
  std::vector<SubCheck> checks;
  NerveComplex nerve;
  BettiProfile betti;
  bool passed() const;
};

/// Four unit balls in l_1^3 whose union is admissible but not contractible.
BallSystem example_l1_system();
ExampleReport verify_example_l1();

struct RandomAdmissibleOptions {
  int grid_steps = 12;
  int random_samples = 2000;
  double inflation = 1.05;
};

/// Centers drawn in the unit ball; radius is the smallest passing the coarse
/// admissibility check, inflated by 5%.
BallSystem random_admissible(const NormSpec& spec, int dim, int count, std::uint64_t seed,
                             const RandomAdmissibleOptions& options = {});

struct SectionCoverReport {
  double eta = 0.0;
  double worst_gauge = 0.0;  ///< max over samples of ||q - c|| / eta
  double lower_bound = 0.0;  ///< certified lower bound on the optimal sampled gauge
  Vec translate;
  Functional functional;     ///< normalized to dual norm 1
  double offset = 0.0;
  long samples = 0;
  double tol = 1e-4;
  bool passed = false;
};

/// Covers the section Q = B_1 n {<p,x> = offset} by a translate of
/// eta * (B_1 n ker p) with eta = min(2k/(k+1), space bound). Only hyperplane
/// sections (k = dim - 1) are supported.
SectionCoverReport section_cover_check(const NormSpec& spec, int dim, const Functional& functional, double offset,
                                       int k, int samples, std::uint64_t seed, double tol = 1e-4);

}  // namespace hulldev
