#include "hulldev/nerve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/QR>

#include "hulldev/deviation.hpp"
#include "hulldev/errors.hpp"
#include "hulldev/hull.hpp"
#include "hulldev/lp.hpp"
#include "hulldev/parallel.hpp"
#include "hulldev/random.hpp"
#include "minimax.hpp"

namespace hulldev {

namespace {

constexpr double kFeasibleTol = 1e-9;

double max_distance(const Vec& x, const BallSystem& sys, const Simplex& subset) {
  double g = 0.0;
  for (int i : subset) g = std::max(g, norm_of(x - sys.centers[static_cast<std::size_t>(i)], sys.spec));
  return g;
}

double min_distance(const Vec& x, const std::vector<Vec>& centers, const NormSpec& spec) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : centers) d = std::min(d, norm_of(x - c, spec));
  return d;
}

FeasibilityVerdict classify_exact(const BallSystem& sys, Vec witness, double lower, double upper) {
  FeasibilityVerdict v;
  v.lower = lower;
  v.upper = upper;
  v.margin = sys.radius - upper;
  if (upper <= sys.radius + kFeasibleTol) {
    v.status = Feasibility::feasible;
    v.witness = std::move(witness);
  } else {
    v.status = Feasibility::infeasible;
    v.margin = sys.radius - lower;
  }
  return v;
}

// min t s.t. ||x - c_i|| <= t for i in subset, for polytope norms.
FeasibilityVerdict polytope_intersect(const BallSystem& sys, const Simplex& subset) {
  const int n = sys.dim();
  const auto k = static_cast<int>(subset.size());
  const auto& spec = sys.spec;
  const bool l1 = spec.is_lp() && spec.exponent().is_one();
  std::vector<Vec> functionals;
  if (!l1) {
    if (spec.is_polyhedral()) {
      functionals = spec.functionals();
    } else {
      for (int j = 0; j < n; ++j) {
        functionals.push_back(Vec::Unit(n, j));
        functionals.push_back(-Vec::Unit(n, j));
      }
    }
  }
  const int num_vars = l1 ? n + 1 + k * n : n + 1;
  LinearProgram lp(num_vars);
  for (int j = 0; j < n; ++j) lp.set_free(j);
  Vec cost = Vec::Zero(num_vars);
  cost[n] = 1.0;
  lp.set_objective(cost);
  for (int a = 0; a < k; ++a) {
    const Vec& c = sys.centers[static_cast<std::size_t>(subset[static_cast<std::size_t>(a)])];
    if (l1) {
      // u_aj >= |x_j - c_j|, sum_j u_aj <= t
      Vec sum_row = Vec::Zero(num_vars);
      sum_row[n] = -1.0;
      for (int j = 0; j < n; ++j) {
        const int u = n + 1 + a * n + j;
        Vec row = Vec::Zero(num_vars);
        row[j] = 1.0;
        row[u] = -1.0;
        lp.add_le(row, c[j]);
        row[j] = -1.0;
        lp.add_le(row, -c[j]);
        sum_row[u] = 1.0;
      }
      lp.add_le(sum_row, 0.0);
    } else {
      for (const auto& f : functionals) {
        Vec row = Vec::Zero(num_vars);
        row.head(n) = f;
        row[n] = -1.0;
        lp.add_le(row, f.dot(c));
      }
    }
  }
  const auto sol = lp.solve();
  if (!sol.optimal()) throw ConsistencyError("ball intersection program did not reach an optimum");
  Vec x = sol.x.head(n);
  const double upper = max_distance(x, sys, subset);
  const double lower = std::min(sol.objective, upper);
  auto v = classify_exact(sys, std::move(x), lower, upper);
  v.iterations = 1;
  return v;
}

detail::KelleyResult smooth_minmax(const BallSystem& sys, const Simplex& subset, int max_iterations,
                                   double margin_tol) {
  const int n = sys.dim();
  Vec centroid = Vec::Zero(n);
  for (int i : subset) centroid += sys.centers[static_cast<std::size_t>(i)];
  centroid /= static_cast<double>(subset.size());
  const double g0 = max_distance(centroid, sys, subset);
  // Every minimizer lies in B(c_i, g0) for each i; the sup-norm is dominated by
  // every l_p norm, so the box intersection of the coordinate ranges is safe.
  Vec lo = Vec::Constant(n, -std::numeric_limits<double>::infinity());
  Vec hi = Vec::Constant(n, std::numeric_limits<double>::infinity());
  for (int i : subset) {
    lo = lo.cwiseMax((sys.centers[static_cast<std::size_t>(i)].array() - g0).matrix());
    hi = hi.cwiseMin((sys.centers[static_cast<std::size_t>(i)].array() + g0).matrix());
  }
  hi = hi.cwiseMax(lo);

  detail::CutOracle oracle = [&](const Vec& x, std::vector<detail::Cut>& cuts) {
    double g = 0.0;
    for (int i : subset) {
      const Vec& c = sys.centers[static_cast<std::size_t>(i)];
      const Vec z = x - c;
      if (z.isZero(0.0)) {
        cuts.push_back({Vec::Zero(n), 0.0});
        continue;
      }
      const Vec f = norming_functional(z, sys.spec).coeffs;
      cuts.push_back({f, -f.dot(c)});
      g = std::max(g, norm_of(z, sys.spec));
    }
    return g;
  };
  detail::KelleyOptions opts;
  opts.max_iterations = max_iterations;
  opts.stop_upper = sys.radius + kFeasibleTol;
  opts.stop_lower = sys.radius + margin_tol;
  opts.gap_tol = 1e-11 * std::max(1.0, sys.radius);
  opts.bundle_cap = 16 * (n + 1);
  return detail::kelley_minimize(oracle, lo, hi, centroid, opts);
}

}  // namespace

BallSystem BallSystem::make(std::vector<Vec> centers, double radius, NormSpec spec) {
  const int dim = check_point_set(centers);
  spec.check_dim(dim);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("radius must be positive and finite");
  return BallSystem{std::move(centers), radius, std::move(spec)};
}

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::feasible: return "feasible";
    case Feasibility::infeasible: return "infeasible";
    case Feasibility::marginal: return "marginal";
  }
  return "?";
}

FeasibilityVerdict balls_intersect(const BallSystem& sys, const Simplex& subset_in, const IntersectOptions& options) {
  if (subset_in.empty()) throw InvalidInput("subset must be nonempty");
  Simplex subset = subset_in;
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end()) throw InvalidInput("subset has repeated indices");
  if (subset.front() < 0 || subset.back() >= sys.size()) throw InvalidInput("subset index out of range");

  if (subset.size() == 1) {
    FeasibilityVerdict v;
    v.status = Feasibility::feasible;
    v.witness = sys.centers[static_cast<std::size_t>(subset[0])];
    v.margin = sys.radius;
    return v;
  }
  if (subset.size() == 2) {
    // The midpoint is optimal: any x has max distance >= ||c1 - c2|| / 2.
    const Vec& a = sys.centers[static_cast<std::size_t>(subset[0])];
    const Vec& b = sys.centers[static_cast<std::size_t>(subset[1])];
    const Vec mid = 0.5 * (a + b);
    const double g = max_distance(mid, sys, subset);
    return classify_exact(sys, mid, std::min(g, 0.5 * norm_of(a - b, sys.spec)), g);
  }
  if (sys.spec.is_polytope()) return polytope_intersect(sys, subset);

  FeasibilityVerdict v;
  int budget = options.max_iterations;
  for (int pass = 0; pass < 2; ++pass, budget *= 10) {
    const auto res = smooth_minmax(sys, subset, budget, options.margin_tol);
    v.lower = res.lower;
    v.upper = res.upper;
    v.iterations += res.iterations;
    v.margin = sys.radius - res.upper;
    if (res.upper <= sys.radius + kFeasibleTol) {
      v.status = Feasibility::feasible;
      v.witness = res.best;
      return v;
    }
    if (res.lower >= sys.radius + options.margin_tol) {
      v.status = Feasibility::infeasible;
      v.margin = sys.radius - res.lower;
      return v;
    }
    v.status = Feasibility::marginal;
    v.witness = res.best;
  }
  return v;
}

// ---- complexes ---------------------------------------------------------------

bool NerveComplex::contains(const Simplex& s) const {
  if (s.empty()) return false;
  const auto d = s.size() - 1;
  if (d >= simplices.size()) return false;
  return std::binary_search(simplices[d].begin(), simplices[d].end(), s);
}

std::vector<long> NerveComplex::counts() const {
  std::vector<long> out;
  for (const auto& level : simplices) out.push_back(static_cast<long>(level.size()));
  return out;
}

long NerveComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < simplices.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(simplices[d].size());
  return chi;
}

bool NerveComplex::downward_closed() const {
  if (simplices.empty() || static_cast<int>(simplices[0].size()) != vertex_count) return false;
  for (std::size_t d = 1; d < simplices.size(); ++d) {
    for (const auto& s : simplices[d]) {
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        if (!contains(face)) return false;
      }
    }
  }
  return true;
}

int NerveComplex::top_dim() const {
  int top = -1;
  for (std::size_t d = 0; d < simplices.size(); ++d)
    if (!simplices[d].empty()) top = static_cast<int>(d);
  return top;
}

namespace {

// (d+1)-simplices all of whose facets are in `level` (sorted d-simplices).
std::vector<Simplex> candidates(const std::vector<Simplex>& level, int vertex_count) {
  std::vector<Simplex> out;
  for (const auto& s : level) {
    for (int v = s.back() + 1; v < vertex_count; ++v) {
      Simplex t = s;
      t.push_back(v);
      bool ok = true;
      for (std::size_t drop = 0; ok && drop + 1 < t.size(); ++drop) {
        Simplex face;
        for (std::size_t i = 0; i < t.size(); ++i)
          if (i != drop) face.push_back(t[i]);
        ok = std::binary_search(level.begin(), level.end(), face);
      }
      if (ok) out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

NerveComplex build_nerve(const BallSystem& sys, int max_dim, const NerveOptions& options) {
  if (max_dim < 0 || max_dim > sys.size() - 1) throw InvalidInput("max_dim must lie in [0, vertex_count - 1]");
  NerveComplex k;
  k.vertex_count = sys.size();
  k.max_dim = max_dim;
  k.simplices.resize(static_cast<std::size_t>(max_dim) + 1);
  for (int v = 0; v < sys.size(); ++v) k.simplices[0].push_back({v});

  for (int d = 1; d <= max_dim; ++d) {
    const auto cand = candidates(k.simplices[static_cast<std::size_t>(d) - 1], sys.size());
    std::vector<FeasibilityVerdict> verdicts(cand.size());
    parallel_for(static_cast<int>(cand.size()), options.threads, [&](int i) {
      verdicts[static_cast<std::size_t>(i)] = balls_intersect(sys, cand[static_cast<std::size_t>(i)], options.intersect);
    });
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const auto& v = verdicts[i];
      if (v.status == Feasibility::marginal) throw MarginalIntersection(cand[i], std::abs(v.upper - sys.radius));
      if (v.status == Feasibility::feasible) k.simplices[static_cast<std::size_t>(d)].push_back(cand[i]);
    }
  }
  k.truncated = max_dim < sys.size() - 1 && !candidates(k.simplices.back(), sys.size()).empty();
  return k;
}

// ---- homology ----------------------------------------------------------------

namespace {

using Bits = std::vector<std::uint64_t>;

long gf2_rank(std::vector<Bits> rows) {
  long rank = 0;
  std::map<std::size_t, Bits> pivots;  // pivot bit -> reduced row
  for (auto& row : rows) {
    while (true) {
      std::size_t lead = std::numeric_limits<std::size_t>::max();
      for (std::size_t w = 0; w < row.size(); ++w) {
        if (row[w]) {
          lead = w * 64 + static_cast<std::size_t>(std::countr_zero(row[w]));
          break;
        }
      }
      if (lead == std::numeric_limits<std::size_t>::max()) break;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, row);
        ++rank;
        break;
      }
      for (std::size_t w = 0; w < row.size(); ++w) row[w] ^= it->second[w];
    }
  }
  return rank;
}

// Rank of the boundary map from d-simplices to (d-1)-simplices.
long boundary_rank(const NerveComplex& k, std::size_t d) {
  if (d == 0 || d >= k.simplices.size() || k.simplices[d].empty()) return 0;
  const auto& faces = k.simplices[d - 1];
  const std::size_t words = (faces.size() + 63) / 64;
  std::vector<Bits> rows;
  rows.reserve(k.simplices[d].size());
  for (const auto& s : k.simplices[d]) {
    Bits row(words, 0);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != drop) face.push_back(s[i]);
      const auto idx = static_cast<std::size_t>(std::lower_bound(faces.begin(), faces.end(), face) - faces.begin());
      row[idx / 64] ^= std::uint64_t{1} << (idx % 64);
    }
    rows.push_back(std::move(row));
  }
  return gf2_rank(std::move(rows));
}

}  // namespace

std::vector<long> BettiProfile::reduced() const {
  auto r = betti;
  if (!r.empty()) r[0] -= 1;
  return r;
}

bool BettiProfile::reduced_trivial() const {
  const auto r = reduced();
  return std::all_of(r.begin(), r.end(), [](long b) { return b == 0; });
}

BettiProfile betti_numbers(const NerveComplex& k) {
  BettiProfile out;
  if (k.vertex_count == 0) return out;
  const int top = k.truncated ? k.max_dim - 1 : k.top_dim();
  std::vector<long> ranks(static_cast<std::size_t>(top) + 2, 0);
  for (int d = 1; d <= top + 1; ++d) ranks[static_cast<std::size_t>(d)] = boundary_rank(k, static_cast<std::size_t>(d));
  for (int d = 0; d <= top; ++d) {
    const long n = static_cast<long>(k.simplices[static_cast<std::size_t>(d)].size());
    out.betti.push_back(n - ranks[static_cast<std::size_t>(d)] - ranks[static_cast<std::size_t>(d) + 1]);
  }
  return out;
}

// ---- admissibility -------------------------------------------------------------

namespace {

template <class Fn>
void for_each_combination(int n, int r, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(idx);
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j) - 1] + 1;
  }
}

template <class Fn>
void for_each_grid_point(const std::vector<Vec>& verts, int steps, Fn&& fn) {
  const int m = static_cast<int>(verts.size());
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  Vec x(verts.front().size());
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == m - 1) {
      counts[static_cast<std::size_t>(idx)] = remaining;
      x.setZero();
      for (int i = 0; i < m; ++i)
        if (counts[static_cast<std::size_t>(i)]) x += (static_cast<double>(counts[static_cast<std::size_t>(i)]) / steps) * verts[static_cast<std::size_t>(i)];
      fn(x);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      counts[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  rec(rec, 0, steps);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr double kSampleBudget = 5e7;

// Calls fn(sample) over the grid of every support subset, then the random draws.
template <class Fn>
void for_each_hull_sample(const std::vector<Vec>& centers, int grid_steps, int random_samples, std::uint64_t seed,
                          Fn&& fn) {
  const int count = static_cast<int>(centers.size());
  const int dim = static_cast<int>(centers.front().size());
  const int support = std::min(count, dim + 1);
  const double total = binomial(count, support) * binomial(grid_steps + support - 1, support - 1);
  if (total > kSampleBudget) throw BudgetExceeded("admissibility grid exceeds the sample budget");
  for_each_combination(count, support, [&](const std::vector<int>& idx) {
    std::vector<Vec> verts;
    for (int i : idx) verts.push_back(centers[static_cast<std::size_t>(i)]);
    for_each_grid_point(verts, grid_steps, fn);
  });
  Rng rng = make_rng(seed, 0xad31);
  for (int s = 0; s < random_samples; ++s) {
    const Vec w = dirichlet_flat(rng, count);
    Vec x = Vec::Zero(dim);
    for (int i = 0; i < count; ++i) x += w[i] * centers[static_cast<std::size_t>(i)];
    fn(x);
  }
}

}  // namespace

AdmissibilityReport check_admissible(const BallSystem& sys, int grid_steps, int random_samples, std::uint64_t seed) {
  if (grid_steps < 10) throw InvalidInput("grid_steps must be >= 10");
  if (random_samples < 0) throw InvalidInput("random_samples must be nonnegative");
  AdmissibilityReport rep;
  rep.grid_steps = grid_steps;
  rep.random_samples = random_samples;
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for_each_hull_sample(sys.centers, grid_steps, random_samples, seed, [&](const Vec& x) {
    ++rep.samples;
    const double excess = min_distance(x, sys.centers, sys.spec) - sys.radius;
    rep.worst_excess = std::max(rep.worst_excess, excess);
    if (excess > kFeasibleTol && rep.admissible) {
      rep.admissible = false;
      rep.uncovered = x;
    }
  });
  return rep;
}

// ---- the four-ball example -------------------------------------------------------

BallSystem example_l1_system() {
  auto v = [](double a, double b, double c) {
    Vec x(3);
    x << a, b, c;
    return x;
  };
  return BallSystem::make({v(-2.0 / 3, 1.0 / 3, 1.0 / 3), v(1.0 / 3, -2.0 / 3, 1.0 / 3), v(1.0 / 3, 1.0 / 3, -2.0 / 3),
                           v(-1.0 / 6, -1.0 / 6, -1.0 / 6)},
                          1.0, NormSpec::l1());
}

bool ExampleReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.passed; });
}

ExampleReport verify_example_l1() {
  ExampleReport rep;
  rep.system = example_l1_system();
  const auto& sys = rep.system;
  auto fmt = [](auto&&... parts) {
    std::ostringstream os;
    os.precision(17);
    (os << ... << parts);
    return os.str();
  };

  const auto adm = check_admissible(sys, 100, 1000, 0);
  rep.checks.push_back({"admissible", adm.admissible,
                        fmt("grid_steps=100 samples=", adm.samples, " worst_excess=", adm.worst_excess)});

  rep.nerve = build_nerve(sys, 3);
  const auto counts = rep.nerve.counts();
  const bool sphere = counts == std::vector<long>{4, 6, 4, 0} && rep.nerve.downward_closed();
  rep.checks.push_back({"nerve_boundary_of_tetrahedron", sphere,
                        fmt("simplex counts ", counts[0], ",", counts[1], ",", counts[2], ",", counts[3])});

  rep.betti = betti_numbers(rep.nerve);
  const bool betti_ok = rep.betti.betti == std::vector<long>{1, 0, 1};
  std::string betti_text;
  for (std::size_t i = 0; i < rep.betti.betti.size(); ++i) betti_text += (i ? "," : "") + std::to_string(rep.betti.betti[i]);
  rep.checks.push_back({"betti_1_0_1", betti_ok, "betti " + betti_text});

  auto v = [](double a, double b, double c) {
    Vec x(3);
    x << a, b, c;
    return x;
  };
  const std::vector<Vec> delta = {v(1.0 / 3, 1.0 / 12, 1.0 / 12), v(1.0 / 12, 1.0 / 3, 1.0 / 12),
                                  v(1.0 / 12, 1.0 / 12, 1.0 / 3), v(1.0 / 3, 1.0 / 3, 1.0 / 3)};
  double worst = -std::numeric_limits<double>::infinity();
  long facet_samples = 0;
  for_each_combination(4, 3, [&](const std::vector<int>& idx) {
    std::vector<Vec> verts;
    for (int i : idx) verts.push_back(delta[static_cast<std::size_t>(i)]);
    for_each_grid_point(verts, 200, [&](const Vec& x) {
      ++facet_samples;
      worst = std::max(worst, min_distance(x, sys.centers, sys.spec) - sys.radius);
    });
  });
  rep.checks.push_back({"tetrahedron_boundary_covered", worst <= kFeasibleTol,
                        fmt("grid_steps=200 samples=", facet_samples, " worst_excess=", worst)});

  const Vec w = Vec::Constant(3, 5.0 / 24);
  bool all_far = true;
  std::string dists;
  for (std::size_t i = 0; i < sys.centers.size(); ++i) {
    const double d = norm_of(w - sys.centers[i], sys.spec);
    all_far = all_far && std::abs(d - 9.0 / 8.0) <= 1e-12;
    dists += fmt(i ? "," : "", d);
  }
  rep.checks.push_back({"interior_point_uncovered", all_far, "distances " + dists});
  return rep;
}

// ---- generators ------------------------------------------------------------------

BallSystem random_admissible(const NormSpec& spec, int dim, int count, std::uint64_t seed,
                             const RandomAdmissibleOptions& options) {
  if (dim < 2) throw InvalidInput("random admissible systems need dim >= 2");
  if (count < 1) throw InvalidInput("count must be >= 1");
  spec.check_dim(dim);
  Rng rng = make_rng(seed, 0xba11);
  const double box = euclidean_radius(spec, dim);
  std::vector<Vec> centers;
  for (int i = 0; i < count; ++i) {
    Vec x(dim);
    do {
      for (int j = 0; j < dim; ++j) x[j] = uniform(rng, -box, box);
    } while (norm_of(x, spec) > 1.0);
    centers.push_back(x);
  }
  double cover = 0.0;
  for_each_hull_sample(centers, options.grid_steps, options.random_samples, seed,
                       [&](const Vec& x) { cover = std::max(cover, min_distance(x, centers, spec)); });
  const double radius = cover > 0.0 ? options.inflation * cover : 1.0;
  return BallSystem::make(std::move(centers), radius, spec);
}

// ---- section covering --------------------------------------------------------------

SectionCoverReport section_cover_check(const NormSpec& spec, int dim, const Functional& functional, double offset,
                                       int k, int samples, std::uint64_t seed, double tol) {
  if (dim < 2) throw InvalidInput("section covering needs dim >= 2");
  spec.check_dim(dim);
  if (k != dim - 1) throw InvalidInput("only hyperplane sections (k = dim - 1) are supported");
  if (functional.coeffs.size() != dim) throw InvalidInput("functional dimension mismatch");
  if (functional.coeffs.isZero(0.0)) throw InvalidInput("functional must be nonzero");
  if (!(std::abs(offset) < 1.0)) throw InvalidInput("|offset| must be < 1");
  if (samples < 4) throw InvalidInput("samples must be >= 4");
  if (!(tol > 0.0)) throw InvalidInput("tol must be positive");

  SectionCoverReport rep;
  rep.offset = offset;
  rep.tol = tol;
  const Vec p = functional.coeffs / dual_norm(functional.coeffs, spec);
  rep.functional = Functional{p};
  rep.eta = std::min(2.0 * k / (k + 1.0), space_bounds(spec, dim).upper);

  const Vec u0 = dual_attainer(p, spec);
  const Vec q0 = offset * u0;
  Eigen::MatrixXd pm(dim, 1);
  pm.col(0) = p;
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(pm).householderQ();
  const Eigen::MatrixXd basis = q.rightCols(dim - 1);

  Rng rng = make_rng(seed, 0x5ec7);
  std::vector<Vec> pts{q0};
  const int boundary = samples / 2;
  for (int s = 0; s < boundary; ++s) {
    const Vec d = basis * gaussian_direction(rng, dim - 1);
    double hi_s = 1.0;
    while (norm_of(q0 + hi_s * d, spec) <= 1.0) hi_s *= 2.0;
    double lo_s = 0.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo_s + hi_s);
      (norm_of(q0 + mid * d, spec) <= 1.0 ? lo_s : hi_s) = mid;
    }
    pts.push_back(q0 + lo_s * d);
  }
  const double half = 2.0 * euclidean_radius(spec, dim);
  const long max_attempts = 1000L * samples;
  long attempts = 0;
  while (static_cast<int>(pts.size()) < samples + 1) {
    if (++attempts > max_attempts) throw BudgetExceeded("rejection sampling on the section failed");
    Vec z(dim - 1);
    for (int j = 0; j < dim - 1; ++j) z[j] = uniform(rng, -half, half);
    const Vec x = q0 + basis * z;
    if (norm_of(x, spec) <= 1.0) pts.push_back(x);
  }
  rep.samples = static_cast<long>(pts.size());

  // G(t) = max_s ||q_s - q0 - V t||, minimized over translates in the hyperplane.
  double g0 = 0.0;
  for (const auto& x : pts) g0 = std::max(g0, norm_of(x - q0, spec));
  const double reach = 2.0 * g0 * euclidean_radius(spec, dim) + 1e-12;
  const Vec lo = Vec::Constant(dim - 1, -reach), hi = Vec::Constant(dim - 1, reach);
  detail::CutOracle oracle = [&](const Vec& t, std::vector<detail::Cut>& cuts) {
    const Vec c = q0 + basis * t;
    std::vector<std::pair<double, std::size_t>> vals;
    vals.reserve(pts.size());
    for (std::size_t s = 0; s < pts.size(); ++s) vals.emplace_back(norm_of(pts[s] - c, spec), s);
    const std::size_t top = std::min<std::size_t>(4, vals.size());
    std::partial_sort(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(top), vals.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (std::size_t j = 0; j < top; ++j) {
      const Vec z = pts[vals[j].second] - c;
      if (z.isZero(0.0)) continue;
      const Vec f = norming_functional(z, spec).coeffs;
      cuts.push_back({-(basis.transpose() * f), f.dot(pts[vals[j].second] - q0)});
    }
    if (cuts.empty()) cuts.push_back({Vec::Zero(dim - 1), 0.0});
    return vals.front().first;
  };
  detail::KelleyOptions opts;
  opts.max_iterations = 600;
  opts.gap_tol = 1e-9;
  opts.bundle_cap = 120;
  const auto res = detail::kelley_minimize(oracle, lo, hi, Vec::Zero(dim - 1), opts);
  rep.translate = q0 + basis * res.best;
  rep.worst_gauge = res.upper / rep.eta;
  rep.lower_bound = std::max(0.0, res.lower) / rep.eta;
  rep.passed = rep.worst_gauge <= 1.0 + tol;
  return rep;
}

}  // namespace hulldev
