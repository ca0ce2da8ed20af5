#include "hulldev/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hulldev/errors.hpp"
#include "hulldev/parallel.hpp"
#include "hulldev/random.hpp"

namespace hulldev {

WeightedFamily WeightedFamily::make(std::vector<Vec> points, Vec weights, Exponent p) {
  check_point_set(points);
  if (weights.size() != static_cast<Eigen::Index>(points.size()))
    throw InvalidInput("weights and points differ in length");
  BarycentricWeights w{std::move(weights)};
  if (!w.valid()) throw InvalidInput("weights must be nonnegative and sum to 1");
  return WeightedFamily{std::move(points), std::move(w), p};
}

WeightedFamily WeightedFamily::uniform(std::vector<Vec> points, Exponent p) {
  const auto k = static_cast<Eigen::Index>(points.size());
  if (k == 0) throw InvalidInput("empty family");
  return make(std::move(points), Vec::Constant(k, 1.0 / static_cast<double>(k)), p);
}

double WeightedFamily::max_norm() const {
  double m = 0.0;
  for (const auto& x : points) m = std::max(m, lp_norm(x, p));
  return m;
}

const char* to_string(InequalityId id) {
  switch (id) {
    case InequalityId::centered: return "centered";
    case InequalityId::schoenberg: return "schoenberg";
    case InequalityId::refined: return "refined";
    case InequalityId::two_family: return "two_family";
  }
  return "?";
}

namespace {

// r = min(p, p') is at most 2, so it is always finite.
double r_of(const WeightedFamily& f) { return f.exponents().r.value(); }

double contraction(const WeightedFamily& f) { return std::pow(2.0, -f.exponents().r_dual.reciprocal()); }

InequalityMargin margin(InequalityId id, double lhs, double rhs) { return {lhs, rhs, rhs - lhs, id}; }

double pairwise_sum(const WeightedFamily& f, double r) {
  double s = 0.0;
  const auto& a = f.weights.alphas;
  for (int i = 0; i < f.size(); ++i)
    for (int j = i + 1; j < f.size(); ++j) {
      const double w = a[i] * a[j];
      if (w == 0.0) continue;
      s += 2.0 * w * std::pow(lp_norm(f.points[static_cast<std::size_t>(i)] - f.points[static_cast<std::size_t>(j)], f.p), r);
    }
  return s;
}

}  // namespace

double energy_pairwise(const WeightedFamily& f) {
  const double r = r_of(f);
  return std::pow(pairwise_sum(f, r), 1.0 / r);
}

double energy_centered(const WeightedFamily& f) {
  const double r = r_of(f);
  const Vec x0 = f.x0();
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i)
    s += f.weights.alphas[i] * std::pow(lp_norm(f.points[static_cast<std::size_t>(i)] - x0, f.p), r);
  return std::pow(s, 1.0 / r);
}

InequalityMargin check_ineq1(const WeightedFamily& f) {
  return margin(InequalityId::centered, energy_centered(f), contraction(f) * energy_pairwise(f));
}

InequalityMargin check_ineq2(const WeightedFamily& f) {
  const double r = r_of(f);
  return margin(InequalityId::schoenberg, energy_pairwise(f), std::pow(2.0, 1.0 / r) * f.max_norm());
}

InequalityMargin check_ineq3(const WeightedFamily& f) {
  if (Exponent::finite(2.0) < f.p) throw InvalidInput("refined inequality requires 1 <= p <= 2");
  const double r = r_of(f);
  const double k = f.size();
  const double factor = std::pow((k - 1.0) / k, 2.0 / f.p.value() - 1.0);
  return margin(InequalityId::refined, energy_pairwise(f), std::pow(2.0, 1.0 / r) * factor * f.max_norm());
}

InequalityMargin check_ineq4(const WeightedFamily& f, const WeightedFamily& g) {
  if (!(f.p == g.p)) throw InvalidInput("families use different exponents");
  if (f.dim() != g.dim()) throw InvalidInput("families live in different dimensions");
  const double r = r_of(f);
  const Vec x0 = f.x0(), y0 = g.x0();
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double ai = f.weights.alphas[i];
    if (ai == 0.0) continue;
    const Vec xi = f.points[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < g.size(); ++j) {
      const double bj = g.weights.alphas[j];
      if (bj == 0.0) continue;
      s += ai * bj * std::pow(lp_norm(xi - (g.points[static_cast<std::size_t>(j)] - y0), f.p), r);
    }
  }
  const double lhs = std::pow(s, 1.0 / r);
  const double rhs = contraction(f) * std::pow(pairwise_sum(f, r) + pairwise_sum(g, r), 1.0 / r);
  return margin(InequalityId::two_family, lhs, rhs);
}

InequalityMargin recheck(const FuzzCase& c) {
  switch (c.id) {
    case InequalityId::centered: return check_ineq1(c.f);
    case InequalityId::schoenberg: return check_ineq2(c.f);
    case InequalityId::refined: return check_ineq3(c.f);
    case InequalityId::two_family:
      if (!c.g) throw InvalidInput("two-family case without second family");
      return check_ineq4(c.f, *c.g);
  }
  throw InvalidInput("unknown inequality id");
}

namespace {

WeightedFamily random_family(Rng& rng, int k, int dim, Exponent p) {
  const double scale = std::exp(uniform(rng, std::log(1e-2), std::log(1e2)));
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) {
    if (i > 0 && uniform01(rng) < 0.1) {
      pts.push_back(pts[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i))]);
      continue;
    }
    Vec v(dim);
    for (int c = 0; c < dim; ++c) v[c] = uniform01(rng) < 0.2 ? 0.0 : scale * uniform(rng, -1.0, 1.0);
    pts.push_back(v);
  }
  Vec w = dirichlet_flat(rng, k);
  if (k > 1 && uniform01(rng) < 0.2) {
    w[static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(k))] = 0.0;
    const double total = w.sum();
    if (total > 0.0) w /= total;
    else w.setConstant(1.0 / k);
  }
  return WeightedFamily{std::move(pts), BarycentricWeights{std::move(w)}, p};
}

struct FamilyResult {
  std::vector<FuzzCase> cases;
};

}  // namespace

FuzzSummary fuzz_inequalities(Exponent p, const FuzzOptions& options) {
  if (options.families < 0) throw InvalidInput("families must be nonnegative");
  if (options.max_points < 1 || options.max_dim < 1) throw InvalidInput("max_points and max_dim must be >= 1");
  const bool refined = !(Exponent::finite(2.0) < p);
  std::vector<FamilyResult> results(static_cast<std::size_t>(options.families));
  parallel_for(options.families, options.threads, [&](int idx) {
    Rng rng = make_rng(options.seed, static_cast<std::uint64_t>(idx));
    const int dim = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(options.max_dim));
    const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(options.max_points));
    const int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(options.max_points));
    auto f = random_family(rng, k, dim, p);
    auto g = idx % 10 == 0 ? f : random_family(rng, l, dim, p);
    auto& out = results[static_cast<std::size_t>(idx)].cases;
    out.push_back({InequalityId::centered, f, std::nullopt, check_ineq1(f)});
    out.push_back({InequalityId::schoenberg, f, std::nullopt, check_ineq2(f)});
    if (refined) out.push_back({InequalityId::refined, f, std::nullopt, check_ineq3(f)});
    out.push_back({InequalityId::two_family, f, g, check_ineq4(f, g)});
  });

  FuzzSummary summary;
  summary.p = p;
  std::fill(std::begin(summary.worst_margin), std::end(summary.worst_margin), std::numeric_limits<double>::infinity());
  for (auto& r : results) {
    for (auto& c : r.cases) {
      ++summary.checks;
      // Margins are compared relative to the size of the right-hand side.
      const double tol = options.tolerance * std::max(1.0, c.margin.rhs);
      auto& worst = summary.worst_margin[static_cast<int>(c.id) - 1];
      worst = std::min(worst, c.margin.margin);
      if (c.margin.margin < -tol) summary.violations.push_back(std::move(c));
    }
  }
  return summary;
}

}  // namespace hulldev
