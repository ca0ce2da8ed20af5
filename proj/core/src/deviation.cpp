#include "hulldev/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hulldev/errors.hpp"
#include "hulldev/lp.hpp"
#include "hulldev/parallel.hpp"
#include "hulldev/random.hpp"

namespace hulldev {

const char* to_string(BoundSource s) {
  switch (s) {
    case BoundSource::dim_bound: return "dim_bound";
    case BoundSource::lpn_bound: return "lpn_bound";
    case BoundSource::lp_bound: return "lp_bound";
    case BoundSource::hilbert: return "hilbert";
    case BoundSource::two_dim: return "two_dim";
    case BoundSource::trivial_two: return "trivial_two";
    case BoundSource::diameter: return "diameter";
  }
  return "?";
}

const char* to_string(XiMethod m) { return m == XiMethod::grid2d ? "grid2d" : "multistart"; }

PointConfig PointConfig::make(std::vector<Vec> points, NormSpec spec, std::optional<double> radius_bound) {
  const int dim = check_point_set(points);
  spec.check_dim(dim);
  double r = 0.0;
  for (const auto& p : points) r = std::max(r, norm_of(p, spec));
  if (radius_bound) {
    if (!(*radius_bound > 0.0) || !std::isfinite(*radius_bound)) throw InvalidInput("radius_bound must be positive");
    if (r > *radius_bound + 1e-9) throw InvalidInput("a point lies outside B_R(0) for the given radius_bound");
    r = *radius_bound;
  }
  if (r == 0.0) r = 1.0;  // all points at the origin
  return PointConfig{std::move(points), std::move(spec), r};
}

double deviation_at(const PointConfig& cfg, const Vec& alphas) {
  Vec b = Vec::Zero(cfg.dim());
  for (int j = 0; j < cfg.size(); ++j)
    if (alphas[j] != 0.0) b += alphas[j] * cfg.points[static_cast<std::size_t>(j)];
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : cfg.points) best = std::min(best, norm_of(b - a, cfg.spec));
  return best;
}

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

struct Candidate {
  double value = -1.0;
  Vec alphas;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value > b.value;
  return lex_less(a.alphas, b.alphas);
}

class LocalAscent {
 public:
  LocalAscent(const PointConfig& cfg, std::vector<int> support, const AscentOptions& opts)
      : cfg_(cfg), support_(std::move(support)), opts_(opts) {}

  Candidate run(Vec alphas) {
    double f = deviation_at(cfg_, alphas);
    for (int sweep = 0; sweep < opts_.max_sweeps; ++sweep) {
      const double start = f;
      minorize_step(alphas, f);
      exchange_sweep(alphas, f);
      if (f - start < opts_.min_improvement) break;
    }
    return Candidate{f, std::move(alphas)};
  }

 private:
  // Each ||b - a_i|| is convex in b, so <g_i, b - a_i> with g_i in J_1(b - a_i)
  // is a global minorant that is tight at the current b. Maximizing the
  // minimum of the minorants over the support simplex is a linear program
  // whose optimum can only raise the true objective.
  void minorize_step(Vec& alphas, double& f) {
    const int s = static_cast<int>(support_.size());
    if (s < 2) return;
    const Vec b = combine(alphas);
    LinearProgram lp(s + 1);  // beta (s), t (free)
    lp.set_free(s);
    Vec cost = Vec::Zero(s + 1);
    cost[s] = -1.0;
    lp.set_objective(cost);
    Vec simplex_row = Vec::Zero(s + 1);
    simplex_row.head(s).setOnes();
    lp.add_eq(simplex_row, 1.0);
    for (const auto& a : cfg_.points) {
      const Vec z = b - a;
      Vec g = Vec::Zero(z.size());
      if (!z.isZero(0.0)) g = norming_functional(z, cfg_.spec).coeffs;
      // t <= sum_j beta_j <g, a_{S_j}> - <g, a>
      Vec row(s + 1);
      for (int j = 0; j < s; ++j) row[j] = -g.dot(cfg_.points[static_cast<std::size_t>(support_[j])]);
      row[s] = 1.0;
      lp.add_le(row, -g.dot(a));
    }
    const auto sol = lp.solve();
    if (!sol.optimal()) return;
    Vec next = Vec::Zero(cfg_.size());
    for (int j = 0; j < s; ++j) next[support_[j]] = std::max(0.0, sol.x[j]);
    const double total = next.sum();
    if (!(total > 0.0)) return;
    next /= total;
    const double fn = deviation_at(cfg_, next);
    if (fn > f) {
      f = fn;
      alphas = std::move(next);
    }
  }

  void exchange_sweep(Vec& alphas, double& f) {
    const int s = static_cast<int>(support_.size());
    for (int u = 0; u < s; ++u) {
      for (int v = u + 1; v < s; ++v) {
        const int j = support_[u], l = support_[v];
        const double lo = -alphas[j], hi = alphas[l];
        if (hi - lo <= 0.0) continue;
        auto value_at = [&](double tau) {
          Vec trial = alphas;
          trial[j] += tau;
          trial[l] -= tau;
          trial[j] = std::max(trial[j], 0.0);
          trial[l] = std::max(trial[l], 0.0);
          return deviation_at(cfg_, trial);
        };
        const double tau = golden_max(value_at, lo, hi);
        const double ft = value_at(tau);
        if (ft > f) {
          alphas[j] = std::max(alphas[j] + tau, 0.0);
          alphas[l] = std::max(alphas[l] - tau, 0.0);
          alphas /= alphas.sum();
          f = deviation_at(cfg_, alphas);
        }
      }
    }
  }

  template <class F>
  static double golden_max(F&& fn, double lo, double hi) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = fn(c), fd = fn(d);
    for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = fn(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = fn(d);
      }
    }
    return fc >= fd ? c : d;
  }

  Vec combine(const Vec& alphas) const {
    Vec b = Vec::Zero(cfg_.dim());
    for (int j = 0; j < cfg_.size(); ++j)
      if (alphas[j] != 0.0) b += alphas[j] * cfg_.points[static_cast<std::size_t>(j)];
    return b;
  }

  const PointConfig& cfg_;
  std::vector<int> support_;
  AscentOptions opts_;
};

Candidate one_restart(const PointConfig& cfg, std::uint64_t seed, int restart, const AscentOptions& opts) {
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(restart));
  const int k = cfg.size();
  const int support_size = std::min(k, cfg.dim() + 1);
  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < support_size; ++i) {
    const int j = i + static_cast<int>(rng() % static_cast<std::uint64_t>(k - i));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::vector<int> support(order.begin(), order.begin() + support_size);
  std::sort(support.begin(), support.end());
  const Vec start_local = dirichlet_flat(rng, support_size);
  Vec alphas = Vec::Zero(k);
  for (int j = 0; j < support_size; ++j) alphas[support[static_cast<std::size_t>(j)]] = start_local[j];
  return LocalAscent(cfg, std::move(support), opts).run(std::move(alphas));
}

}  // namespace

DeviationReport deviation_lower(const PointConfig& cfg, int restarts, std::uint64_t seed, const AscentOptions& options) {
  if (restarts < 1) throw InvalidInput("restarts must be >= 1");
  check_point_set(cfg.points);
  std::vector<Candidate> results(static_cast<std::size_t>(restarts));
  if (cfg.size() == 1) {
    results.assign(1, Candidate{0.0, Vec::Ones(1)});
  } else {
    parallel_for(restarts, options.threads,
                 [&](int r) { results[static_cast<std::size_t>(r)] = one_restart(cfg, seed, r, options); });
  }
  const Candidate* best = &results.front();
  for (const auto& c : results)
    if (better(c, *best)) best = &c;

  DeviationReport report;
  report.lower = best->value;
  report.witness.weights = BarycentricWeights{best->alphas};
  report.witness.point = report.witness.weights.combine(cfg.points);
  report.restarts_used = restarts;
  report.seed = seed;
  const auto bounds = theoretical_bounds(cfg);
  report.upper = bounds.upper;
  report.upper_source = bounds.source;
  return report;
}

double deviation_oracle(const PointConfig& cfg, int grid_steps) {
  const int k = cfg.size();
  if (k > 5) throw InvalidInput("deviation oracle supports at most 5 points");
  if (grid_steps < 1 || grid_steps > 500) throw InvalidInput("grid_steps must be in [1, 500]");
  // Number of grid points: C(grid_steps + k - 1, k - 1).
  double count = 1.0;
  for (int i = 1; i < k; ++i) count = count * (grid_steps + i) / i;
  if (count > 5e7) throw BudgetExceeded("deviation oracle grid exceeds 5e7 points");

  struct Cell {
    double value;
    std::vector<int> counts;
  };
  constexpr std::size_t kKeep = 64;
  std::vector<Cell> top;  // min-heap on value
  const auto worse = [](const Cell& a, const Cell& b) { return a.value > b.value; };
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  Vec alphas(k);
  // Odometer over compositions of grid_steps into k parts.
  auto visit = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == k - 1) {
      counts[static_cast<std::size_t>(idx)] = remaining;
      for (int i = 0; i < k; ++i) alphas[i] = static_cast<double>(counts[static_cast<std::size_t>(i)]) / grid_steps;
      const double v = deviation_at(cfg, alphas);
      if (top.size() < kKeep || v > top.front().value) {
        top.push_back({v, counts});
        std::push_heap(top.begin(), top.end(), worse);
        if (top.size() > kKeep) {
          std::pop_heap(top.begin(), top.end(), worse);
          top.pop_back();
        }
      }
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      counts[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  visit(visit, 0, grid_steps);
  std::sort_heap(top.begin(), top.end(), worse);
  double best = top.front().value;
  if (k == 1) return best;

  // Zoom: around up to 8 well-separated top cells, search nested grids of
  // offsets in the first k - 1 weights, each level 4x finer than the last.
  constexpr int kZoom = 4, kLevels = 6, kSeeds = 8;
  const int reach = k <= 4 ? 2 * kZoom : kZoom;
  std::vector<const Cell*> seeds;
  for (const auto& c : top) {
    bool separated = true;
    for (const Cell* s : seeds) {
      int gap = 0;
      for (int i = 0; i < k; ++i)
        gap = std::max(gap, std::abs(c.counts[static_cast<std::size_t>(i)] - s->counts[static_cast<std::size_t>(i)]));
      separated = separated && gap > 2;
    }
    if (separated) seeds.push_back(&c);
    if (static_cast<int>(seeds.size()) == kSeeds) break;
  }
  std::vector<int> offset(static_cast<std::size_t>(k - 1));
  for (const Cell* s : seeds) {
    Vec center(k);
    for (int i = 0; i < k; ++i) center[i] = static_cast<double>(s->counts[static_cast<std::size_t>(i)]) / grid_steps;
    double center_value = s->value;
    double h = 1.0 / grid_steps;
    for (int level = 0; level < kLevels; ++level) {
      h /= kZoom;
      Vec level_best = center;
      std::fill(offset.begin(), offset.end(), -reach);
      while (true) {
        Vec a = center;
        double last = 1.0;
        for (int i = 0; i + 1 < k; ++i) {
          a[i] += offset[static_cast<std::size_t>(i)] * h;
          last -= a[i];
        }
        a[k - 1] = last;
        if (a.minCoeff() >= 0.0) {
          const double v = deviation_at(cfg, a);
          if (v > center_value) {
            center_value = v;
            level_best = a;
          }
        }
        int i = 0;
        while (i < k - 1 && ++offset[static_cast<std::size_t>(i)] > reach) offset[static_cast<std::size_t>(i++)] = -reach;
        if (i == k - 1) break;
      }
      center = level_best;
    }
    best = std::max(best, center_value);
  }
  return best;
}

BoundResult space_bounds(const NormSpec& spec, int dim) {
  spec.check_dim(dim);
  std::vector<BoundTerm> terms;
  const double dim_factor = 2.0 * (dim - 1) / dim;
  if (dim >= 2) terms.push_back({BoundSource::dim_bound, dim_factor});
  if (spec.is_lp()) {
    const auto pair = dual_exponent(spec.exponent());
    const double e = std::abs(pair.p.reciprocal() - pair.p_dual.reciprocal());
    const bool p_at_most_two = !(Exponent::finite(2) < pair.p);
    if (dim >= 2 && p_at_most_two) terms.push_back({BoundSource::lpn_bound, std::pow(dim_factor, e)});
    terms.push_back({BoundSource::lp_bound, std::pow(2.0, e)});
    if (pair.p.is_two()) terms.push_back({BoundSource::hilbert, 1.0});
  }
  if (dim == 2) terms.push_back({BoundSource::two_dim, 1.0});
  terms.push_back({BoundSource::trivial_two, 2.0});

  BoundResult out;
  out.terms = terms;
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) lowest = std::min(lowest, t.value);
  for (const auto& t : terms) {
    if (t.value <= lowest * (1.0 + 1e-12)) {
      out.upper = t.value;
      out.source = t.source;
      break;
    }
  }
  return out;
}

BoundResult theoretical_bounds(const PointConfig& cfg) {
  BoundResult out = space_bounds(cfg.spec, cfg.dim());
  for (auto& t : out.terms) t.value *= cfg.radius_bound;
  double diam = 0.0;
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.points.size(); ++j)
      diam = std::max(diam, norm_of(cfg.points[i] - cfg.points[j], cfg.spec));
  out.terms.push_back({BoundSource::diameter, diam});
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& t : out.terms) lowest = std::min(lowest, t.value);
  for (const auto& t : out.terms) {
    if (t.value <= lowest + 1e-12 * std::max(1.0, lowest)) {
      out.upper = t.value;
      out.source = t.source;
      break;
    }
  }
  return out;
}

DeviationReport chd_estimate(const PointConfig& cfg, int restarts, std::uint64_t seed, const AscentOptions& options) {
  DeviationReport report = deviation_lower(cfg, restarts, seed, options);
  if (report.lower > report.upper + 1e-6) {
    throw ConsistencyError("deviation lower bound " + std::to_string(report.lower) + " exceeds proven upper bound " +
                           std::to_string(report.upper) + " (" + to_string(report.upper_source) + ")");
  }
  return report;
}

PointConfig extremal_l1(int n) {
  if (n < 2) throw InvalidInput("extremal configurations need n >= 2");
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n);
    e[i] = 1.0;
    pts.push_back(e);
  }
  return PointConfig::make(std::move(pts), NormSpec::l1(), 1.0);
}

PointConfig extremal_linf(int n) {
  if (n < 2) throw InvalidInput("extremal configurations need n >= 2");
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    Vec a = Vec::Ones(n);
    a[i] = -1.0;
    pts.push_back(a);
  }
  return PointConfig::make(std::move(pts), NormSpec::linf(), 1.0);
}

// ---- annealing search -------------------------------------------------------

namespace {

Vec project_to_ball(Vec x, const NormSpec& spec) {
  const double nx = norm_of(x, spec);
  if (nx > 1.0) x /= nx;
  return x;
}

}  // namespace

SearchResult extremal_search(const NormSpec& spec, int dim, int k, const SearchOptions& options) {
  if (k < 2) throw InvalidInput("extremal search needs k >= 2 points");
  if (dim < 1) throw InvalidInput("dimension must be >= 1");
  if (options.budget < 0) throw InvalidInput("budget must be nonnegative");
  spec.check_dim(dim);

  Rng rng = make_rng(options.seed, 0xa11ea1);
  const double box = euclidean_radius(spec, dim);
  std::vector<Vec> pts;
  for (int i = 0; i < k; ++i) {
    Vec v(dim);
    do {
      for (int j = 0; j < dim; ++j) v[j] = uniform(rng, -box, box);
    } while (norm_of(v, spec) > 1.0);
    pts.push_back(v);
  }
  AscentOptions inner;
  inner.threads = 1;
  auto evaluate = [&](const std::vector<Vec>& config, std::uint64_t stream) {
    const auto cfg = PointConfig::make(config, spec, 1.0);
    return deviation_lower(cfg, options.inner_restarts, mix_seed(options.seed, stream), inner).lower;
  };

  const double t0 = options.initial_temperature;
  const double cooling = options.cooling > 0.0 ? options.cooling
                         : options.budget > 0 ? std::pow(1e-3, 1.0 / static_cast<double>(options.budget))
                                              : 1.0;
  const auto propose = [&](Vec x, double temperature) {
    const double kind = uniform01(rng);
    if (kind < 0.6) {
      const double sd = options.move_scale * std::max(temperature, 0.01 * t0);
      for (int j = 0; j < dim; ++j) x[j] += sd * standard_normal(rng);
      return project_to_ball(x, spec);
    }
    if (kind < 0.8) {
      const auto j = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(dim));
      if (uniform01(rng) < 0.5) x[j] = 0.0;
      else x[j] = (x[j] < 0.0 ? -1.0 : 1.0) * x.cwiseAbs().maxCoeff();
    }
    const double nx = norm_of(x, spec);
    return nx > 0.0 ? Vec(x / nx) : x;
  };

  double current = evaluate(pts, 0);
  std::vector<Vec> best_pts = pts;
  double best = current;
  double temperature = t0;
  long accepted = 0;
  for (long step = 0; step < options.budget; ++step) {
    const auto i = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(k));
    std::vector<Vec> trial = pts;
    trial[i] = propose(trial[i], temperature);
    const double value = evaluate(trial, static_cast<std::uint64_t>(step) + 1);
    const double u = uniform01(rng);
    if (value >= current || (temperature > 0 && u < std::exp((value - current) / temperature))) {
      pts = std::move(trial);
      current = value;
      ++accepted;
      if (current > best) {
        best = current;
        best_pts = pts;
      }
    }
    temperature *= cooling;
  }

  SearchResult out{PointConfig::make(best_pts, spec, 1.0), {}, accepted};
  AscentOptions final_opts;
  final_opts.threads = options.threads;
  out.report = chd_estimate(out.best, options.final_restarts, options.seed, final_opts);
  return out;
}

// ---- xi estimator -----------------------------------------------------------

double xi_value(const Vec& x, const Vec& y, const NormSpec& spec) {
  const auto p = norming_functional(y, spec);
  return norm_of(x - p(x) * y, spec);
}

namespace {

struct XiPoint {
  double value = -1.0;
  Vec x, y;
};

XiPoint xi_eval(const Vec& xd, const Vec& yd, const NormSpec& spec) {
  XiPoint pt;
  const double nx = norm_of(xd, spec), ny = norm_of(yd, spec);
  if (nx == 0.0 || ny == 0.0) return pt;
  pt.x = xd / nx;
  pt.y = yd / ny;
  pt.value = xi_value(pt.x, pt.y, spec);
  return pt;
}

Vec polar(double t) {
  Vec u(2);
  u << std::cos(t), std::sin(t);
  return u;
}

XiEstimate xi_grid2d(const NormSpec& spec, long budget) {
  constexpr double kTwoPi = 6.283185307179586;
  const int coarse = static_cast<int>(std::clamp<long>(static_cast<long>(std::sqrt(static_cast<double>(budget))), 64, 1000));
  struct Cell {
    double value;
    double tx, ty;
  };
  std::vector<Cell> cells;
  double h = kTwoPi / coarse;
  for (int i = 0; i < coarse; ++i)
    for (int j = 0; j < coarse; ++j) {
      const auto pt = xi_eval(polar(i * h), polar(j * h), spec);
      cells.push_back({pt.value, i * h, j * h});
    }
  // Refine around the best cells until the angular step is below 2 pi / 1e4.
  constexpr int kKeep = 24;
  constexpr int kLocal = 10;
  while (h > kTwoPi / 1e4) {
    std::partial_sort(cells.begin(), cells.begin() + std::min<std::ptrdiff_t>(kKeep, static_cast<std::ptrdiff_t>(cells.size())),
                      cells.end(), [](const Cell& a, const Cell& b) { return a.value > b.value; });
    cells.resize(std::min<std::size_t>(kKeep, cells.size()));
    const double fine = h / kLocal;
    std::vector<Cell> next = cells;
    for (const auto& c : cells) {
      for (int i = -kLocal; i <= kLocal; ++i)
        for (int j = -kLocal; j <= kLocal; ++j) {
          const double tx = c.tx + i * fine, ty = c.ty + j * fine;
          const auto pt = xi_eval(polar(tx), polar(ty), spec);
          next.push_back({pt.value, tx, ty});
        }
    }
    cells = std::move(next);
    h = fine;
  }
  const auto best = *std::max_element(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.value < b.value;
  });
  const auto pt = xi_eval(polar(best.tx), polar(best.ty), spec);
  return XiEstimate{pt.value, pt.x, pt.y, norming_functional(pt.y, spec), XiMethod::grid2d};
}

XiEstimate xi_multistart(const NormSpec& spec, int dim, long budget, std::uint64_t seed) {
  constexpr long kEvalsPerStart = 4000;
  const long starts = std::max<long>(4, budget / kEvalsPerStart);
  XiPoint best;
  for (long s = 0; s < starts; ++s) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(s));
    Vec xd = gaussian_direction(rng, dim), yd = gaussian_direction(rng, dim);
    XiPoint cur = xi_eval(xd, yd, spec);
    double step = 0.5;
    long evals = 0;
    while (step > 1e-9 && evals < kEvalsPerStart) {
      bool improved = false;
      for (int which = 0; which < 2; ++which) {
        for (int j = 0; j < dim; ++j) {
          for (double sign : {1.0, -1.0}) {
            Vec xt = cur.x, yt = cur.y;
            (which == 0 ? xt : yt)[j] += sign * step;
            const auto pt = xi_eval(xt, yt, spec);
            ++evals;
            if (pt.value > cur.value) {
              cur = pt;
              improved = true;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (cur.value > best.value) best = cur;
  }
  return XiEstimate{best.value, best.x, best.y, norming_functional(best.y, spec), XiMethod::multistart};
}

}  // namespace

XiEstimate xi_estimate(const NormSpec& spec, int dim, long budget, std::uint64_t seed) {
  if (dim < 2) throw InvalidInput("xi estimate needs dim >= 2");
  spec.check_dim(dim);
  if (dim == 2) return xi_grid2d(spec, budget);
  return xi_multistart(spec, dim, budget, seed);
}

}  // namespace hulldev
