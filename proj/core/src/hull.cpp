#include "hulldev/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hulldev/errors.hpp"
#include "hulldev/lp.hpp"

namespace hulldev {

bool BarycentricWeights::valid(double tol) const {
  if (alphas.size() == 0) return false;
  return alphas.minCoeff() >= 0.0 && std::abs(alphas.sum() - 1.0) <= tol;
}

Vec BarycentricWeights::combine(std::span<const Vec> points) const {
  Vec out = Vec::Zero(points.front().size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double a = alphas[static_cast<Eigen::Index>(i)];
    if (a != 0.0) out += a * points[i];
  }
  return out;
}

const char* to_string(HullMethod m) {
  return m == HullMethod::exact_lp ? "exact_lp" : "conditional_gradient";
}

int check_point_set(std::span<const Vec> points) {
  if (points.empty()) throw InvalidInput("point set is empty");
  const auto dim = points.front().size();
  if (dim < 1) throw InvalidInput("points must have dimension >= 1");
  for (const auto& p : points) {
    if (p.size() != dim) throw InvalidInput("points have mixed dimensions");
    if (!p.allFinite()) throw InvalidInput("point has non-finite coordinates");
  }
  return static_cast<int>(dim);
}

double dist_point_to_set(const Vec& x, std::span<const Vec> points, const NormSpec& spec) {
  const int dim = check_point_set(points);
  if (x.size() != dim) throw InvalidInput("query point dimension mismatch");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : points) best = std::min(best, norm_of(x - a, spec));
  return best;
}

namespace {

// Clips tiny negative LP values and renormalizes.
BarycentricWeights clean_weights(Vec alphas) {
  alphas = alphas.cwiseMax(0.0);
  const double s = alphas.sum();
  if (s > 0) alphas /= s;
  return BarycentricWeights{std::move(alphas)};
}

HullDistanceResult finish(const Vec& x, std::span<const Vec> points, const NormSpec& spec, BarycentricWeights w,
                          HullMethod method, double lower_bound) {
  HullDistanceResult out;
  out.ambient_point = w.combine(points);
  out.distance = norm_of(x - out.ambient_point, spec);
  out.minimizer = std::move(w);
  out.method = method;
  out.gap = std::max(0.0, out.distance - lower_bound);
  return out;
}

HullDistanceResult hull_lp(const Vec& x, std::span<const Vec> points, const NormSpec& spec) {
  const int k = static_cast<int>(points.size());
  const int n = static_cast<int>(x.size());
  const bool l1 = spec.is_lp() && spec.exponent().is_one();
  const bool linf = spec.is_lp() && spec.exponent().is_infinite();
  // Variables: alpha (k), then epigraph variables (n for l1, 1 otherwise).
  const int extra = l1 ? n : 1;
  LinearProgram lp(k + extra);
  Vec cost = Vec::Zero(k + extra);
  cost.tail(extra).setOnes();
  lp.set_objective(cost);
  Vec simplex_row = Vec::Zero(k + extra);
  simplex_row.head(k).setOnes();
  lp.add_eq(simplex_row, 1.0);

  auto add_functional = [&](const Vec& f, int epi) {
    // <f, x - A alpha> <= t_epi
    Vec row = Vec::Zero(k + extra);
    for (int i = 0; i < k; ++i) row[i] = -f.dot(points[static_cast<std::size_t>(i)]);
    row[k + epi] = -1.0;
    lp.add_le(row, -f.dot(x));
  };
  if (l1 || linf) {
    for (int j = 0; j < n; ++j) {
      Vec e = Vec::Zero(n);
      e[j] = 1.0;
      add_functional(e, l1 ? j : 0);
      add_functional(-e, l1 ? j : 0);
    }
  } else {
    for (const auto& f : spec.functionals()) add_functional(f, 0);
  }
  const auto sol = lp.solve();
  if (!sol.optimal()) throw ConsistencyError("hull distance program did not reach optimality");
  auto out = finish(x, points, spec, clean_weights(sol.x.head(k)), HullMethod::exact_lp, sol.objective);
  out.iterations = 1;
  return out;
}

// Smooth model of the norm used by the conditional-gradient path.
class NormModel {
 public:
  NormModel(const NormSpec& spec, int dim) : spec_(spec) {
    if (spec.is_smooth_lp()) return;
    if (spec.is_polyhedral()) {
      functionals_ = spec.functionals();
    } else if (spec.exponent().is_infinite()) {
      for (int j = 0; j < dim; ++j) {
        Vec e = Vec::Zero(dim);
        e[j] = 1.0;
        functionals_.push_back(e);
        functionals_.push_back(-e);
      }
    } else {
      if (dim > 16) throw BudgetExceeded("smoothed l1 model limited to dim <= 16");
      for (unsigned mask = 0; mask < (1U << dim); ++mask) {
        Vec f(dim);
        for (int j = 0; j < dim; ++j) f[j] = (mask >> j) & 1U ? -1.0 : 1.0;
        functionals_.push_back(f);
      }
    }
  }

  bool smooth() const { return functionals_.empty(); }
  double log_count() const { return std::log(static_cast<double>(std::max<std::size_t>(functionals_.size(), 2))); }

  // Objective value of the (smoothed) model at residual r.
  double value(const Vec& r, double mu) const {
    if (smooth()) return norm_of(r, spec_);
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& f : functionals_) m = std::max(m, f.dot(r));
    double s = 0.0;
    for (const auto& f : functionals_) s += std::exp((f.dot(r) - m) / mu);
    return m + mu * std::log(s);
  }

  // Gradient of the model at r. Always lies in the dual unit ball, which makes
  // <w, x> - max_i <w, a_i> a valid lower bound on the hull distance.
  Vec gradient(const Vec& r, double mu) const {
    if (smooth()) return norming_functional(r, spec_).coeffs;
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& f : functionals_) m = std::max(m, f.dot(r));
    Vec w = Vec::Zero(r.size());
    double s = 0.0;
    for (const auto& f : functionals_) {
      const double e = std::exp((f.dot(r) - m) / mu);
      w += e * f;
      s += e;
    }
    return w / s;
  }

 private:
  const NormSpec& spec_;
  std::vector<Vec> functionals_;
};

template <class F>
double golden_min(F&& f, double lo, double hi, double& fbest) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 90 && b - a > 1e-16 * std::max(1.0, hi); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  double best = fc <= fd ? c : d;
  fbest = std::min(fc, fd);
  for (double t : {lo, hi}) {
    const double ft = f(t);
    if (ft < fbest) {
      fbest = ft;
      best = t;
    }
  }
  return best;
}

HullDistanceResult hull_conditional_gradient(const Vec& x, std::span<const Vec> points, const NormSpec& spec,
                                             double tol, long max_iterations) {
  const int k = static_cast<int>(points.size());
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd a(n, k);
  for (int i = 0; i < k; ++i) a.col(i) = points[static_cast<std::size_t>(i)];

  // Interior or boundary points have distance zero; the norm is not
  // differentiable there, so settle membership exactly first.
  if (hull_membership(x, points)) {
    auto exact = hull_lp(x, points, NormSpec::l1());
    auto out = finish(x, points, spec, exact.minimizer, HullMethod::conditional_gradient, 0.0);
    out.iterations = 0;
    return out;
  }

  NormModel model(spec, n);
  Vec alpha = Vec::Zero(k);
  {
    int nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      const double d = norm_of(x - a.col(i), spec);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    alpha[nearest] = 1.0;
  }
  Vec r = x - a * alpha;
  double phi = norm_of(r, spec);
  Vec best_alpha = alpha;
  double best_phi = phi;
  double best_lb = 0.0;
  double mu = model.smooth() ? 0.0 : 0.05 * std::max(phi, 1e-12);
  const double mu_floor = tol / (10.0 * model.log_count());

  HullDistanceResult out;
  long it = 0;
  bool converged = false;
  for (; it < max_iterations; ++it) {
    const Vec w = model.gradient(r, mu);
    const Eigen::VectorXd scores = a.transpose() * w;  // <w, a_i>
    Eigen::Index s = 0;
    scores.maxCoeff(&s);
    best_lb = std::max(best_lb, w.dot(x) - scores[s]);
    if (best_phi - best_lb <= tol) {
      converged = true;
      break;
    }
    const double current = scores.dot(alpha);
    const double fw_gap = scores[s] - current;

    Eigen::Index v = -1;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (alpha[i] > 0.0 && (v < 0 || scores[i] < scores[v])) v = i;
    }
    const double away_gap = current - scores[v];

    Vec dir = -alpha;  // direction in weight space
    double gamma_max = 1.0;
    if (fw_gap >= away_gap || alpha[v] >= 1.0) {
      dir[s] += 1.0;
    } else {
      dir = alpha;
      dir[v] -= 1.0;
      gamma_max = alpha[v] / (1.0 - alpha[v]);
    }
    const Vec step = a * dir;  // residual moves by -gamma * step
    double f_new = 0.0;
    const double gamma =
        golden_min([&](double g) { return model.value(r - g * step, mu); }, 0.0, gamma_max, f_new);
    alpha += gamma * dir;
    alpha = alpha.cwiseMax(0.0);
    alpha /= alpha.sum();
    r = x - a * alpha;
    phi = norm_of(r, spec);
    if (phi < best_phi) {
      best_phi = phi;
      best_alpha = alpha;
    }
    if (!model.smooth() && std::max(fw_gap, 0.0) <= mu && mu > mu_floor) mu = std::max(mu_floor, 0.5 * mu);
  }

  out = finish(x, points, spec, BarycentricWeights{best_alpha}, HullMethod::conditional_gradient, best_lb);
  out.converged = converged;
  out.iterations = it;
  return out;
}

}  // namespace

HullDistanceResult dist_to_hull(const Vec& x, std::span<const Vec> points, const NormSpec& spec,
                                const HullOptions& options) {
  const int dim = check_point_set(points);
  if (x.size() != dim) throw InvalidInput("query point dimension mismatch");
  if (!x.allFinite()) throw InvalidInput("query point has non-finite coordinates");
  spec.check_dim(dim);
  const HullMethod method =
      options.method.value_or(spec.is_polytope() ? HullMethod::exact_lp : HullMethod::conditional_gradient);
  if (method == HullMethod::exact_lp) {
    if (!spec.is_polytope()) throw InvalidInput("exact hull program requires a polytope unit ball");
    return hull_lp(x, points, spec);
  }
  const double tol = options.tol > 0 ? options.tol : kDefaultIterativeTol;
  return hull_conditional_gradient(x, points, spec, tol, options.max_iterations);
}

bool hull_membership(const Vec& x, std::span<const Vec> points) {
  const int dim = check_point_set(points);
  if (x.size() != dim) throw InvalidInput("query point dimension mismatch");
  return hull_lp(x, points, NormSpec::l1()).distance <= 1e-9;
}

}  // namespace hulldev
