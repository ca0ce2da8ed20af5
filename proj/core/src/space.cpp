#include "hulldev/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/LU>

#include "hulldev/errors.hpp"
#include "hulldev/lp.hpp"
#include "hulldev/random.hpp"

namespace hulldev {

namespace {

struct LexLess {
  bool operator()(const Vec& a, const Vec& b) const {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  }
};

double gauge(const Vec& x, const std::vector<Vec>& functionals) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : functionals) best = std::max(best, f.dot(x));
  return best;
}

// Point y(theta) on the unit sphere of `spec` in the plane.
Vec circle_point(double theta, const NormSpec& spec) {
  Vec u(2);
  u << std::cos(theta), std::sin(theta);
  return u / norm_of(u, spec);
}

}  // namespace

// ---- Exponent ---------------------------------------------------------------

Exponent Exponent::finite(double p) {
  if (!std::isfinite(p)) throw InvalidInput("finite exponent expected; use Exponent::infinity()");
  if (p < 1.0) throw InvalidInput("exponent p must be >= 1, got " + std::to_string(p));
  return Exponent(p, false);
}

double Exponent::value() const {
  if (infinite_) throw InvalidInput("value() called on the infinite exponent");
  return value_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

DualPair dual_exponent(Exponent p) {
  Exponent q = Exponent::infinity();
  if (p.is_infinite()) {
    q = Exponent::finite(1.0);
  } else if (p.is_one()) {
    q = Exponent::infinity();
  } else if (p.is_two()) {
    q = p;
  } else {
    const double v = p.value();
    q = Exponent::finite(v / (v - 1.0));
  }
  const bool p_small = !(q < p);
  return DualPair{p, q, p_small ? p : q, p_small ? q : p};
}

// ---- NormSpec ---------------------------------------------------------------

NormSpec NormSpec::polyhedral(std::vector<Vec> functionals) {
  if (functionals.empty()) throw InvalidInput("polyhedral norm needs a nonempty functional set");
  const auto dim = functionals.front().size();
  if (dim < 1) throw InvalidInput("polyhedral functionals must have dimension >= 1");
  std::set<Vec, LexLess> members;
  for (const auto& f : functionals) {
    if (f.size() != dim) throw InvalidInput("polyhedral functionals have mixed dimensions");
    if (!f.allFinite()) throw InvalidInput("polyhedral functional has non-finite entries");
    members.insert(f);
  }
  for (const auto& f : functionals) {
    if (!members.count(-f)) throw InvalidInput("polyhedral functional set is not symmetric (C != -C)");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(functionals.size()), dim);
  for (std::size_t i = 0; i < functionals.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = functionals[i].transpose();
  if (Eigen::FullPivLU<Eigen::MatrixXd>(m).rank() != dim)
    throw InvalidInput("polyhedral functionals do not span the dual space");
  return NormSpec(Polyhedral{std::move(functionals)});
}

Exponent NormSpec::exponent() const {
  if (!is_lp()) throw InvalidInput("exponent() on a polyhedral norm");
  return std::get<Lp>(variant_).p;
}

const std::vector<Vec>& NormSpec::functionals() const {
  if (is_lp()) throw InvalidInput("functionals() on an l_p norm");
  return std::get<Polyhedral>(variant_).functionals;
}

bool NormSpec::is_smooth_lp() const {
  if (!is_lp()) return false;
  const auto p = exponent();
  return !p.is_infinite() && !p.is_one();
}

bool NormSpec::is_polytope() const { return !is_smooth_lp(); }

std::optional<int> NormSpec::ambient_dim() const {
  if (is_lp()) return std::nullopt;
  return static_cast<int>(functionals().front().size());
}

void NormSpec::check_dim(int dim) const {
  if (dim < 1) throw InvalidInput("dimension must be >= 1");
  if (auto d = ambient_dim(); d && *d != dim)
    throw InvalidInput("dimension mismatch: polyhedral norm is " + std::to_string(*d) + "-dimensional, vector has " +
                       std::to_string(dim));
}

std::string NormSpec::to_string() const {
  if (is_lp()) {
    const auto p = exponent();
    if (p.is_infinite()) return "linf";
    if (p.is_one()) return "l1";
    if (p.is_two()) return "l2";
    return "lp:" + p.to_string();
  }
  return "poly[" + std::to_string(functionals().size()) + "]";
}

// ---- norms ------------------------------------------------------------------

double lp_norm(const Vec& x, Exponent p) {
  if (p.is_infinite()) return x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (p.is_one()) return x.cwiseAbs().sum();
  if (p.is_two()) return x.norm();
  const double m = x.size() ? x.cwiseAbs().maxCoeff() : 0.0;
  if (m == 0.0) return 0.0;
  const double pv = p.value();
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, pv);
  return m * std::pow(s, 1.0 / pv);
}

double norm_of(const Vec& x, const NormSpec& spec) {
  if (spec.is_lp()) return lp_norm(x, spec.exponent());
  spec.check_dim(static_cast<int>(x.size()));
  return std::max(0.0, gauge(x, spec.functionals()));
}

double dual_norm(const Vec& q, const NormSpec& spec) {
  if (spec.is_lp()) return lp_norm(q, dual_exponent(spec.exponent()).p_dual);
  spec.check_dim(static_cast<int>(q.size()));
  // min sum(lambda) s.t. sum lambda_f f = q, lambda >= 0
  const auto& fs = spec.functionals();
  LinearProgram lp(static_cast<int>(fs.size()));
  lp.set_objective(Vec::Ones(static_cast<Eigen::Index>(fs.size())));
  for (Eigen::Index j = 0; j < q.size(); ++j) {
    Vec row(static_cast<Eigen::Index>(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i) row[static_cast<Eigen::Index>(i)] = fs[i][j];
    lp.add_eq(row, q[j]);
  }
  const auto sol = lp.solve();
  if (!sol.optimal()) throw ConsistencyError("dual norm program failed for a spanning functional set");
  return sol.objective;
}

Vec dual_attainer(const Vec& q, const NormSpec& spec) {
  const auto n = q.size();
  if (spec.is_lp()) {
    const auto p = spec.exponent();
    Vec x = Vec::Zero(n);
    if (q.isZero(0.0)) return x;
    if (p.is_one()) {
      Eigen::Index k = 0;
      for (Eigen::Index i = 1; i < n; ++i)
        if (std::abs(q[i]) > std::abs(q[k])) k = i;
      x[k] = q[k] >= 0 ? 1.0 : -1.0;
      return x;
    }
    if (p.is_infinite()) {
      for (Eigen::Index i = 0; i < n; ++i) x[i] = q[i] >= 0 ? 1.0 : -1.0;
      return x;
    }
    // q is a norming functional of x with x_i ~ sign(q_i)|q_i|^{p'-1}
    const double pd = dual_exponent(p).p_dual.value();
    for (Eigen::Index i = 0; i < n; ++i) x[i] = std::copysign(std::pow(std::abs(q[i]), pd - 1.0), q[i]);
    return x / lp_norm(x, p);
  }
  spec.check_dim(static_cast<int>(n));
  LinearProgram lp(static_cast<int>(n));
  for (Eigen::Index j = 0; j < n; ++j) lp.set_free(static_cast<int>(j));
  lp.set_objective(-q);
  for (const auto& f : spec.functionals()) lp.add_le(f, 1.0);
  const auto sol = lp.solve();
  if (!sol.optimal()) throw ConsistencyError("dual attainer program failed for a spanning functional set");
  return sol.x;
}

Functional norming_functional(const Vec& y, const NormSpec& spec) {
  const auto n = y.size();
  if (n < 1) throw InvalidInput("norming functional of an empty vector");
  if (y.isZero(0.0)) throw InvalidInput("norming functional of the zero vector is undefined");
  if (spec.is_lp()) {
    const auto p = spec.exponent();
    Vec c(n);
    if (p.is_one()) {
      for (Eigen::Index i = 0; i < n; ++i) c[i] = y[i] >= 0 ? 1.0 : -1.0;
    } else if (p.is_infinite()) {
      Eigen::Index k = 0;
      for (Eigen::Index i = 1; i < n; ++i)
        if (std::abs(y[i]) > std::abs(y[k])) k = i;
      c.setZero();
      c[k] = y[k] >= 0 ? 1.0 : -1.0;
    } else if (p.is_two()) {
      c = y / y.norm();
    } else {
      const double pv = p.value();
      const double ny = lp_norm(y, p);
      for (Eigen::Index i = 0; i < n; ++i) c[i] = std::copysign(std::pow(std::abs(y[i]) / ny, pv - 1.0), y[i]);
    }
    return Functional{std::move(c)};
  }
  spec.check_dim(static_cast<int>(n));
  const auto& fs = spec.functionals();
  const double best = gauge(y, fs);
  const double tie = 1e-12 * std::max(1.0, std::abs(best));
  const Vec* choice = nullptr;
  for (const auto& f : fs) {
    if (f.dot(y) >= best - tie && (!choice || LexLess{}(f, *choice))) choice = &f;
  }
  return Functional{*choice};
}

// ---- polyhedral approximation -----------------------------------------------

double euclidean_radius(const NormSpec& spec, int dim) {
  spec.check_dim(dim);
  if (spec.is_lp()) {
    const double inv = spec.exponent().reciprocal();
    return std::pow(static_cast<double>(dim), std::max(0.0, 0.5 - inv));
  }
  double sq = 0.0;
  for (int j = 0; j < dim; ++j) {
    Vec e = Vec::Zero(dim);
    e[j] = 1.0;
    const double b = dual_norm(e, spec);
    sq += b * b;
  }
  return std::sqrt(sq);
}

namespace {

PolyhedralApprox finish(std::vector<Vec> fs, double max_norm) {
  PolyhedralApprox out{NormSpec::polyhedral(fs), fs.size(), max_norm};
  return out;
}

PolyhedralApprox approx_plane(const NormSpec& spec, double eps, std::size_t budget) {
  // Adaptive angular refinement over the upper half circle; vertices of the
  // circumscribed polygon are checked exactly.
  constexpr double kPi = 3.14159265358979323846;
  std::map<double, Vec> fan;  // angle -> norming functional
  auto add = [&](double theta) { fan.emplace(theta, norming_functional(circle_point(theta, spec), spec).coeffs); };
  for (int i = 0; i <= 2; ++i) add(i * kPi / 2);
  double worst = 1.0;
  while (true) {
    bool refined = false;
    worst = 1.0;
    std::vector<double> inserts;
    for (auto it = fan.begin(); std::next(it) != fan.end(); ++it) {
      const auto nx = std::next(it);
      Eigen::Matrix2d a;
      a.row(0) = it->second.transpose();
      a.row(1) = nx->second.transpose();
      const Eigen::Vector2d v = a.fullPivLu().solve(Eigen::Vector2d::Ones());
      const double nv = norm_of(v, spec);
      worst = std::max(worst, nv);
      if (nv > 1.0 + eps) inserts.push_back(0.5 * (it->first + nx->first));
    }
    for (double t : inserts) {
      add(t);
      refined = true;
    }
    if (2 * fan.size() > budget + 2) throw BudgetExceeded("polyhedral approximation exceeds functional budget");
    if (!refined) break;
  }
  std::vector<Vec> fs;
  for (auto it = fan.begin(); it != fan.end(); ++it) {
    if (std::next(it) == fan.end()) break;  // theta = pi duplicates -f(0)
    fs.push_back(it->second);
  }
  const std::size_t half = fs.size();
  for (std::size_t i = 0; i < half; ++i) fs.push_back(-fs[i]);
  return finish(std::move(fs), worst);
}

std::vector<Vec> cube_sphere_directions(int dim, int m, bool cell_centers) {
  std::vector<Vec> out;
  const int per = cell_centers ? m : m + 1;
  std::vector<int> idx(static_cast<std::size_t>(dim - 1), 0);
  for (int axis = 0; axis < dim; ++axis) {
    for (int s = -1; s <= 1; s += 2) {
      std::fill(idx.begin(), idx.end(), 0);
      while (true) {
        Vec u(dim);
        int k = 0;
        for (int j = 0; j < dim; ++j) {
          if (j == axis) {
            u[j] = s;
          } else {
            const double t = cell_centers ? -1.0 + (2.0 * idx[k] + 1.0) / m : -1.0 + 2.0 * idx[k] / m;
            u[j] = t;
            ++k;
          }
        }
        out.push_back(u);
        int c = 0;
        while (c < dim - 1 && ++idx[c] == per) idx[c++] = 0;
        if (c == dim - 1) break;
      }
    }
  }
  return out;
}

PolyhedralApprox approx_sphere_grid(const NormSpec& spec, int dim, double eps, std::size_t budget) {
  // Cube-sphere grid of norming functionals, refined until the sampled
  // overshoot at cell centers and random probes is within eps.
  Rng rng = make_rng(0x5eed, static_cast<std::uint64_t>(dim));
  std::vector<Vec> probes;
  for (int i = 0; i < 10000; ++i) probes.push_back(gaussian_direction(rng, dim));
  for (int m = 2;; m *= 2) {
    std::set<Vec, LexLess> uniq;
    for (const auto& u : cube_sphere_directions(dim, m, false)) {
      uniq.insert(norming_functional(u / norm_of(u, spec), spec).coeffs);
    }
    if (uniq.size() > budget) throw BudgetExceeded("polyhedral approximation exceeds functional budget");
    std::vector<Vec> fs(uniq.begin(), uniq.end());
    double worst = 1.0;
    auto probe = [&](const Vec& u) { worst = std::max(worst, norm_of(u, spec) / gauge(u, fs)); };
    for (const auto& u : cube_sphere_directions(dim, 2 * m, true)) probe(u);
    for (const auto& u : probes) probe(u);
    if (worst <= 1.0 + eps) return finish(std::move(fs), worst);
  }
}

}  // namespace

PolyhedralApprox polyhedral_approx(const NormSpec& spec, int dim, double eps, std::size_t max_functionals) {
  if (dim < 2) throw InvalidInput("polyhedral approximation needs dim >= 2");
  if (!(eps > 0.0)) throw InvalidInput("eps must be positive");
  spec.check_dim(dim);
  if (spec.is_polyhedral()) return PolyhedralApprox{spec, spec.functionals().size(), 1.0};
  const auto p = spec.exponent();
  if (p.is_one()) {
    if (dim > 20) throw BudgetExceeded("2^dim sign functionals exceed budget");
    const std::size_t count = std::size_t{1} << dim;
    if (count > max_functionals) throw BudgetExceeded("2^dim sign functionals exceed budget");
    std::vector<Vec> fs;
    for (std::size_t mask = 0; mask < count; ++mask) {
      Vec f(dim);
      for (int j = 0; j < dim; ++j) f[j] = (mask >> j) & 1U ? -1.0 : 1.0;
      fs.push_back(f);
    }
    return finish(std::move(fs), 1.0);
  }
  if (p.is_infinite()) {
    std::vector<Vec> fs;
    for (int j = 0; j < dim; ++j) {
      Vec f = Vec::Zero(dim);
      f[j] = 1.0;
      fs.push_back(f);
      fs.push_back(-f);
    }
    return finish(std::move(fs), 1.0);
  }
  if (dim == 2) return approx_plane(spec, eps, max_functionals);
  return approx_sphere_grid(spec, dim, eps, max_functionals);
}

}  // namespace hulldev
