#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace hulldev {

using Vec = Eigen::VectorXd;

/// An exponent p in [1, inf]. Infinity is a distinct state, never a large float.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(0.0, true); }

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws for infinity.
  double value() const;
  /// 1/p with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }
  bool is_one() const { return !infinite_ && value_ == 1.0; }
  bool is_two() const { return !infinite_ && value_ == 2.0; }

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  /// Ordering on [1, inf].
  friend bool operator<(const Exponent& a, const Exponent& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

 private:
  Exponent(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// Conjugate exponents with r = min(p, p'), r' = max(p, p').
struct DualPair {
  Exponent p;
  Exponent p_dual;
  Exponent r;
  Exponent r_dual;
};

DualPair dual_exponent(Exponent p);

/// A norm on R^n: either an l_p norm or the gauge max_f <f, x> of a symmetric
/// finite functional set that spans the dual space.
class NormSpec {
 public:
  struct Lp {
    Exponent p;
  };
  struct Polyhedral {
    std::vector<Vec> functionals;
  };

  static NormSpec lp(Exponent p) { return NormSpec(Lp{p}); }
  static NormSpec lp(double p) { return lp(Exponent::finite(p)); }
  static NormSpec l1() { return lp(1.0); }
  static NormSpec l2() { return lp(2.0); }
  static NormSpec linf() { return lp(Exponent::infinity()); }
  /// Validates symmetry (C = -C, exact) and that C spans the dual space.
  static NormSpec polyhedral(std::vector<Vec> functionals);

  bool is_lp() const { return std::holds_alternative<Lp>(variant_); }
  bool is_polyhedral() const { return !is_lp(); }
  /// Exponent of an l_p spec; throws for polyhedral.
  Exponent exponent() const;
  const std::vector<Vec>& functionals() const;

  /// l_p with 1 < p < inf (strictly convex and smooth).
  bool is_smooth_lp() const;
  /// Unit ball is a polytope: l_1, l_inf or explicit polyhedral.
  bool is_polytope() const;
  /// Fixed ambient dimension for polyhedral specs; l_p accepts any.
  std::optional<int> ambient_dim() const;
  void check_dim(int dim) const;

  std::string to_string() const;

  const std::variant<Lp, Polyhedral>& variant() const { return variant_; }

 private:
  explicit NormSpec(std::variant<Lp, Polyhedral> v) : variant_(std::move(v)) {}
  std::variant<Lp, Polyhedral> variant_;
};

/// Linear form x -> <coeffs, x> on the ambient space.
struct Functional {
  Vec coeffs;

  double operator()(const Vec& x) const { return coeffs.dot(x); }
};

double norm_of(const Vec& x, const NormSpec& spec);
double lp_norm(const Vec& x, Exponent p);

/// Dual norm sup_{||x|| <= 1} <q, x>. Closed form for l_p, linear program for polyhedral.
double dual_norm(const Vec& q, const NormSpec& spec);

/// A point x of the closed unit ball with <q, x> = dual_norm(q).
Vec dual_attainer(const Vec& q, const NormSpec& spec);

/// Element of J_1(y): <p, y> = ||y||, dual norm of p equal to 1.
/// When J_1(y) is not a singleton the selection is deterministic: sign vector
/// with sign(0) = +1 for l_1, a single signed unit coordinate at the first
/// index of maximal modulus for l_inf, lexicographically smallest maximizing
/// functional for polyhedral norms.
Functional norming_functional(const Vec& y, const NormSpec& spec);

/// Tolerance used to validate norming functionals.
inline constexpr double kNormingTol = 1e-9;

struct PolyhedralApprox {
  NormSpec spec;
  std::size_t functional_count = 0;
  /// Measured max of ||v|| over the vertices (2D, exact) or over a probe set
  /// of directions (n >= 3) of the polyhedral unit ball; at most 1 + eps.
  double max_norm_on_ball = 1.0;
};

/// Symmetric set of unit dual functionals whose polyhedral ball contains the
/// unit ball of `spec` and lies inside its (1 + eps) dilate.
PolyhedralApprox polyhedral_approx(const NormSpec& spec, int dim, double eps, std::size_t max_functionals = 200000);

/// Upper bound on the Euclidean length of vectors in the unit ball.
double euclidean_radius(const NormSpec& spec, int dim);

}  // namespace hulldev
