#pragma once

#include <vector>

#include <Eigen/Core>

namespace hulldev {

enum class LpStatus { optimal, infeasible, unbounded, pivot_limit };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;

  bool optimal() const { return status == LpStatus::optimal; }
};

/// Dense two-phase primal simplex, minimizing c'x.
///
/// Variables are nonnegative unless marked free. Pivoting follows Bland's rule
/// (lowest eligible column enters, lowest basic index breaks ratio ties), so a
/// given program always takes the same pivot sequence and returns bit-identical
/// solutions. Intended for the small programs this library builds (tens of
/// variables, a few hundred rows).
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  void set_free(int var);
  void set_objective(const Eigen::VectorXd& cost);

  void add_le(const Eigen::VectorXd& coeffs, double rhs);
  void add_ge(const Eigen::VectorXd& coeffs, double rhs);
  void add_eq(const Eigen::VectorXd& coeffs, double rhs);

  LpSolution solve(long max_pivots = 200000) const;

 private:
  enum class Sense { le, ge, eq };
  struct Row {
    Eigen::VectorXd coeffs;
    double rhs;
    Sense sense;
  };

  void add_row(const Eigen::VectorXd& coeffs, double rhs, Sense sense);

  int num_vars_;
  std::vector<bool> free_;
  Eigen::VectorXd cost_;
  std::vector<Row> rows_;
};

}  // namespace hulldev
