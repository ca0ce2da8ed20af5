#include "hulldev/lp.hpp"

#include <cmath>
#include <limits>

#include "hulldev/errors.hpp"

namespace hulldev {

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr double kPhaseOneTol = 1e-9;

// Tableau layout: rows 0..m-1 are constraints, row m holds reduced costs.
// The last column is the right-hand side (negated objective in row m).
class Simplex {
 public:
  Simplex(Tableau t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  Tableau& tableau() { return t_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) {
        t_.row(i) -= f * t_.row(r);
        t_(i, c) = 0.0;
      }
    }
    basis_[r] = c;
  }

  // Installs cost vector c (size cols()) as the objective row, priced out
  // against the current basis.
  void set_costs(const Eigen::VectorXd& c) {
    const int m = rows();
    t_.row(m).setZero();
    t_.row(m).head(cols()) = c.transpose();
    for (int i = 0; i < m; ++i) {
      const double cb = c[basis_[i]];
      if (cb != 0.0) t_.row(m) -= cb * t_.row(i);
    }
  }

  // Runs Bland-rule pivots over columns < allowed_cols.
  LpStatus optimize(int allowed_cols, long& pivots_left) {
    const int m = rows();
    const int rhs = cols();
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t_(m, j) < -kCostTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::optimal;
      if (pivots_left-- <= 0) return LpStatus::pivot_limit;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(t_(i, rhs), 0.0) / a;
        if (ratio < best - 1e-14 || (ratio <= best + 1e-14 && leave >= 0 && basis_[i] < basis_[leave])) {
          if (ratio < best) best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  }

 private:
  Tableau t_;
  std::vector<int> basis_;
};

}  // namespace

LinearProgram::LinearProgram(int num_vars)
    : num_vars_(num_vars), free_(static_cast<std::size_t>(num_vars), false), cost_(Eigen::VectorXd::Zero(num_vars)) {
  if (num_vars <= 0) throw InvalidInput("linear program needs at least one variable");
}

void LinearProgram::set_free(int var) { free_.at(static_cast<std::size_t>(var)) = true; }

void LinearProgram::set_objective(const Eigen::VectorXd& cost) {
  if (cost.size() != num_vars_) throw InvalidInput("objective size mismatch");
  cost_ = cost;
}

void LinearProgram::add_le(const Eigen::VectorXd& coeffs, double rhs) { add_row(coeffs, rhs, Sense::le); }
void LinearProgram::add_ge(const Eigen::VectorXd& coeffs, double rhs) { add_row(coeffs, rhs, Sense::ge); }
void LinearProgram::add_eq(const Eigen::VectorXd& coeffs, double rhs) { add_row(coeffs, rhs, Sense::eq); }

void LinearProgram::add_row(const Eigen::VectorXd& coeffs, double rhs, Sense sense) {
  if (coeffs.size() != num_vars_) throw InvalidInput("constraint size mismatch");
  rows_.push_back({coeffs, rhs, sense});
}

LpSolution LinearProgram::solve(long max_pivots) const {
  // Structural columns: one per nonnegative variable, two per free variable.
  std::vector<int> pos_col(num_vars_), neg_col(num_vars_, -1);
  int ncols = 0;
  for (int j = 0; j < num_vars_; ++j) {
    pos_col[j] = ncols++;
    if (free_[j]) neg_col[j] = ncols++;
  }
  const int m = num_rows();

  // Normalize to nonnegative right-hand sides.
  struct NormRow {
    Eigen::VectorXd a;
    double b;
    Sense sense;
  };
  std::vector<NormRow> nrows;
  nrows.reserve(m);
  for (const auto& row : rows_) {
    NormRow nr{row.coeffs, row.rhs, row.sense};
    if (nr.b < 0) {
      nr.a = -nr.a;
      nr.b = -nr.b;
      if (nr.sense == Sense::le) nr.sense = Sense::ge;
      else if (nr.sense == Sense::ge) nr.sense = Sense::le;
    }
    nrows.push_back(std::move(nr));
  }

  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (nrows[i].sense != Sense::eq) slack_col[i] = ncols++;
  }
  const int real_cols = ncols;
  std::vector<int> art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (nrows[i].sense != Sense::le) art_col[i] = ncols++;
  }

  Tableau t = Tableau::Zero(m + 1, ncols + 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < num_vars_; ++j) {
      const double a = nrows[i].a[j];
      t(i, pos_col[j]) = a;
      if (neg_col[j] >= 0) t(i, neg_col[j]) = -a;
    }
    if (slack_col[i] >= 0) t(i, slack_col[i]) = nrows[i].sense == Sense::le ? 1.0 : -1.0;
    if (art_col[i] >= 0) {
      t(i, art_col[i]) = 1.0;
      basis[i] = art_col[i];
    } else {
      basis[i] = slack_col[i];
    }
    t(i, ncols) = nrows[i].b;
  }

  Simplex simplex(std::move(t), std::move(basis));
  long pivots_left = max_pivots;
  LpSolution out;

  if (real_cols < ncols) {
    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(ncols);
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) phase1[art_col[i]] = 1.0;
    simplex.set_costs(phase1);
    const LpStatus st = simplex.optimize(ncols, pivots_left);
    if (st == LpStatus::pivot_limit) {
      out.status = st;
      return out;
    }
    if (-simplex.tableau()(m, ncols) > kPhaseOneTol) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Drive remaining (zero-level) artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (simplex.basis()[i] < real_cols) continue;
      for (int j = 0; j < real_cols; ++j) {
        if (std::abs(simplex.tableau()(i, j)) > 1e-9) {
          simplex.pivot(i, j);
          break;
        }
      }
    }
    // Rows still holding an artificial are redundant; zero them so they never pivot.
    for (int i = 0; i < m; ++i) {
      if (simplex.basis()[i] >= real_cols) {
        auto& tab = simplex.tableau();
        const int b = simplex.basis()[i];
        tab.row(i).setZero();
        tab(i, b) = 1.0;
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(ncols);
  for (int j = 0; j < num_vars_; ++j) {
    phase2[pos_col[j]] = cost_[j];
    if (neg_col[j] >= 0) phase2[neg_col[j]] = -cost_[j];
  }
  simplex.set_costs(phase2);
  const LpStatus st = simplex.optimize(real_cols, pivots_left);
  out.status = st;
  if (st != LpStatus::optimal) return out;

  Eigen::VectorXd col_value = Eigen::VectorXd::Zero(ncols);
  for (int i = 0; i < m; ++i) col_value[simplex.basis()[i]] = simplex.tableau()(i, ncols);
  out.x.resize(num_vars_);
  for (int j = 0; j < num_vars_; ++j) {
    out.x[j] = col_value[pos_col[j]];
    if (neg_col[j] >= 0) out.x[j] -= col_value[neg_col[j]];
  }
  out.objective = cost_.dot(out.x);
  return out;
}

}  // namespace hulldev
