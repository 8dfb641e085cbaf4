#include "logmink/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace logmink::lp {
namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-11;
constexpr int kDegenerateRunBeforeBland = 50;

// Tableau layout: rows 0..m-1 constraints, row m objective (reduced costs),
// last column is the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  Eigen::MatrixXd& data() { return t_; }
  std::vector<int>& basis() { return basis_; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < t_.rows(); ++i) {
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    }
    basis_[r] = c;
  }

  // Runs the simplex on columns [0, ncols). Returns Optimal or Unbounded.
  Status run(int ncols, int max_pivots) {
    int degenerate_run = 0;
    for (int it = 0; it < max_pivots; ++it) {
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      const int obj = rows();
      int enter = -1;
      double best = -kCostEps;
      for (int j = 0; j < ncols; ++j) {
        if (t_(obj, j) < best) {
          enter = j;
          if (bland) break;
          best = t_(obj, j);
        }
      }
      if (enter < 0) return Status::Optimal;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = t_(i, cols()) / a;
        if (ratio < best_ratio - 1e-14 ||
            (ratio <= best_ratio + 1e-14 && leave >= 0 && basis_[i] < basis_[leave])) {
          best_ratio = std::min(ratio, best_ratio);
          leave = i;
        }
      }
      if (leave < 0) return Status::Unbounded;
      degenerate_run = best_ratio <= 1e-14 ? degenerate_run + 1 : 0;
      pivot(leave, enter);
    }
    return Status::IterationLimit;
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

Result minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int max_pivots = 50 * (m + n) + 1000;
  Result result;

  // Phase 1: artificial variable per row, b made nonnegative.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = sign * b[i];
    basis[i] = n + i;
  }
  for (int i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m; ++i) t(m, n + i) = 0.0;

  Tableau tab(std::move(t), std::move(basis));
  Status s = tab.run(n, max_pivots);
  if (s == Status::IterationLimit) {
    result.status = s;
    return result;
  }
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (-tab.data()(m, n + m) > 1e-9 * scale) {
    result.status = Status::Infeasible;
    return result;
  }

  // Drive remaining artificials out of the basis; rows that cannot pivot are
  // redundant and get zeroed.
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.data()(i, j)) > kPivotEps) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
    } else {
      tab.data().row(i).setZero();
    }
  }

  // Phase 2 objective row expressed in the current basis.
  Eigen::MatrixXd& d = tab.data();
  d.row(m).setZero();
  d.row(m).head(n) = c.transpose();
  for (int i = 0; i < m; ++i) {
    const int bi = tab.basis()[i];
    if (bi < n && c[bi] != 0.0) d.row(m) -= c[bi] * d.row(i);
  }
  // Artificial columns are never allowed to re-enter.
  s = tab.run(n, max_pivots);
  result.status = s;
  if (s != Status::Optimal) return result;

  result.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int bi = tab.basis()[i];
    if (bi < n) result.x[bi] = d(i, n + m);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace logmink::lp
