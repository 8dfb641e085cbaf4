#pragma once

#include <Eigen/Dense>

namespace logmink::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct Result {
  Status status = Status::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// minimize c'x  s.t.  A x = b,  x >= 0.
///
/// Dense two-phase tableau simplex. Dantzig pricing, switching to Bland's rule
/// after a run of degenerate pivots. Meant for the small problems in this
/// library (a few thousand columns at most).
Result minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace logmink::lp
