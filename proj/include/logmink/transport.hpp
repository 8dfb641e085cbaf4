#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace logmink {

struct TransportArc {
  std::size_t from;
  std::size_t to;
  double flow;
};

struct TransportResult {
  double cost = 0.0;
  std::vector<TransportArc> plan;  // basic arcs with positive flow
  std::size_t pivots = 0;
};

/// Balanced transportation problem min sum c_ij x_ij, row sums = supply,
/// column sums = demand, x >= 0, solved exactly by the transportation
/// (network) simplex on a spanning-tree basis. Supplies and demands must be
/// nonnegative with equal totals up to 1e-12 relative; the last demand absorbs
/// the rounding difference.
TransportResult solve_transport(std::span<const double> supply, std::span<const double> demand,
                                const Eigen::MatrixXd& cost);

}  // namespace logmink
