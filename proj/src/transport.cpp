#include "logmink/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "logmink/error.hpp"

namespace logmink {
namespace {

struct Cell {
  int row;
  int col;
  double flow;
};

// Spanning-tree basis over m row nodes and k column nodes; node ids are
// rows first, then columns (m + j).
class TreeBasis {
 public:
  TreeBasis(int m, int k) : m_(m), k_(k), adj_(m + k), basic_(static_cast<std::size_t>(m) * k, -1) {}

  int add(int i, int j, double x) {
    const int id = static_cast<int>(cells_.size());
    cells_.push_back({i, j, x});
    link(id);
    return id;
  }

  void replace(int slot, int i, int j, double x) {
    unlink(slot);
    cells_[slot] = {i, j, x};
    link(slot);
  }

  bool is_basic(int i, int j) const { return basic_[index(i, j)] >= 0; }
  std::vector<Cell>& cells() { return cells_; }
  const std::vector<Cell>& cells() const { return cells_; }

  void potentials(const Eigen::MatrixXd& cost, std::vector<double>& u, std::vector<double>& v) const {
    std::vector<char> seen(m_ + k_, 0);
    std::vector<int> stack{0};
    u[0] = 0.0;
    seen[0] = 1;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (int id : adj_[node]) {
        const Cell& c = cells_[id];
        const int other = node < m_ ? m_ + c.col : c.row;
        if (seen[other]) continue;
        seen[other] = 1;
        if (node < m_) {
          v[c.col] = cost(c.row, c.col) - u[c.row];
        } else {
          u[c.row] = cost(c.row, c.col) - v[c.col];
        }
        stack.push_back(other);
      }
    }
  }

  // Cells on the tree path from row node i to column node m + j, in order
  // starting at row i.
  std::vector<int> path(int i, int j) const {
    const int target = m_ + j;
    std::vector<int> via(m_ + k_, -1);
    std::vector<char> seen(m_ + k_, 0);
    std::queue<int> q;
    q.push(i);
    seen[i] = 1;
    while (!q.empty()) {
      const int node = q.front();
      q.pop();
      if (node == target) break;
      for (int id : adj_[node]) {
        const Cell& c = cells_[id];
        const int other = node < m_ ? m_ + c.col : c.row;
        if (seen[other]) continue;
        seen[other] = 1;
        via[other] = id;
        q.push(other);
      }
    }
    std::vector<int> out;
    int node = target;
    while (node != i) {
      const int id = via[node];
      out.push_back(id);
      const Cell& c = cells_[id];
      node = node < m_ ? m_ + c.col : c.row;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * k_ + j; }

  void link(int id) {
    const Cell& c = cells_[id];
    adj_[c.row].push_back(id);
    adj_[m_ + c.col].push_back(id);
    basic_[index(c.row, c.col)] = id;
  }

  void unlink(int id) {
    const Cell& c = cells_[id];
    auto drop = [id](std::vector<int>& list) { list.erase(std::find(list.begin(), list.end(), id)); };
    drop(adj_[c.row]);
    drop(adj_[m_ + c.col]);
    basic_[index(c.row, c.col)] = -1;
  }

  int m_;
  int k_;
  std::vector<Cell> cells_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> basic_;
};

}  // namespace

TransportResult solve_transport(std::span<const double> supply, std::span<const double> demand,
                                const Eigen::MatrixXd& cost) {
  const int m = static_cast<int>(supply.size());
  const int k = static_cast<int>(demand.size());
  if (m == 0 || k == 0 || cost.rows() != m || cost.cols() != k) {
    throw Error(ErrorKind::InvalidInput, "transport: shape mismatch");
  }
  double total_s = 0.0;
  double total_d = 0.0;
  for (double s : supply) {
    if (!(s >= 0.0)) throw Error(ErrorKind::InvalidInput, "transport: negative supply");
    total_s += s;
  }
  for (double d : demand) {
    if (!(d >= 0.0)) throw Error(ErrorKind::InvalidInput, "transport: negative demand");
    total_d += d;
  }
  if (std::abs(total_s - total_d) > 1e-12 * std::max(1.0, total_s)) {
    throw Error(ErrorKind::MassMismatch, "transport: unbalanced problem");
  }

  // North-west corner start; ties advance the row so the basis stays a tree
  // with exactly m + k - 1 cells.
  TreeBasis basis(m, k);
  {
    std::vector<double> a(supply.begin(), supply.end());
    std::vector<double> b(demand.begin(), demand.end());
    int i = 0;
    int j = 0;
    while (true) {
      const double x = std::min(a[i], b[j]);
      basis.add(i, j, x);
      a[i] -= x;
      b[j] -= x;
      if (i == m - 1 && j == k - 1) break;
      if (i == m - 1) {
        ++j;
      } else if (j == k - 1) {
        ++i;
      } else if (a[i] <= b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  const double eps = 1e-12 * (1.0 + cost.cwiseAbs().maxCoeff());
  std::vector<double> u(m);
  std::vector<double> v(k);
  TransportResult result;
  const std::size_t max_pivots = 20 * static_cast<std::size_t>(m) * k + 10'000;
  int degenerate_run = 0;

  for (;;) {
    basis.potentials(cost, u, v);
    const bool bland = degenerate_run > 2 * (m + k);
    int ei = -1;
    int ej = -1;
    double best = -eps;
    for (int i = 0; i < m && !(bland && ei >= 0); ++i) {
      for (int j = 0; j < k; ++j) {
        if (basis.is_basic(i, j)) continue;
        const double r = cost(i, j) - u[i] - v[j];
        if (r < best) {
          ei = i;
          ej = j;
          if (bland) break;
          best = r;
        }
      }
    }
    if (ei < 0) break;
    if (++result.pivots > max_pivots) {
      throw Error(ErrorKind::ToleranceUnreachable, "transport: pivot limit exceeded");
    }

    const std::vector<int> cyc = basis.path(ei, ej);
    double theta = std::numeric_limits<double>::infinity();
    int leave = -1;
    for (std::size_t t = 0; t < cyc.size(); t += 2) {
      const double x = basis.cells()[cyc[t]].flow;
      if (x < theta) {
        theta = x;
        leave = cyc[t];
      }
    }
    for (std::size_t t = 0; t < cyc.size(); ++t) {
      double& x = basis.cells()[cyc[t]].flow;
      x += (t % 2 == 0) ? -theta : theta;
      if (x < 0.0) x = 0.0;
    }
    degenerate_run = theta <= 1e-15 ? degenerate_run + 1 : 0;
    basis.replace(leave, ei, ej, theta);
  }

  for (const Cell& c : basis.cells()) {
    result.cost += cost(c.row, c.col) * c.flow;
    if (c.flow > 0.0) {
      result.plan.push_back({static_cast<std::size_t>(c.row), static_cast<std::size_t>(c.col), c.flow});
    }
  }
  return result;
}

}  // namespace logmink
