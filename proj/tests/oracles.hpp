// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's solvers.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "logmink/coxeter.hpp"
#include "logmink/geometry.hpp"
#include "logmink/spherical_measure.hpp"

namespace oracle {

using logmink::Mat;
using logmink::Vec;

inline Vec axis(int n, int i, double s = 1.0) {
  Vec v = Vec::Zero(n);
  v[i] = s;
  return v;
}

inline Vec polar(double angle) {
  Vec v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

inline logmink::HPolytope box(const std::vector<double>& half) {
  const int n = static_cast<int>(half.size());
  std::vector<logmink::UnitVector> normals;
  std::vector<double> h;
  for (int i = 0; i < n; ++i) {
    normals.emplace_back(axis(n, i));
    normals.emplace_back(axis(n, i, -1.0));
    h.push_back(half[i]);
    h.push_back(half[i]);
  }
  return logmink::HPolytope(n, std::move(normals), std::move(h));
}

inline logmink::HPolytope cube(int n, double half = 0.5) { return box(std::vector<double>(n, half)); }

inline logmink::ReflectionGroup coordinate_group(int n) {
  std::vector<logmink::UnitVector> gens;
  for (int i = 0; i < n; ++i) gens.emplace_back(axis(n, i));
  return logmink::generate_group(gens);
}

inline logmink::ReflectionGroup dihedral8() {
  return logmink::generate_group({logmink::UnitVector(axis(2, 0)), logmink::UnitVector(polar(std::numbers::pi / 2 + std::numbers::pi / 4))});
}

/// Shoelace area of a convex polygon given in any order.
inline double shoelace(std::vector<Vec> pts) {
  Vec c = Vec::Zero(2);
  for (const Vec& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec& a = pts[i];
    const Vec& b = pts[(i + 1) % pts.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * std::abs(s);
}

/// Exact balanced transport by enumerating every basis: each subset of
/// m + k - 1 cells whose equality system has a unique nonnegative solution.
inline double brute_force_transport(const std::vector<double>& a, const std::vector<double>& b, const Mat& cost) {
  const int m = static_cast<int>(a.size());
  const int k = static_cast<int>(b.size());
  const int cells = m * k;
  const int basis = m + k - 1;
  Mat eq(m + k, cells);
  eq.setZero();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      eq(i, i * k + j) = 1.0;
      eq(m + j, i * k + j) = 1.0;
    }
  }
  Vec rhs(m + k);
  for (int i = 0; i < m; ++i) rhs[i] = a[i];
  for (int j = 0; j < k; ++j) rhs[m + j] = b[j];
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(basis);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == basis) {
      Mat sub(m + k, basis);
      for (int c = 0; c < basis; ++c) sub.col(c) = eq.col(pick[c]);
      Eigen::ColPivHouseholderQR<Mat> qr(sub);
      if (qr.rank() < basis) return;
      const Vec x = qr.solve(rhs);
      if ((sub * x - rhs).norm() > 1e-12) return;
      double c = 0.0;
      for (int t = 0; t < basis; ++t) {
        if (x[t] < -1e-13) return;
        c += x[t] * cost(pick[t] / k, pick[t] % k);
      }
      best = std::min(best, c);
      return;
    }
    for (int c = start; c <= cells - (basis - depth); ++c) {
      pick[depth] = c;
      rec(c + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

/// B2-invariant octagon measure: axis atoms weigh wa each, diagonal atoms
/// (1 - 4 wa)/4 each.
inline logmink::DiscreteSphericalMeasure octagon_measure(double wa) {
  const double wd = (1.0 - 4.0 * wa) / 4.0;
  std::vector<logmink::Atom> atoms;
  for (int k = 0; k < 8; ++k) atoms.push_back({polar(k * std::numbers::pi / 4), k % 2 == 0 ? wa : wd});
  return logmink::DiscreteSphericalMeasure(2, std::move(atoms));
}

struct OctagonSolution {
  double h_axis;
  double h_diag;
};

/// Minimizes wa*4 log h_a + wd*4 log h_d over B2-invariant octagons of area 1.
/// With h_a = 1 and rho = h_d, the area is 4 - 4 (sqrt2 - rho)^2 for
/// rho in (1/sqrt2, sqrt2); grid search then golden section on rho.
inline OctagonSolution octagon_minimizer(double wa) {
  const double wd = (1.0 - 4.0 * wa) / 4.0;
  const double r2 = std::sqrt(2.0);
  auto area = [&](double rho) { return 4.0 - 4.0 * (r2 - rho) * (r2 - rho); };
  auto phi = [&](double rho) { return 4.0 * wd * std::log(rho) - 0.5 * std::log(area(rho)); };
  const double lo = 1.0 / r2, hi = r2;
  const int grid = 4000;
  int best = 1;
  for (int i = 1; i < grid; ++i) {
    if (phi(lo + (hi - lo) * i / grid) < phi(lo + (hi - lo) * best / grid)) best = i;
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / grid;
  double b = lo + (hi - lo) * std::min(best + 1, grid) / grid;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a);
    const double d = a + g * (b - a);
    if (phi(c) < phi(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  const double rho = 0.5 * (a + b);
  const double ha = 1.0 / std::sqrt(area(rho));
  return {ha, rho * ha};
}

/// Origin-symmetric random polytope: pairs +-u with equal random supports.
inline logmink::HPolytope random_symmetric_body(int n, int pairs, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  std::vector<logmink::UnitVector> normals;
  std::vector<double> h;
  for (int i = 0; i < n; ++i) {
    normals.emplace_back(axis(n, i));
    normals.emplace_back(axis(n, i, -1.0));
    const double v = unif(rng);
    h.push_back(v);
    h.push_back(v);
  }
  for (int p = 0; p < pairs; ++p) {
    Vec u(n);
    for (int i = 0; i < n; ++i) u[i] = gauss(rng);
    u.normalize();
    normals.emplace_back(u);
    normals.emplace_back(-u);
    const double v = unif(rng);
    h.push_back(v);
    h.push_back(v);
  }
  return logmink::HPolytope(n, std::move(normals), std::move(h));
}

inline Vec random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vec u(n);
  for (int i = 0; i < n; ++i) u[i] = gauss(rng);
  return u.normalized();
}

}  // namespace oracle
