#include "logmink/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace logmink {

std::string_view to_string(Branch b) { return b == Branch::Irreducible ? "irreducible" : "reducible"; }

namespace {

void require_half_open(double v, const char* name) {
  if (!(v > 0.0 && v < 0.5)) throw Error(ErrorKind::ParameterOutOfRange, std::string(name) + " must lie in (0, 1/2)");
}

}  // namespace

StabilityConstants constants(int n, double delta, double tau, bool irreducible, double c) {
  if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "dimension must be at least 2");
  if (!(c > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "absolute constant c must be positive");
  StabilityConstants k;
  k.n = n;
  k.delta = delta;
  k.tau = tau;
  k.c = c;
  const double dn = n;
  if (irreducible) {
    k.branch = Branch::Irreducible;
    k.R0 = dn;
    k.r0 = 1.0 / std::numbers::e;
    k.gamma0 = std::pow(c, dn);
    return k;
  }
  require_half_open(delta, "delta");
  require_half_open(tau, "tau");
  k.branch = Branch::Reducible;
  const double n6 = std::pow(dn, 6.0);
  k.R0 = std::pow(n6 / delta, 1.0 / tau);
  k.r0 = std::pow(dn, dn / 2.0) / std::pow(5.0, dn) * std::pow(delta / n6, (dn - 1.0) / tau);
  // Evaluated in logs; the individual factors overflow at moderate tau.
  const double log_g = dn * std::log(c) - std::log(tau) - 3.0 * dn / tau * std::log(delta) + 12.0 * dn / tau * std::log(dn);
  k.gamma0 = std::exp(log_g);
  return k;
}

double eta_constant(int n, double delta, double tau) {
  if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "dimension must be at least 2");
  require_half_open(delta, "delta");
  require_half_open(tau, "tau");
  const double dn = n;
  return delta * tau / (4.0 * dn) * std::pow(dn, dn / 2.0) / std::pow(5.0, dn) *
         std::pow(delta / std::pow(dn, 6.0), dn / tau);
}

double chop_leg(int n, double eps) {
  return std::pow(std::tgamma(n + 1.0) * eps, 1.0 / n);
}

HPolytope chopped_cube(int n, double eps) {
  if (n < 2 || n > kMaxExactDim) throw Error(ErrorKind::DimensionUnsupported, "chopped cube needs 2 <= n <= 4");
  if (!(eps >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "eps must be nonnegative");
  const double limit = std::pow(0.5, n) / std::tgamma(n + 1.0);
  if (eps >= limit) {
    throw Error(ErrorKind::CutsOverlap,
                "corner simplices of volume " + std::to_string(eps) + " overlap (need eps < " + std::to_string(limit) + ")");
  }
  std::vector<UnitVector> normals;
  std::vector<double> h;
  for (int i = 0; i < n; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Vec e = Vec::Zero(n);
      e[i] = sgn;
      normals.emplace_back(e);
      h.push_back(0.5);
    }
  }
  if (eps > 0.0) {
    const double t = chop_leg(n, eps);
    const double rn = std::sqrt(static_cast<double>(n));
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec s(n);
      for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1.0 : 1.0;
      normals.emplace_back(s / rn);
      h.push_back((n / 2.0 - t) / rn);
    }
  }
  const double scale = std::pow(1.0 - std::pow(2.0, n) * eps, -1.0 / n);
  for (double& v : h) v *= scale;
  return HPolytope(n, std::move(normals), std::move(h));
}

Mat phi_s_matrix(const UnitVector& e, double s) {
  if (!(s > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "s must be positive");
  const int n = e.dim();
  const Vec& u = e.coords();
  return s * Mat::Identity(n, n) + (std::pow(s, -(n - 1.0)) - s) * u * u.transpose();
}

HPolytope diagonal_transform(const HPolytope& p, const UnitVector& e, double s) {
  if (e.dim() != p.dim()) throw Error(ErrorKind::InvalidInput, "direction and body dimensions differ");
  return p.linear_image(phi_s_matrix(e, s));
}

DiscreteSphericalMeasure mu_zero(const UnitVector& e) {
  return DiscreteSphericalMeasure(e.dim(), {{e.coords(), 0.5}, {-e.coords(), 0.5}});
}

HPolytope qt_construction(const HPolytope& m1, const Mat& basis_l, const HPolytope& c1, const Mat& basis_perp,
                          double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "t must be nonnegative");
  const int d = m1.dim();
  const int n = d + c1.dim();
  double rho = m1.support(0);
  for (double h : m1.supports()) rho = std::min(rho, h);
  const double grow = (t + rho) / rho;
  const double shrink = std::pow(rho / (t + rho), static_cast<double>(d) / (n - d));
  return direct_sum(m1.dilate(grow), basis_l, c1.dilate(shrink), basis_perp);
}

}  // namespace logmink
