#pragma once

#include <string_view>

#include "logmink/geometry.hpp"
#include "logmink/spherical_measure.hpp"

namespace logmink {

enum class Branch { Irreducible, Reducible };

std::string_view to_string(Branch b);

/// Radii and Hölder constants of the inverse stability estimate. `c` is the
/// unspecified absolute constant in gamma0; it is a knob, default 1.
struct StabilityConstants {
  Branch branch = Branch::Irreducible;
  int n = 0;
  double delta = 0.0;
  double tau = 0.0;
  double c = 1.0;
  double R0 = 0.0;
  double r0 = 0.0;
  double gamma0 = 0.0;
};

/// Irreducible: R0 = n, r0 = 1/e, gamma0 = c^n (delta, tau unused).
/// Reducible:   R0 = (n^6/delta)^{1/tau}, r0 = (n^{n/2}/5^n)(delta/n^6)^{(n-1)/tau},
///              gamma0 = (c^n/tau) delta^{-3n/tau} n^{12n/tau}; delta, tau in (0, 1/2).
StabilityConstants constants(int n, double delta, double tau, bool irreducible, double c = 1.0);

/// (delta tau / 4n) (n^{n/2}/5^n) (delta/n^6)^{n/tau}.
double eta_constant(int n, double delta, double tau);

/// Unit cube with a corner simplex of volume eps cut at every vertex by a
/// plane orthogonal to the vertex diagonal, rescaled to volume 1.
HPolytope chopped_cube(int n, double eps);

/// Leg length (n! eps)^{1/n} of a corner simplex of volume eps, before rescaling.
double chop_leg(int n, double eps);

/// Phi_s: e -> s^{-(n-1)} e, x -> s x on e^perp. Volume preserving.
Mat phi_s_matrix(const UnitVector& e, double s);
HPolytope diagonal_transform(const HPolytope& p, const UnitVector& e, double s);

/// 1/2 (delta_e + delta_{-e}).
DiscreteSphericalMeasure mu_zero(const UnitVector& e);

/// Q_t = ((t + rho)/rho) M1 ⊕ (rho/(t + rho))^{d/(n-d)} C1, rho = min support of M1.
HPolytope qt_construction(const HPolytope& m1, const Mat& basis_l, const HPolytope& c1, const Mat& basis_perp,
                          double t);

}  // namespace logmink
