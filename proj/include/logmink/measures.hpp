#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "logmink/coxeter.hpp"
#include "logmink/geometry.hpp"
#include "logmink/spherical_measure.hpp"

namespace logmink {

inline constexpr std::size_t kMaxTransportAtoms = 512;

/// Atoms (u_i, h_i * area_i / n) on the nonredundant facets.
DiscreteSphericalMeasure cone_volume_measure(const HPolytope& p);
DiscreteSphericalMeasure cone_volume_measure(const HPolytope& p, const FacetComplex& fc);

/// Atoms (u_i, area_i).
DiscreteSphericalMeasure surface_area_measure(const HPolytope& p);
DiscreteSphericalMeasure surface_area_measure(const HPolytope& p, const FacetComplex& fc);

/// Chordal distance from u to the great subsphere L ∩ S^{n-1}; basis is n x d
/// orthonormal. sqrt(2) when u is orthogonal to L.
double distance_to_subsphere(const Vec& u, const Mat& basis);

/// Mass of the closed tube of chordal radius rho around L ∩ S^{n-1}.
double tube_mass(const DiscreteSphericalMeasure& mu, const Mat& basis, double rho);

enum class Verdict { Strict, Equality, Violated };

std::string_view to_string(Verdict v);

struct SubspaceRecord {
  Mat basis;
  int dim = 0;
  std::vector<std::size_t> components;
  double mass = 0.0;       // tube mass (radius 0 for the qualitative check)
  double threshold = 0.0;
  double slack = 0.0;      // threshold - mass
  bool split_support = true;  // supp mu within L ∪ L^perp (qualitative check only)
};

struct SCCReport {
  Verdict verdict = Verdict::Strict;
  std::vector<SubspaceRecord> records;
  std::optional<std::size_t> witness;  // index into records when not strict
  bool irrelevant = false;             // no proper invariant subspace exists
  double total_mass = 0.0;
};

/// Subspace concentration with the direct-sum equality clause. The measure
/// must be invariant under g, else MeasureNotInvariant.
SCCReport check_theorem_1_1(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g, double tol = 1e-9);
SCCReport check_theorem_1_1(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g,
                            const InvariantDecomposition& d, double tol = 1e-9);

/// Tube condition mu(Psi(L ∩ S^{n-1}, delta)) <= (1 - tau) dim L / n for a
/// probability measure; delta, tau in (0, 1/2).
SCCReport check_quantitative_scc(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g, double delta,
                                 double tau);
SCCReport check_quantitative_scc(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g,
                                 const InvariantDecomposition& d, double delta, double tau);

/// Optimal transport cost with chordal ground metric. Masses must agree to 1e-9.
double wasserstein(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu);

/// sup of ∫f d(mu - nu) over 1-Lipschitz f with |f| <= 1, as an exact LP.
double bounded_lipschitz(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu);

}  // namespace logmink
