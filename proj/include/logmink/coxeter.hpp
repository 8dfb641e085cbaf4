#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "logmink/geometry.hpp"
#include "logmink/spherical_measure.hpp"

namespace logmink {

inline constexpr std::size_t kDefaultOrderCap = 1024;
inline constexpr double kMatrixTol = 1e-10;

/// Finite group generated by reflections through the hyperplanes u^perp.
/// Elements are explicit orthogonal matrices; elements[0] is the identity.
struct ReflectionGroup {
  int dim = 0;
  std::vector<UnitVector> generators;
  std::vector<Mat> elements;

  std::size_t order() const noexcept { return elements.size(); }
};

Mat reflection_matrix(const Vec& normal);

ReflectionGroup generate_group(const std::vector<UnitVector>& normals, std::size_t order_cap = kDefaultOrderCap);

/// Closure of an arbitrary finite set of orthogonal matrices under products.
std::vector<Mat> close_under_products(int dim, const std::vector<Mat>& seeds, std::size_t order_cap = kDefaultOrderCap);

/// Operator norm of the group average (1/|G|) sum A; zero iff no nonzero fixed points.
double fixed_point_defect(const ReflectionGroup& g);

struct InvariantDecomposition {
  int dim = 0;
  std::vector<Mat> subspaces;  // orthonormal n x d_i bases of the irreducible components

  std::vector<int> dims() const;
  std::size_t count() const noexcept { return subspaces.size(); }
  bool irreducible() const noexcept { return subspaces.size() == 1; }
};

struct DecompositionOptions {
  std::uint64_t seed = 0x1f2e3d4c5b6a7988ULL;
  int trials = 10;
  double gap = 1e-7;
};

InvariantDecomposition invariant_decomposition(const ReflectionGroup& g, const DecompositionOptions& opts = {});

struct InvariantSubspace {
  Mat basis;
  int dim = 0;
  std::vector<std::size_t> components;  // indices into InvariantDecomposition::subspaces
};

/// All 2^m - 2 proper direct sums of the irreducible components.
std::vector<InvariantSubspace> enumerate_invariant_subspaces(const InvariantDecomposition& d);

/// perm[a][i] = index j with A_a u_i = u_j. Throws InvalidInput if the
/// direction set is not closed under the group.
std::vector<std::vector<std::size_t>> direction_permutations(const std::vector<Vec>& dirs, const ReflectionGroup& g,
                                                             double tol = kGeomTol);

/// Orbit label per direction, labels numbered 0..k-1 in order of first appearance.
std::vector<std::size_t> orbit_labels(const std::vector<std::vector<std::size_t>>& perms);

DiscreteSphericalMeasure symmetrize_measure(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g);

/// Largest weight mismatch |mu(A u) - mu(u)| over atoms and group elements;
/// infinity if some image A u is not an atom.
double measure_invariance_defect(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g);

/// Orbit-completes the normal set, then averages supports over each orbit.
HPolytope symmetrize_supports(const HPolytope& p, const ReflectionGroup& g);

/// max over A in G and facet normals u of |h_K(A u) - h_K(u)|.
double body_invariance_defect(const HPolytope& p, const FacetComplex& fc, const ReflectionGroup& g);

}  // namespace logmink
