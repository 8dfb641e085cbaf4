#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "logmink/error.hpp"

namespace logmink {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kGeomTol = 1e-9;
inline constexpr int kMaxExactDim = 4;

/// Direction on the unit sphere. Construction checks the norm; use
/// `UnitVector::normalize` to project an arbitrary nonzero vector.
class UnitVector {
 public:
  explicit UnitVector(Vec coords);
  static UnitVector normalize(const Vec& v);

  const Vec& coords() const noexcept { return v_; }
  int dim() const noexcept { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }

 private:
  Vec v_;
};

/// Convex body {x : <u_i, x> <= h_i} with the origin in its interior.
///
/// Only the cheap invariants (unit normals, pairwise distinct, h_i > 0) are
/// checked on construction. Boundedness needs an LP and is checked when the
/// facet complex is built.
class HPolytope {
 public:
  HPolytope(int dim, std::vector<UnitVector> normals, std::vector<double> supports);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return normals_.size(); }
  const std::vector<UnitVector>& normals() const noexcept { return normals_; }
  const std::vector<double>& supports() const noexcept { return supports_; }
  const Vec& normal(std::size_t i) const { return normals_[i].coords(); }
  double support(std::size_t i) const { return supports_[i]; }

  HPolytope dilate(double t) const;
  HPolytope with_supports(std::vector<double> supports) const;
  /// Image under an invertible linear map: normals go through A^{-T}.
  HPolytope linear_image(const Mat& a) const;

 private:
  int dim_;
  std::vector<UnitVector> normals_;
  std::vector<double> supports_;
};

/// Builds the H-representation of conv(vertices); the origin must be interior.
HPolytope polytope_from_vertices(int dim, const std::vector<Vec>& vertices);

struct Facet {
  std::size_t normal_index;
  std::vector<std::size_t> vertex_indices;
};

struct FacetComplex {
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<Facet> facets;            // nonempty facets only
  std::vector<double> facet_areas;      // indexed like the polytope's normals; 0 if redundant
  std::vector<std::size_t> redundant;   // normal indices with no facet
  double volume = 0.0;
  Vec centroid;
};

FacetComplex build_facet_complex(const HPolytope& p);

double volume(const HPolytope& p);

double support_eval(const FacetComplex& fc, const Vec& u);
double support_eval(const HPolytope& p, const UnitVector& u);

/// True iff the origin lies in the interior of conv(directions) and the
/// directions span R^n. Solved as a small LP.
bool positively_spans(int dim, const std::vector<Vec>& directions);

struct HausdorffResult {
  double value = 0.0;        // certified lower bound of sup|h_p - h_q|
  double upper_bound = 0.0;  // value <= true distance <= upper_bound <= value + tol
  std::size_t evaluations = 0;
};

inline constexpr std::size_t kDefaultHausdorffBudget = 4'000'000;

HausdorffResult hausdorff_distance(const FacetComplex& p, const FacetComplex& q, double tol,
                                   std::size_t budget = kDefaultHausdorffBudget);
HausdorffResult hausdorff_distance(const HPolytope& p, const HPolytope& q, double tol,
                                   std::size_t budget = kDefaultHausdorffBudget);

struct BodyMetrics {
  double inradius_o = 0.0;      // min h_i: radius of the largest o-centred ball in K
  double circumradius_o = 0.0;  // max vertex norm
  Vec centroid;
};

BodyMetrics radii_and_centroid(const HPolytope& p);
BodyMetrics radii_and_centroid(const HPolytope& p, const FacetComplex& fc);

/// a lives in span(basis_a), b in span(basis_b); bases are n x d orthonormal
/// column blocks of mutually orthogonal subspaces.
HPolytope direct_sum(const HPolytope& a, const Mat& basis_a, const HPolytope& b,
                     const Mat& basis_b);

/// Gauge of q - q at x.
double norm_in_difference_body(const Vec& x, const HPolytope& q);

/// Whether every point satisfies all halfspaces of `outer` within tol.
bool contains_points(const HPolytope& outer, const std::vector<Vec>& points, double tol = kGeomTol);

}  // namespace logmink
