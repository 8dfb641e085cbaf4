#pragma once

#include <cstddef>
#include <vector>

#include "logmink/geometry.hpp"

namespace logmink {

struct Atom {
  Vec u;
  double w;
};

/// Finite positive combination of Dirac masses on S^{n-1}.
///
/// Atoms closer than 1e-9 are merged on construction (weights summed, the
/// first direction kept); zero weights are dropped.
class DiscreteSphericalMeasure {
 public:
  DiscreteSphericalMeasure(int dim, std::vector<Atom> atoms);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  double mass() const noexcept { return mass_; }

  DiscreteSphericalMeasure scaled(double lambda) const;
  DiscreteSphericalMeasure normalized() const { return scaled(1.0 / mass_); }

  /// Index of the atom within tol of u, or size() if none.
  std::size_t find(const Vec& u, double tol = kGeomTol) const;

 private:
  int dim_;
  std::vector<Atom> atoms_;
  double mass_ = 0.0;
};

}  // namespace logmink
