#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "logmink/constructions.hpp"
#include "logmink/coxeter.hpp"
#include "logmink/geometry.hpp"
#include "logmink/measures.hpp"

namespace logmink {

enum class InitKind { UnitSupports, InballScaled };

struct SolveOptions {
  double tol_residual = 1e-8;
  int max_iter = 50'000;
  double damping = 0.5;
  InitKind init = InitKind::UnitSupports;
  std::uint64_t seed = 1;
  /// Newton steps on the orbit-reduced objective, tried before the
  /// multiplicative step and kept only if they pass the same descent test.
  bool newton = true;
  /// Quantitative parameters for the reducible-branch radii check.
  std::optional<double> delta;
  std::optional<double> tau;
  double c_const = 1.0;
};

struct RadiiCheck {
  StabilityConstants constants;
  double min_h = 0.0;
  double max_h = 0.0;
  bool pass = false;
};

struct SolveReport {
  explicit SolveReport(HPolytope b) : body(std::move(b)) {}

  HPolytope body;
  double residual = 0.0;  // max_i |V_K(u_i) - mu(u_i)|
  int iterations = 0;
  std::vector<double> objective_trace;  // sum alpha_i log h_i at V = 1, accepted iterates
  double invariance_defect = 0.0;
  std::optional<RadiiCheck> radii_check;
  /// Set on equality-case inputs: the invariant subspace L with
  /// mu(L ∩ S^{n-1}) = (dim L / n) mu(S^{n-1}); solutions then form a family.
  std::optional<SubspaceRecord> degenerate_subspace;
  std::vector<std::size_t> dropped_facets;  // zero-area facets of the returned body
};

/// Raised for ConditionViolated, Stalled and MaxIterExceeded. Carries what
/// the solver had when it stopped.
class SolveFailure : public Error {
 public:
  SolveFailure(ErrorKind kind, const std::string& what, std::optional<HPolytope> partial,
               std::optional<SubspaceRecord> witness, double residual, int iterations)
      : Error(kind, what),
        partial_(std::move(partial)),
        witness_(std::move(witness)),
        residual_(residual),
        iterations_(iterations) {}

  const std::optional<HPolytope>& partial_body() const noexcept { return partial_; }
  const std::optional<SubspaceRecord>& witness() const noexcept { return witness_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::optional<HPolytope> partial_;
  std::optional<SubspaceRecord> witness_;
  double residual_;
  int iterations_;
};

/// G-invariant polytope K with V_K = mu and V(K) = 1 for a G-invariant
/// probability measure mu whose atoms positively span R^n.
SolveReport solve_log_minkowski(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g,
                                const SolveOptions& opts = {});

/// Any total mass m: solves mu/m and dilates by m^{1/n}. Residual and
/// radii are reported for the returned (unnormalized) body.
SolveReport solve_unnormalized(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g,
                               const SolveOptions& opts = {});

struct VerificationRecord {
  double volume = 0.0;
  double residual = 0.0;
  RadiiCheck radii;
  double circumradius = 0.0;
  bool lemma_bounds = true;  // irreducible only: 1/e < min h and circumradius < n
};

/// Recomputes the cone-volume measure and the radii bounds of the branch
/// matching g. Throws VerificationFailed naming the first failing clause.
VerificationRecord verify_solution(const SolveReport& report, const DiscreteSphericalMeasure& mu,
                                   const ReflectionGroup& g, double delta, double tau, double tol = 1e-8,
                                   double c_const = 1.0);

/// Objective sum alpha_i log h_i of the body rescaled to volume 1.
double log_minkowski_objective(const std::vector<double>& alpha, const std::vector<double>& h, double vol, int n);

}  // namespace logmink
