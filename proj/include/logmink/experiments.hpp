#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace logmink {

inline constexpr int kSweepSchemaVersion = 1;

enum class ExperimentKind {
  InverseStability,
  ForwardContinuity,
  PhiSDegeneration,
  ChoppedCubeSharpness,
  QtDivergence,
};

std::string_view to_string(ExperimentKind k);
ExperimentKind experiment_from_string(std::string_view s);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::InverseStability;
  int n = 2;
  std::vector<double> grid;  // empty: the experiment's default grid
  double delta = 0.1;
  double tau = 0.25;
  std::uint64_t seed = 1;
  double solver_tol = 1e-12;
  double hausdorff_tol = 1e-10;
  double c_const = 1.0;
  /// Forward continuity only: "chopped" (cube vs chopped cube) or "support"
  /// (cube vs symmetric support perturbation).
  std::string variant = "chopped";
};

std::vector<double> default_grid(ExperimentKind k);

/// Throws ParameterOutOfRange on an invalid configuration.
void validate(const ExperimentConfig& cfg);

/// One CSV table. Every row carries a status ("ok" or the error kind that
/// aborted it) and a hash of the inputs that produced it.
struct SweepTable {
  ExperimentKind kind = ExperimentKind::InverseStability;
  std::vector<std::string> columns;
  std::vector<double> params;
  std::vector<std::vector<double>> values;  // NaN where a row aborted
  std::vector<std::string> status;
  std::vector<std::string> input_hash;
  std::map<std::string, double> summary;  // fitted constants, slopes, pass flags (0/1)

  double value(std::size_t row, const std::string& column) const;
  std::string to_csv() const;
};

SweepTable run_experiment(const ExperimentConfig& cfg);

SweepTable run_inverse_stability(const ExperimentConfig& cfg);
SweepTable run_forward_continuity(const ExperimentConfig& cfg);
SweepTable run_phi_s_degeneration(const ExperimentConfig& cfg);
SweepTable run_chopped_cube_sharpness(const ExperimentConfig& cfg);
SweepTable run_qt_divergence(const ExperimentConfig& cfg);

/// Least-squares slope of log y against log x over points with x, y > 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// FNV-1a 64-bit digest, lowercase hex.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace logmink
