#include "logmink/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "logmink/constructions.hpp"
#include "logmink/coxeter.hpp"
#include "logmink/io.hpp"
#include "logmink/measures.hpp"
#include "logmink/solver.hpp"

namespace logmink {

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::InverseStability:
      return "inverse_stability";
    case ExperimentKind::ForwardContinuity:
      return "forward_continuity";
    case ExperimentKind::PhiSDegeneration:
      return "phi_s_degeneration";
    case ExperimentKind::ChoppedCubeSharpness:
      return "chopped_cube_sharpness";
    case ExperimentKind::QtDivergence:
      return "qt_divergence";
  }
  return "unknown";
}

ExperimentKind experiment_from_string(std::string_view s) {
  if (s == "inverse" || s == "inverse_stability") return ExperimentKind::InverseStability;
  if (s == "forward" || s == "forward_continuity") return ExperimentKind::ForwardContinuity;
  if (s == "phi-s" || s == "phi_s_degeneration") return ExperimentKind::PhiSDegeneration;
  if (s == "chopped" || s == "chopped-cube" || s == "chopped_cube_sharpness") return ExperimentKind::ChoppedCubeSharpness;
  if (s == "qt" || s == "qt_divergence") return ExperimentKind::QtDivergence;
  throw Error(ErrorKind::ParameterOutOfRange, "unknown experiment '" + std::string(s) + "'");
}

std::vector<double> default_grid(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::InverseStability:
      return {0.0, 8e-2, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    case ExperimentKind::ForwardContinuity:
      return {1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4, 5e-5, 2e-5, 1e-5};
    case ExperimentKind::PhiSDegeneration:
      return {1, 2, 4, 8, 16, 32, 64};
    case ExperimentKind::ChoppedCubeSharpness:
      return {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    case ExperimentKind::QtDivergence:
      return {0.5, 1, 2, 5, 10};
  }
  return {};
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 2 || cfg.n > 3) throw Error(ErrorKind::ParameterOutOfRange, "experiments support n = 2 or 3");
  if (!(cfg.delta > 0.0 && cfg.delta < 0.5)) throw Error(ErrorKind::ParameterOutOfRange, "delta must lie in (0, 1/2)");
  if (!(cfg.tau > 0.0 && cfg.tau < 0.5)) throw Error(ErrorKind::ParameterOutOfRange, "tau must lie in (0, 1/2)");
  if (!(cfg.solver_tol > 0.0) || !(cfg.hausdorff_tol > 0.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "tolerances must be positive");
  }
  const std::vector<double>& g = cfg.grid;
  if (g.empty()) return;
  const bool up = g.size() < 2 || g[1] > g[0];
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (up ? !(g[i] > g[i - 1]) : !(g[i] < g[i - 1])) {
      throw Error(ErrorKind::ParameterOutOfRange, "sweep grid must be strictly monotone");
    }
  }
  for (double v : g) {
    if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::ParameterOutOfRange, "sweep grid values must be >= 0");
  }
  if (cfg.variant != "chopped" && cfg.variant != "support") {
    throw Error(ErrorKind::ParameterOutOfRange, "variant must be 'chopped' or 'support'");
  }
}

double SweepTable::value(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw Error(ErrorKind::InvalidInput, "no column '" + column + "'");
  return values.at(row)[static_cast<std::size_t>(it - columns.begin())];
}

std::string SweepTable::to_csv() const {
  std::ostringstream os;
  os << "# logmink sweep schema=" << kSweepSchemaVersion << " experiment=" << to_string(kind) << "\n";
  for (const auto& [k, v] : summary) os << "# " << k << "=" << io::format_double(v) << "\n";
  os << "schema,experiment,row,param";
  for (const std::string& c : columns) os << "," << c;
  os << ",status,input_hash\n";
  for (std::size_t r = 0; r < params.size(); ++r) {
    os << kSweepSchemaVersion << "," << to_string(kind) << "," << r << "," << io::format_double(params[r]);
    for (double v : values[r]) os << "," << io::format_double(v);
    os << "," << status[r] << "," << input_hash[r] << "\n";
  }
  return os.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = m * sxx - sx * sx;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / den;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
  return out;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vec axis(int n, int i, double s = 1.0) {
  Vec v = Vec::Zero(n);
  v[i] = s;
  return v;
}

ReflectionGroup coordinate_group(int n) {
  std::vector<UnitVector> gens;
  for (int i = 0; i < n; ++i) gens.emplace_back(axis(n, i));
  return generate_group(gens);
}

HPolytope unit_cube(int n) {
  std::vector<UnitVector> normals;
  for (int i = 0; i < n; ++i) {
    normals.emplace_back(axis(n, i));
    normals.emplace_back(axis(n, i, -1.0));
  }
  return HPolytope(n, std::move(normals), std::vector<double>(2 * static_cast<std::size_t>(n), 0.5));
}

HPolytope unit_volume(const HPolytope& p) { return p.dilate(std::pow(volume(p), -1.0 / p.dim())); }

// Axis atoms plus all sign diagonals: the octagon measure in the plane, its
// cube/octahedron analogue in R^3.
DiscreteSphericalMeasure inverse_base_measure(int n) {
  const double wa = n == 2 ? 0.15 : 0.1;
  const double wd = (1.0 - 2 * n * wa) / (1 << n);
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) {
    atoms.push_back({axis(n, i), wa});
    atoms.push_back({axis(n, i, -1.0), wa});
  }
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec s(n);
    for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    atoms.push_back({s / std::sqrt(static_cast<double>(n)), wd});
  }
  return DiscreteSphericalMeasure(n, std::move(atoms));
}

// Invariant reweighting: one factor (1 + eps xi) per orbit, then renormalize.
DiscreteSphericalMeasure perturb(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g,
                                 const std::vector<double>& xi, double eps) {
  std::vector<Vec> dirs;
  for (const Atom& a : mu.atoms()) dirs.push_back(a.u);
  const std::vector<std::size_t> label = orbit_labels(direction_permutations(dirs, g));
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < mu.size(); ++i) atoms.push_back({mu[i].u, mu[i].w * (1.0 + eps * xi[label[i] % xi.size()])});
  return DiscreteSphericalMeasure(mu.dim(), std::move(atoms)).normalized();
}

std::string hash_inputs(const ExperimentConfig& cfg, double param, const io::json& base) {
  std::ostringstream os;
  os << "schema=" << kSweepSchemaVersion << "|exp=" << to_string(cfg.kind) << "|n=" << cfg.n
     << "|param=" << io::format_double(param) << "|seed=" << cfg.seed << "|delta=" << io::format_double(cfg.delta)
     << "|tau=" << io::format_double(cfg.tau) << "|solver_tol=" << io::format_double(cfg.solver_tol)
     << "|hausdorff_tol=" << io::format_double(cfg.hausdorff_tol) << "|variant=" << cfg.variant
     << "|base=" << base.dump();
  return fnv1a_hex(os.str());
}

SweepTable start_table(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  SweepTable t;
  t.kind = cfg.kind;
  t.columns = std::move(columns);
  return t;
}

template <class RowFn>
void run_rows(SweepTable& t, const ExperimentConfig& cfg, const io::json& base, RowFn&& row) {
  const std::vector<double> grid = cfg.grid.empty() ? default_grid(cfg.kind) : cfg.grid;
  for (double p : grid) {
    t.params.push_back(p);
    t.input_hash.push_back(hash_inputs(cfg, p, base));
    try {
      std::vector<double> v = row(p);
      v.resize(t.columns.size(), kNaN);
      t.values.push_back(std::move(v));
      t.status.emplace_back("ok");
    } catch (const Error& e) {
      t.values.emplace_back(t.columns.size(), kNaN);
      t.status.emplace_back(to_string(e.kind()));
    }
  }
}

double hausdorff_value(const HPolytope& a, const HPolytope& b, double tol) {
  return hausdorff_distance(a, b, tol).value;
}

SolveOptions solver_options(const ExperimentConfig& cfg) {
  SolveOptions o;
  o.tol_residual = cfg.solver_tol;
  o.delta = cfg.delta;
  o.tau = cfg.tau;
  o.c_const = cfg.c_const;
  return o;
}

}  // namespace

SweepTable run_inverse_stability(const ExperimentConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  const ReflectionGroup g = coordinate_group(n);
  const InvariantDecomposition decomp = invariant_decomposition(g);
  const DiscreteSphericalMeasure mu1 = inverse_base_measure(n);
  if (check_quantitative_scc(mu1, g, decomp, cfg.delta, cfg.tau).verdict != Verdict::Strict) {
    throw Error(ErrorKind::ConditionViolated, "base measure fails the quantitative condition at (delta, tau)");
  }
  const SolveOptions opts = solver_options(cfg);
  const SolveReport s1 = solve_log_minkowski(mu1, g, opts);
  const StabilityConstants k = constants(n, cfg.delta, cfg.tau, decomp.irreducible(), cfg.c_const);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> xi(mu1.size());
  for (double& x : xi) x = unif(rng);

  SweepTable t = start_table(cfg, {"eps", "d_w", "d_inf", "bound", "ratio", "r0", "R0", "min_h1", "max_h1", "min_h2",
                                   "max_h2", "radii_pass", "residual1", "residual2"});
  run_rows(t, cfg, io::to_json(mu1), [&](double eps) {
    const DiscreteSphericalMeasure mu2 = perturb(mu1, g, xi, eps);
    if (check_quantitative_scc(mu2, g, decomp, cfg.delta, cfg.tau).verdict != Verdict::Strict) {
      throw Error(ErrorKind::ConditionViolated, "perturbed measure fails the quantitative condition");
    }
    const SolveReport s2 = solve_log_minkowski(mu2, g, opts);
    const double dw = wasserstein(mu1, mu2);
    const double dinf = hausdorff_value(s1.body, s2.body, cfg.hausdorff_tol);
    const double bound = k.gamma0 * std::pow(dw, 1.0 / (95.0 * n));
    const BodyMetrics m1 = radii_and_centroid(s1.body);
    const BodyMetrics m2 = radii_and_centroid(s2.body);
    const bool pass = k.r0 <= std::min(m1.inradius_o, m2.inradius_o) &&
                      std::max(m1.circumradius_o, m2.circumradius_o) <= k.R0;
    return std::vector<double>{eps,         dw,         dinf,          bound,          bound > 0 ? dinf / bound : kNaN,
                               k.r0,        k.R0,       m1.inradius_o, m1.circumradius_o, m2.inradius_o,
                               m2.circumradius_o, pass ? 1.0 : 0.0, s1.residual, s2.residual};
  });

  std::vector<double> dws, dinfs;
  bool radii = true;
  bool monotone = true;
  double prev_dw = kNaN, prev_dinf = kNaN;
  double zero_row = 0.0;
  for (std::size_t r = 0; r < t.params.size(); ++r) {
    if (t.status[r] != "ok") continue;
    const double dw = t.value(r, "d_w");
    const double di = t.value(r, "d_inf");
    radii = radii && t.value(r, "radii_pass") == 1.0;
    if (dw == 0.0) zero_row = std::max(zero_row, di);
    if (dw > 0.0) {
      if (std::isfinite(prev_dw) && dw < prev_dw && di > prev_dinf) monotone = false;
      prev_dw = dw;
      prev_dinf = di;
      dws.push_back(dw);
      dinfs.push_back(di);
    }
  }
  const double slope = loglog_slope(dws, dinfs);
  t.summary["loglog_slope"] = slope;
  t.summary["slope_floor"] = 1.0 / (95.0 * n);
  t.summary["slope_pass"] = slope >= 1.0 / (95.0 * n) ? 1.0 : 0.0;
  t.summary["monotone"] = monotone ? 1.0 : 0.0;
  t.summary["radii_all_pass"] = radii ? 1.0 : 0.0;
  t.summary["zero_row_d_inf"] = zero_row;
  return t;
}

SweepTable run_forward_continuity(const ExperimentConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  const HPolytope cube = unit_cube(n);
  SweepTable t = start_table(cfg, {"eps", "d_inf", "d_bl", "ratio"});
  run_rows(t, cfg, io::to_json(cube), [&](double eps) {
    HPolytope c = cube;
    if (cfg.variant == "chopped") {
      c = chopped_cube(n, eps);
    } else {
      std::vector<double> h = cube.supports();
      h[0] *= 1.0 + eps;
      h[1] *= 1.0 + eps;
      c = cube.with_supports(std::move(h));
    }
    const double dinf = hausdorff_value(cube, c, cfg.hausdorff_tol);
    const double dbl = bounded_lipschitz(cone_volume_measure(cube), cone_volume_measure(c));
    return std::vector<double>{eps, dinf, dbl, dinf > 0 ? dbl / std::sqrt(dinf) : kNaN};
  });

  // Fit on the coarse half, check the constant on the fine half.
  std::vector<std::size_t> ok;
  for (std::size_t r = 0; r < t.params.size(); ++r) {
    if (t.status[r] == "ok" && std::isfinite(t.value(r, "ratio"))) ok.push_back(r);
  }
  const std::size_t half = (ok.size() + 1) / 2;
  double gamma = 0.0, rmin = std::numeric_limits<double>::infinity(), rmax = 0.0, fine_max = 0.0;
  for (std::size_t i = 0; i < ok.size(); ++i) {
    const double r = t.value(ok[i], "ratio");
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    if (i < half) {
      gamma = std::max(gamma, r);
    } else {
      fine_max = std::max(fine_max, r);
    }
  }
  t.summary["gamma_fit"] = gamma;
  t.summary["fine_half_max_ratio"] = fine_max;
  t.summary["ratio_min"] = ok.empty() ? kNaN : rmin;
  t.summary["ratio_max"] = rmax;
  t.summary["bounded_pass"] = !ok.empty() && ok.size() == t.params.size() && fine_max <= gamma ? 1.0 : 0.0;
  return t;
}

namespace {

// Two unit-volume bodies with no facet normal orthogonal to e = e_n.
std::pair<HPolytope, HPolytope> phi_s_bases(int n) {
  if (n == 2) {
    std::vector<UnitVector> nk, nc;
    for (int k = 0; k < 4; ++k) {
      const double a = std::numbers::pi / 4 + k * std::numbers::pi / 2;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      nk.emplace_back(u);
    }
    for (int k = 0; k < 8; ++k) {
      const double a = std::numbers::pi / 8 + k * std::numbers::pi / 4;
      Vec u(2);
      u << std::cos(a), std::sin(a);
      nc.emplace_back(u);
    }
    return {unit_volume(HPolytope(2, nk, std::vector<double>(4, 1.0))),
            unit_volume(HPolytope(2, nc, std::vector<double>(8, 1.0)))};
  }
  std::vector<UnitVector> nk;
  for (int mask = 0; mask < 8; ++mask) {
    Vec s(3);
    for (int i = 0; i < 3; ++i) s[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    nk.emplace_back(s / std::sqrt(3.0));
  }
  const HPolytope k = unit_volume(HPolytope(3, nk, std::vector<double>(8, 1.0)));
  Mat rot = Mat::Identity(3, 3);
  const double c = std::cos(std::numbers::pi / 4);
  rot(0, 0) = c;
  rot(0, 1) = -c;
  rot(1, 0) = c;
  rot(1, 1) = c;
  return {k, k.linear_image(rot)};
}

}  // namespace

SweepTable run_phi_s_degeneration(const ExperimentConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  const auto [kb, cb] = phi_s_bases(n);
  const UnitVector e(axis(n, n - 1));
  const DiscreteSphericalMeasure mu0 = mu_zero(e);
  SweepTable t = start_table(cfg, {"s", "d_w_kc", "d_w_k_mu0", "d_w_c_mu0", "d_inf"});
  run_rows(t, cfg, io::json{{"K", io::to_json(kb)}, {"C", io::to_json(cb)}}, [&](double s) {
    const HPolytope ks = diagonal_transform(kb, e, s);
    const HPolytope cs = diagonal_transform(cb, e, s);
    const DiscreteSphericalMeasure vk = cone_volume_measure(ks);
    const DiscreteSphericalMeasure vc = cone_volume_measure(cs);
    const double r = std::max(radii_and_centroid(ks).circumradius_o, 1.0);
    return std::vector<double>{s, wasserstein(vk, vc), wasserstein(vk, mu0), wasserstein(vc, mu0),
                               hausdorff_value(ks, cs, cfg.hausdorff_tol * r)};
  });
  double s_star = kNaN;
  bool grows = true, shrinks = true;
  double prev_inf = -1.0, prev_mu = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < t.params.size(); ++r) {
    if (t.status[r] != "ok") {
      grows = shrinks = false;
      continue;
    }
    const double dk = t.value(r, "d_w_k_mu0");
    const double di = t.value(r, "d_inf");
    if (!std::isfinite(s_star) && dk < 0.05) s_star = t.params[r];
    if (di < prev_inf - cfg.hausdorff_tol * std::max(1.0, di)) grows = false;
    if (dk > prev_mu) shrinks = false;
    prev_inf = di;
    prev_mu = dk;
  }
  t.summary["s_star"] = s_star;
  t.summary["reached_0.05"] = std::isfinite(s_star) ? 1.0 : 0.0;
  t.summary["d_inf_nondecreasing"] = grows ? 1.0 : 0.0;
  t.summary["d_w_mu0_decreasing"] = shrinks ? 1.0 : 0.0;
  return t;
}

SweepTable run_chopped_cube_sharpness(const ExperimentConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  const HPolytope cube = unit_cube(n);
  const FacetComplex cube_fc = build_facet_complex(cube);
  const DiscreteSphericalMeasure vcube = cone_volume_measure(cube, cube_fc);
  SweepTable t = start_table(cfg, {"eps", "d_w", "gamma1", "lambda_star", "gamma2_ratio", "inside_cube"});
  run_rows(t, cfg, io::to_json(cube), [&](double eps) {
    const HPolytope c = chopped_cube(n, eps);
    const FacetComplex cfc = build_facet_complex(c);
    const double dw = wasserstein(vcube, cone_volume_measure(c, cfc));
    // Largest lambda with lambda * cube inside C.
    double lambda = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < c.size(); ++j) lambda = std::min(lambda, c.support(j) / support_eval(cube_fc, c.normal(j)));
    // C is rescaled to volume 1, so it pokes out of the cube along the axes;
    // containment is checked against the unscaled cut body.
    const double unscale = std::pow(1.0 - std::pow(2.0, n) * eps, 1.0 / n);
    std::vector<Vec> pts;
    for (const Vec& v : cfc.vertices) pts.push_back(v * unscale);
    const bool inside = contains_points(cube, pts);
    return std::vector<double>{eps, dw, dw / eps, lambda, (1.0 - lambda) / std::pow(eps, 1.0 / n), inside ? 1.0 : 0.0};
  });
  std::vector<double> eps, dws;
  double g1min = std::numeric_limits<double>::infinity(), g1max = 0.0;
  double g2 = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (std::size_t r = 0; r < t.params.size(); ++r) {
    if (t.status[r] != "ok") continue;
    eps.push_back(t.params[r]);
    dws.push_back(t.value(r, "d_w"));
    g1min = std::min(g1min, t.value(r, "gamma1"));
    g1max = std::max(g1max, t.value(r, "gamma1"));
    g2 = std::min(g2, t.value(r, "gamma2_ratio"));
    inside = inside && t.value(r, "inside_cube") == 1.0;
  }
  g2 *= 0.5;
  // Witness (1 - gamma2 eps^{1/n}) cube ⊄ C by a vertex outside C.
  bool witnessed = !eps.empty();
  for (std::size_t r = 0; r < t.params.size(); ++r) {
    if (t.status[r] != "ok") continue;
    const double e = t.params[r];
    const HPolytope c = chopped_cube(n, e);
    const double scale = 1.0 - g2 * std::pow(e, 1.0 / n);
    std::vector<Vec> pts;
    for (const Vec& v : build_facet_complex(cube.dilate(scale)).vertices) pts.push_back(v);
    witnessed = witnessed && !contains_points(c, pts);
  }
  t.summary["gamma1_min"] = g1min;
  t.summary["gamma1_max"] = g1max;
  t.summary["gamma1_spread"] = g1max / g1min;
  t.summary["gamma1_stable_x2"] = g1max / g1min <= 2.0 ? 1.0 : 0.0;
  t.summary["d_w_eps_exponent"] = loglog_slope(eps, dws);
  t.summary["gamma2"] = g2;
  t.summary["containment_witnessed"] = witnessed ? 1.0 : 0.0;
  t.summary["cut_inside_cube"] = inside ? 1.0 : 0.0;
  return t;
}

SweepTable run_qt_divergence(const ExperimentConfig& cfg) {
  validate(cfg);
  const int n = cfg.n;
  const int d = n - 1;
  const HPolytope m1 = unit_cube(d);
  const HPolytope c1 = unit_cube(1);
  Mat bl = Mat::Zero(n, d);
  for (int i = 0; i < d; ++i) bl(i, i) = 1.0;
  const Mat bp = axis(n, n - 1);
  const HPolytope q = direct_sum(m1, bl, c1, bp);
  const DiscreteSphericalMeasure vq = cone_volume_measure(q);
  SweepTable t = start_table(cfg, {"t", "volume", "d_inf", "d_inf_upper", "d_w", "max_atom_diff"});
  run_rows(t, cfg, io::to_json(q), [&](double tt) {
    const HPolytope qt = qt_construction(m1, bl, c1, bp, tt);
    const FacetComplex fc = build_facet_complex(qt);
    const DiscreteSphericalMeasure vt = cone_volume_measure(qt, fc);
    double diff = 0.0;
    for (const Atom& a : vq.atoms()) {
      const std::size_t j = vt.find(a.u);
      diff = std::max(diff, std::abs((j < vt.size() ? vt[j].w : 0.0) - a.w));
    }
    const double tol = cfg.hausdorff_tol * std::max(1.0, tt);
    const HausdorffResult h = hausdorff_distance(q, qt, tol);
    return std::vector<double>{tt, fc.volume, h.value, h.upper_bound, wasserstein(vq, vt), diff};
  });
  bool vol = true, dw0 = true, dinf = true;
  for (std::size_t r = 0; r < t.params.size(); ++r) {
    if (t.status[r] != "ok") {
      vol = dw0 = dinf = false;
      continue;
    }
    const double tt = t.params[r];
    vol = vol && std::abs(t.value(r, "volume") - 1.0) <= 1e-9;
    dw0 = dw0 && t.value(r, "d_w") <= 1e-12;
    dinf = dinf && t.value(r, "d_inf_upper") >= tt && t.value(r, "d_inf") >= tt - cfg.hausdorff_tol * std::max(1.0, tt);
  }
  t.summary["volume_one"] = vol ? 1.0 : 0.0;
  t.summary["d_w_zero"] = dw0 ? 1.0 : 0.0;
  t.summary["d_inf_ge_t"] = dinf ? 1.0 : 0.0;
  return t;
}

SweepTable run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::InverseStability:
      return run_inverse_stability(cfg);
    case ExperimentKind::ForwardContinuity:
      return run_forward_continuity(cfg);
    case ExperimentKind::PhiSDegeneration:
      return run_phi_s_degeneration(cfg);
    case ExperimentKind::ChoppedCubeSharpness:
      return run_chopped_cube_sharpness(cfg);
    case ExperimentKind::QtDivergence:
      return run_qt_divergence(cfg);
  }
  throw Error(ErrorKind::ParameterOutOfRange, "unknown experiment");
}

}  // namespace logmink
