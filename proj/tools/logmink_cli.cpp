// logmink: command-line front end for the log-Minkowski toolkit.
//
//   logmink solve --measure mu.json --group g.json [--out report.json]
//   logmink conevol --body k.json
//   logmink distance --metric wasserstein a.json b.json
//   logmink check-scc --measure mu.json --group g.json [--quantitative]
//   logmink construct chopped-cube --n 2 --eps 0.01
//   logmink experiment inverse --out sweep.csv
//   logmink constants --n 2 --delta 0.1 --tau 0.25
//
// Exit codes: 0 ok, 1 other error, 2 parse, 3 ConditionViolated, 4 Stalled,
// 5 MaxIterExceeded, 6 tolerance/budget.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "logmink/constructions.hpp"
#include "logmink/coxeter.hpp"
#include "logmink/experiments.hpp"
#include "logmink/geometry.hpp"
#include "logmink/io.hpp"
#include "logmink/measures.hpp"
#include "logmink/solver.hpp"

using namespace logmink;
using io::json;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError:
      return 2;
    case ErrorKind::ConditionViolated:
      return 3;
    case ErrorKind::Stalled:
      return 4;
    case ErrorKind::MaxIterExceeded:
      return 5;
    case ErrorKind::ToleranceUnreachable:
    case ErrorKind::OrderCapExceeded:
      return 6;
    default:
      return 1;
  }
}

std::size_t order_cap() {
  const char* env = std::getenv("LOGMINK_MAX_GROUP_ORDER");
  if (env == nullptr || *env == '\0') return kDefaultOrderCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw Error(ErrorKind::ParseError, "LOGMINK_MAX_GROUP_ORDER must be a positive integer");
  return static_cast<std::size_t>(v);
}

struct Common {
  std::string out;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  double delta = 0.1;
  double tau = 0.25;
  double c_const = 1.0;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    io::write_text_file(c.out, text.back() == '\n' ? text : text + "\n");
  }
}

void emit(const Common& c, const json& j) { emit(c, j.dump(2)); }

std::string twelve(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

DiscreteSphericalMeasure measure_or_body(const json& j) {
  if (j.contains("atoms")) return io::measure_from_json(j);
  return cone_volume_measure(io::polytope_from_json(j));
}

void add_common(CLI::App* app, Common& c, bool quantitative = false) {
  app->add_option("--out", c.out, "write output to this file instead of stdout");
  app->add_option("--tol", c.tol, "tolerance");
  app->add_option("--seed", c.seed, "random seed");
  if (quantitative) {
    app->add_option("--delta", c.delta, "tube radius delta in (0, 1/2)");
    app->add_option("--tau", c.tau, "slack tau in (0, 1/2)");
    app->add_option("--c-const", c.c_const, "absolute constant c in gamma0");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete log-Minkowski solver and stability experiments"};
  app.require_subcommand(1);
  Common c;

  // solve
  auto* solve = app.add_subcommand("solve", "solve V_K = mu for a group-invariant probability measure");
  std::string measure_file, group_file, init = "unit";
  int max_iter = 50'000;
  double damping = 0.5;
  bool no_newton = false;
  solve->add_option("--measure", measure_file, "measure JSON")->required();
  solve->add_option("--group", group_file, "group JSON")->required();
  solve->add_option("--init", init, "initialization")->check(CLI::IsMember({"unit", "inball"}));
  solve->add_option("--max-iter", max_iter, "iteration limit");
  solve->add_option("--damping", damping, "multiplicative step damping in (0, 1]");
  solve->add_flag("--no-newton", no_newton, "use only the damped multiplicative update");
  add_common(solve, c, true);

  // conevol
  auto* conevol = app.add_subcommand("conevol", "cone-volume (or surface-area) measure of a body");
  std::string body_file;
  bool surface = false;
  conevol->add_option("--body", body_file, "polytope JSON")->required();
  conevol->add_flag("--surface", surface, "emit the surface-area measure instead");
  add_common(conevol, c);

  // distance
  auto* distance = app.add_subcommand("distance", "distance between two measures or two bodies");
  std::string metric = "wasserstein", file_a, file_b;
  distance->add_option("--metric", metric, "wasserstein | bl | hausdorff")
      ->check(CLI::IsMember({"wasserstein", "bl", "hausdorff"}));
  distance->add_option("a", file_a, "first measure or body JSON")->required();
  distance->add_option("b", file_b, "second measure or body JSON")->required();
  add_common(distance, c);

  // check-scc
  auto* scc = app.add_subcommand("check-scc", "subspace concentration check");
  bool quantitative = false;
  scc->add_option("--measure", measure_file, "measure JSON")->required();
  scc->add_option("--group", group_file, "group JSON")->required();
  scc->add_flag("--quantitative", quantitative, "tube condition at (delta, tau) instead of the exact condition");
  add_common(scc, c, true);

  // construct
  auto* construct = app.add_subcommand("construct", "build a named body or measure");
  construct->require_subcommand(1);
  int n = 2, axis_index = -1;
  double eps = 0.01, s = 2.0, t = 1.0;
  auto* cc = construct->add_subcommand("chopped-cube", "unit cube with corners cut by simplices of volume eps");
  cc->add_option("--n", n, "dimension");
  cc->add_option("--eps", eps, "corner simplex volume");
  add_common(cc, c);
  auto* ps = construct->add_subcommand("phi-s", "apply the volume-preserving map Phi_s");
  ps->add_option("--body", body_file, "polytope JSON")->required();
  ps->add_option("--axis", axis_index, "index of e (default: last coordinate)");
  ps->add_option("--s", s, "scale s > 0");
  add_common(ps, c);
  auto* qt = construct->add_subcommand("qt", "rescaled direct sum Q_t of a cube in R^{n-1} and a segment");
  qt->add_option("--n", n, "dimension");
  qt->add_option("--t", t, "t >= 0");
  add_common(qt, c);
  auto* mu0 = construct->add_subcommand("mu0", "1/2 (delta_e + delta_{-e})");
  mu0->add_option("--n", n, "dimension");
  mu0->add_option("--axis", axis_index, "index of e (default: last coordinate)");
  add_common(mu0, c);

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a parameter sweep and emit CSV");
  std::string which, grid, variant = "chopped";
  double hausdorff_tol = 1e-10;
  exp->add_option("which", which, "inverse | forward | phi-s | qt | chopped")
      ->required()
      ->check(CLI::IsMember({"inverse", "forward", "phi-s", "qt", "chopped"}));
  exp->add_option("--n", n, "dimension (2 or 3)");
  exp->add_option("--grid", grid, "comma-separated sweep values");
  exp->add_option("--variant", variant, "forward sweep: chopped | support");
  exp->add_option("--hausdorff-tol", hausdorff_tol, "certified tolerance for d_inf");
  std::string exp_format = "csv";
  exp->add_option("--format", exp_format, "csv | json (default csv)")->check(CLI::IsMember({"csv", "json"}));
  add_common(exp, c, true);

  // constants
  auto* cons = app.add_subcommand("constants", "radii and Hölder constants, and eta");
  bool irreducible = false;
  cons->add_option("--n", n, "dimension");
  cons->add_flag("--irreducible", irreducible, "irreducible group branch");
  add_common(cons, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*solve) {
      const DiscreteSphericalMeasure mu = io::measure_from_json(io::read_json_file(measure_file));
      const ReflectionGroup g = io::group_from_json(io::read_json_file(group_file), order_cap());
      SolveOptions o;
      o.tol_residual = c.tol;
      o.seed = c.seed;
      o.max_iter = max_iter;
      o.damping = damping;
      o.newton = !no_newton;
      o.init = init == "inball" ? InitKind::InballScaled : InitKind::UnitSupports;
      o.delta = c.delta;
      o.tau = c.tau;
      o.c_const = c.c_const;
      try {
        const SolveReport r = solve_log_minkowski(mu, g, o);
        json j = io::to_json(r);
        try {
          j["verification"] = io::to_json(verify_solution(r, mu, g, c.delta, c.tau, std::max(c.tol, 1e-12), c.c_const));
        } catch (const Error& e) {
          j["verification"] = {{"error", e.what()}};
        }
        emit(c, j);
      } catch (const SolveFailure& f) {
        json j = {{"error", std::string(to_string(f.kind()))}, {"message", f.what()}, {"iterations", f.iterations()}};
        if (f.partial_body()) j["partial_body"] = io::to_json(*f.partial_body());
        if (f.witness()) {
          json b = json::array();
          for (Eigen::Index col = 0; col < f.witness()->basis.cols(); ++col) {
            json v = json::array();
            for (Eigen::Index row = 0; row < f.witness()->basis.rows(); ++row) v.push_back(f.witness()->basis(row, col));
            b.push_back(v);
          }
          j["witness"] = {{"dim", f.witness()->dim},
                          {"basis", b},
                          {"mass", f.witness()->mass},
                          {"threshold", f.witness()->threshold}};
        }
        emit(c, j);
        std::cerr << f.what() << '\n';
        return exit_code(f.kind());
      }
    } else if (*conevol) {
      const HPolytope p = io::polytope_from_json(io::read_json_file(body_file));
      emit(c, io::to_json(surface ? surface_area_measure(p) : cone_volume_measure(p)));
    } else if (*distance) {
      const json ja = io::read_json_file(file_a);
      const json jb = io::read_json_file(file_b);
      double v = 0.0;
      if (metric == "hausdorff") {
        v = hausdorff_distance(io::polytope_from_json(ja), io::polytope_from_json(jb), c.tol).value;
      } else if (metric == "wasserstein") {
        v = wasserstein(measure_or_body(ja), measure_or_body(jb));
      } else {
        v = bounded_lipschitz(measure_or_body(ja), measure_or_body(jb));
      }
      std::cout << twelve(v) << '\n';
      if (!c.out.empty()) emit(c, json{{"metric", metric}, {"a", file_a}, {"b", file_b}, {"value", v}});
    } else if (*scc) {
      const DiscreteSphericalMeasure mu = io::measure_from_json(io::read_json_file(measure_file));
      const ReflectionGroup g = io::group_from_json(io::read_json_file(group_file), order_cap());
      const SCCReport r = quantitative ? check_quantitative_scc(mu, g, c.delta, c.tau) : check_theorem_1_1(mu, g);
      emit(c, io::to_json(r));
    } else if (*construct) {
      if (*cc) {
        emit(c, io::to_json(chopped_cube(n, eps)));
      } else if (*ps) {
        const HPolytope p = io::polytope_from_json(io::read_json_file(body_file));
        const int k = axis_index < 0 ? p.dim() - 1 : axis_index;
        if (k >= p.dim()) throw Error(ErrorKind::ParameterOutOfRange, "axis index out of range");
        Vec e = Vec::Zero(p.dim());
        e[k] = 1.0;
        emit(c, io::to_json(diagonal_transform(p, UnitVector(e), s)));
      } else if (*qt) {
        if (n < 2) throw Error(ErrorKind::ParameterOutOfRange, "n must be at least 2");
        auto cube = [](int d) {
          std::vector<UnitVector> normals;
          for (int i = 0; i < d; ++i) {
            Vec e = Vec::Zero(d);
            e[i] = 1.0;
            normals.emplace_back(e);
            normals.emplace_back(-e);
          }
          return HPolytope(d, std::move(normals), std::vector<double>(2 * static_cast<std::size_t>(d), 0.5));
        };
        const Mat id = Mat::Identity(n, n);
        emit(c, io::to_json(qt_construction(cube(n - 1), id.leftCols(n - 1), cube(1), id.rightCols(1), t)));
      } else if (*mu0) {
        const int k = axis_index < 0 ? n - 1 : axis_index;
        if (n < 1 || k >= n) throw Error(ErrorKind::ParameterOutOfRange, "axis index out of range");
        Vec e = Vec::Zero(n);
        e[k] = 1.0;
        emit(c, io::to_json(mu_zero(UnitVector(e))));
      }
    } else if (*exp) {
      ExperimentConfig cfg;
      cfg.kind = experiment_from_string(which);
      cfg.n = n;
      cfg.delta = c.delta;
      cfg.tau = c.tau;
      cfg.seed = c.seed;
      cfg.c_const = c.c_const;
      cfg.hausdorff_tol = hausdorff_tol;
      cfg.variant = variant;
      if (exp->count("--tol") > 0) cfg.solver_tol = c.tol;
      if (!grid.empty()) {
        std::stringstream ss(grid);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            cfg.grid.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "--grid: '" + item + "' is not a number");
          }
        }
      }
      const SweepTable tab = run_experiment(cfg);
      if (exp_format == "csv") {
        emit(c, tab.to_csv());
      } else {
        json rows = json::array();
        for (std::size_t r = 0; r < tab.params.size(); ++r) {
          json row = {{"param", tab.params[r]}, {"status", tab.status[r]}, {"input_hash", tab.input_hash[r]}};
          for (std::size_t k = 0; k < tab.columns.size(); ++k) {
            const double v = tab.values[r][k];
            row[tab.columns[k]] = std::isfinite(v) ? json(v) : json(nullptr);
          }
          rows.push_back(row);
        }
        json summary = json::object();
        for (const auto& [k, v] : tab.summary) summary[k] = std::isfinite(v) ? json(v) : json(nullptr);
        emit(c, json{{"schema", kSweepSchemaVersion},
                     {"experiment", std::string(to_string(tab.kind))},
                     {"summary", summary},
                     {"rows", rows}});
      }
    } else if (*cons) {
      json j = io::to_json(constants(n, c.delta, c.tau, irreducible, c.c_const));
      if (!irreducible) j["eta"] = eta_constant(n, c.delta, c.tau);
      emit(c, j);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
