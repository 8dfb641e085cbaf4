#include "logmink/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace logmink {

double log_minkowski_objective(const std::vector<double>& alpha, const std::vector<double>& h, double vol, int n) {
  double s = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    s += alpha[i] * std::log(h[i]);
    mass += alpha[i];
  }
  return s - mass * std::log(vol) / n;
}

namespace {

constexpr double kDeadArea = 1e-12;
constexpr double kMinDamping = 1.0 / 64.0;
constexpr double kLogClamp = 4.0;

// Solver state in orbit coordinates: y[o] = log h on orbit o.
struct Eval {
  Vec y;            // normalized so that V = 1
  double phi = 0.0;
  double residual = 0.0;
  double gnorm = 0.0;        // sum over orbits of g_o^2 / alpha_o
  std::vector<double> v;     // cone-volume weights at V = 1, per atom
  std::vector<char> dead;    // facet area below kDeadArea at V = 1
};

class Problem {
 public:
  Problem(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g) : n_(mu.dim()) {
    std::vector<Vec> dirs;
    for (const Atom& a : mu.atoms()) {
      dirs.push_back(a.u);
      normals_.emplace_back(a.u);
      alpha_.push_back(a.w);
    }
    label_ = orbit_labels(direction_permutations(dirs, g));
    orbits_ = 0;
    for (std::size_t l : label_) orbits_ = std::max(orbits_, l + 1);
    orbit_size_.assign(orbits_, 0);
    orbit_alpha_.assign(orbits_, 0.0);
    for (std::size_t i = 0; i < label_.size(); ++i) {
      ++orbit_size_[label_[i]];
      orbit_alpha_[label_[i]] += alpha_[i];
    }
  }

  std::size_t orbits() const { return orbits_; }
  std::size_t atoms() const { return alpha_.size(); }
  const std::vector<double>& alpha() const { return alpha_; }
  std::size_t label(std::size_t i) const { return label_[i]; }
  std::size_t orbit_size(std::size_t o) const { return orbit_size_[o]; }

  std::vector<double> supports(const Vec& y) const {
    std::vector<double> h(alpha_.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::exp(y[label_[i]]);
    return h;
  }

  HPolytope body(const Vec& y) const { return HPolytope(n_, normals_, supports(y)); }

  Eval evaluate(const Vec& y_in) const {
    const HPolytope p = body(y_in);
    const FacetComplex fc = build_facet_complex(p);
    const double vol = fc.volume;
    const double shift = std::log(vol) / n_;
    const double area_scale = std::pow(vol, -(n_ - 1.0) / n_);
    Eval e;
    e.y = y_in.array() - shift;
    e.v.resize(alpha_.size());
    e.dead.resize(alpha_.size());
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
      e.v[i] = p.support(i) * fc.facet_areas[i] / (n_ * vol);
      e.dead[i] = fc.facet_areas[i] * area_scale < kDeadArea ? 1 : 0;
      e.residual = std::max(e.residual, std::abs(e.v[i] - alpha_[i]));
    }
    e.phi = log_minkowski_objective(alpha_, p.supports(), vol, n_);
    const Vec gr = gradient(e);
    for (std::size_t o = 0; o < orbits_; ++o) e.gnorm += gr[o] * gr[o] / orbit_alpha_[o];
    return e;
  }

  // Gradient of phi in orbit coordinates: sum over the orbit of alpha - v.
  Vec gradient(const Eval& e) const {
    Vec gr = Vec::Zero(static_cast<Eigen::Index>(orbits_));
    for (std::size_t i = 0; i < alpha_.size(); ++i) gr[label_[i]] += alpha_[i] - e.v[i];
    return gr;
  }

 private:
  int n_;
  std::vector<UnitVector> normals_;
  std::vector<double> alpha_;
  std::vector<std::size_t> label_;
  std::size_t orbits_ = 0;
  std::vector<std::size_t> orbit_size_;
  std::vector<double> orbit_alpha_;
};

bool kills_facet(const Eval& from, const Eval& to, const std::vector<double>& alpha, double tol) {
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!from.dead[i] && to.dead[i] && alpha[i] > tol) return true;
  }
  return false;
}

// Strict decrease, or a change inside rounding noise that still lowers the
// weighted gradient norm. Without the second clause an overshooting step is
// accepted forever once phi differences drop below the noise floor. The
// weighting matches the multiplicative preconditioner, under which small
// enough steps contract this norm.
bool descends(const Eval& from, const Eval& to) {
  const double noise = 1e-14 * (1.0 + std::abs(from.phi));
  if (to.phi < from.phi - noise) return true;
  return to.phi <= from.phi + noise && to.gnorm < from.gnorm;
}

// Damped Newton step on the orbit-reduced objective with a finite-difference
// Hessian. phi is invariant under y -> y + c, so the Hessian is singular
// along the constant vector; the pseudo-inverse ignores that direction.
std::optional<Eval> newton_step(const Problem& pr, const Eval& cur, double tol) {
  const auto k = static_cast<Eigen::Index>(pr.orbits());
  const Vec g0 = pr.gradient(cur);
  const double fd = 1e-6;
  Mat hess(k, k);
  for (Eigen::Index o = 0; o < k; ++o) {
    Vec y = cur.y;
    y[o] += fd;
    hess.col(o) = (pr.gradient(pr.evaluate(y)) - g0) / fd;
  }
  hess = 0.5 * (hess + hess.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> eig(hess);
  const Vec& lam = eig.eigenvalues();
  const double top = lam.cwiseAbs().maxCoeff();
  if (!(top > 0.0) || lam.minCoeff() < -1e-6 * top) return std::nullopt;
  Vec inv = Vec::Zero(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (lam[i] > 1e-9 * top) inv[i] = 1.0 / lam[i];
  }
  const Vec step = -(eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose() * g0);
  if (!step.allFinite()) return std::nullopt;
  double t = 1.0;
  for (int tries = 0; tries < 4; ++tries, t *= 0.5) {
    Eval cand = pr.evaluate(cur.y + t * step);
    if (descends(cur, cand) && !kills_facet(cur, cand, pr.alpha(), tol) && cand.residual < cur.residual) {
      return cand;
    }
  }
  return std::nullopt;
}

Vec multiplicative_direction(const Problem& pr, const Eval& cur) {
  Vec dir = Vec::Zero(static_cast<Eigen::Index>(pr.orbits()));
  for (std::size_t i = 0; i < pr.atoms(); ++i) {
    const double a = pr.alpha()[i];
    const double r = std::clamp(std::log(std::max(cur.v[i], 0.0) / a), -kLogClamp, kLogClamp);
    dir[pr.label(i)] += r;
  }
  for (Eigen::Index o = 0; o < dir.size(); ++o) dir[o] /= static_cast<double>(pr.orbit_size(o));
  return dir;
}

Vec initial_point(const Problem& pr, const SolveOptions& opts) {
  Vec y = Vec::Zero(static_cast<Eigen::Index>(pr.orbits()));
  if (opts.init == InitKind::InballScaled) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    for (Eigen::Index o = 0; o < y.size(); ++o) y[o] = std::log(u(rng));
  }
  return y;
}

RadiiCheck radii_check(const HPolytope& body, const FacetComplex& fc, const StabilityConstants& k) {
  const BodyMetrics m = radii_and_centroid(body, fc);
  RadiiCheck r;
  r.constants = k;
  r.min_h = m.inradius_o;
  r.max_h = m.circumradius_o;
  r.pass = k.r0 <= r.min_h && r.max_h <= k.R0;
  return r;
}

std::string describe(const SubspaceRecord& r) {
  std::ostringstream os;
  os << "invariant subspace of dim " << r.dim << " carries mass " << r.mass << " > threshold " << r.threshold;
  if (r.slack >= -1e-9 && !r.split_support) os << " (equality without support in L ∪ L^perp)";
  return os.str();
}

void validate(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g, const SolveOptions& opts) {
  if (!(opts.tol_residual > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "tol_residual must be positive");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw Error(ErrorKind::ParameterOutOfRange, "damping must lie in (0, 1]");
  if (opts.max_iter <= 0) throw Error(ErrorKind::ParameterOutOfRange, "max_iter must be positive");
  if (mu.dim() != g.dim) throw Error(ErrorKind::InvalidInput, "measure and group dimensions differ");
  if (std::abs(mu.mass() - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidInput, "solver expects a probability measure (mass " + std::to_string(mu.mass()) +
                                             "); use solve_unnormalized");
  }
  std::vector<Vec> dirs;
  for (const Atom& a : mu.atoms()) dirs.push_back(a.u);
  if (!positively_spans(mu.dim(), dirs)) throw Error(ErrorKind::UnboundedBody, "atoms do not positively span R^n");
}

}  // namespace

SolveReport solve_log_minkowski(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g, const SolveOptions& opts) {
  validate(mu, g, opts);
  const InvariantDecomposition decomp = invariant_decomposition(g);
  const SCCReport scc = check_theorem_1_1(mu, g, decomp);
  if (scc.verdict == Verdict::Violated) {
    const SubspaceRecord& w = scc.records[*scc.witness];
    throw SolveFailure(ErrorKind::ConditionViolated, "no solution exists: " + describe(w), std::nullopt, w,
                       std::numeric_limits<double>::quiet_NaN(), 0);
  }
  std::optional<SubspaceRecord> degenerate;
  if (scc.verdict == Verdict::Equality) degenerate = scc.records[*scc.witness];

  const Problem pr(mu, g);
  const double tol = opts.tol_residual;
  Eval cur = pr.evaluate(initial_point(pr, opts));
  std::vector<double> trace{cur.phi};
  double d = opts.damping;
  int it = 0;
  double plateau_best = cur.residual;
  int plateau_since = 0;

  auto fail = [&](ErrorKind kind, const std::string& why) {
    throw SolveFailure(kind, why + " (residual " + std::to_string(cur.residual) + " after " + std::to_string(it) +
                                 " iterations)",
                       pr.body(cur.y), degenerate, cur.residual, it);
  };

  while (cur.residual > tol) {
    if (it >= opts.max_iter) fail(ErrorKind::MaxIterExceeded, "iteration limit reached");
    ++it;
    std::optional<Eval> next;
    if (opts.newton && pr.orbits() > 1) next = newton_step(pr, cur, tol);
    if (!next) {
      const Vec dir = multiplicative_direction(pr, cur);
      while (!next) {
        Eval cand = pr.evaluate(cur.y + d * dir);
        if (descends(cur, cand) && !kills_facet(cur, cand, pr.alpha(), tol)) {
          next = std::move(cand);
          d = std::min(opts.damping, 2.0 * d);
        } else {
          d *= 0.5;
          if (d < kMinDamping) fail(ErrorKind::Stalled, "no admissible step down to damping 1/64");
        }
      }
    }
    cur = std::move(*next);
    trace.push_back(cur.phi);
    if (cur.residual < 0.5 * plateau_best) {
      plateau_best = cur.residual;
      plateau_since = it;
    } else if (it - plateau_since > 5000) {
      fail(ErrorKind::Stalled, "residual plateau");
    }
  }

  SolveReport rep(pr.body(cur.y));
  const FacetComplex fc = build_facet_complex(rep.body);
  rep.residual = 0.0;
  for (std::size_t i = 0; i < rep.body.size(); ++i) {
    rep.residual = std::max(rep.residual, std::abs(rep.body.support(i) * fc.facet_areas[i] / mu.dim() - mu[i].w));
  }
  rep.iterations = it;
  rep.objective_trace = std::move(trace);
  rep.invariance_defect = body_invariance_defect(rep.body, fc, g);
  rep.dropped_facets = fc.redundant;
  rep.degenerate_subspace = degenerate;
  if (decomp.irreducible()) {
    rep.radii_check = radii_check(rep.body, fc, constants(mu.dim(), 0.0, 0.0, true, opts.c_const));
  } else if (opts.delta && opts.tau) {
    rep.radii_check = radii_check(rep.body, fc, constants(mu.dim(), *opts.delta, *opts.tau, false, opts.c_const));
  }
  return rep;
}

SolveReport solve_unnormalized(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g, const SolveOptions& opts) {
  const double m = mu.mass();
  SolveOptions scaled = opts;
  scaled.tol_residual = opts.tol_residual / m;
  SolveReport rep = solve_log_minkowski(mu.normalized(), g, scaled);
  rep.body = rep.body.dilate(std::pow(m, 1.0 / mu.dim()));
  const FacetComplex fc = build_facet_complex(rep.body);
  rep.residual = 0.0;
  for (std::size_t i = 0; i < rep.body.size(); ++i) {
    rep.residual = std::max(rep.residual, std::abs(rep.body.support(i) * fc.facet_areas[i] / mu.dim() - mu[i].w));
  }
  rep.invariance_defect = body_invariance_defect(rep.body, fc, g);
  return rep;
}

VerificationRecord verify_solution(const SolveReport& report, const DiscreteSphericalMeasure& mu,
                                   const ReflectionGroup& g, double delta, double tau, double tol, double c_const) {
  const HPolytope& body = report.body;
  const FacetComplex fc = build_facet_complex(body);
  VerificationRecord rec;
  rec.volume = fc.volume;
  if (std::abs(rec.volume - 1.0) > 1e-9) {
    throw Error(ErrorKind::VerificationFailed, "volume clause: V(K) = " + std::to_string(rec.volume) + " != 1");
  }
  const DiscreteSphericalMeasure cv = cone_volume_measure(body, fc);
  for (const Atom& a : mu.atoms()) {
    const std::size_t j = cv.find(a.u);
    rec.residual = std::max(rec.residual, std::abs((j < cv.size() ? cv[j].w : 0.0) - a.w));
  }
  for (const Atom& a : cv.atoms()) {
    if (mu.find(a.u) == mu.size()) rec.residual = std::max(rec.residual, a.w);
  }
  if (rec.residual > tol) {
    throw Error(ErrorKind::VerificationFailed, "cone-volume clause: max atom mismatch " + std::to_string(rec.residual));
  }
  const bool irreducible = invariant_decomposition(g).irreducible();
  rec.radii = radii_check(body, fc, constants(body.dim(), delta, tau, irreducible, c_const));
  rec.circumradius = rec.radii.max_h;
  if (!rec.radii.pass) {
    std::ostringstream os;
    os << "radii clause: need " << rec.radii.constants.r0 << " <= " << rec.radii.min_h << " <= " << rec.radii.max_h
       << " <= " << rec.radii.constants.R0;
    throw Error(ErrorKind::VerificationFailed, os.str());
  }
  if (irreducible) {
    rec.lemma_bounds = rec.radii.min_h > 1.0 / std::exp(1.0) && rec.circumradius < body.dim();
    if (!rec.lemma_bounds) throw Error(ErrorKind::VerificationFailed, "irreducible radii clause: need 1/e < r and R < n");
  }
  return rec;
}

}  // namespace logmink
