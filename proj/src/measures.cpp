#include "logmink/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "logmink/lp.hpp"
#include "logmink/transport.hpp"

namespace logmink {

DiscreteSphericalMeasure::DiscreteSphericalMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidInput, "measure dimension must be positive");
  for (Atom& a : atoms) {
    if (a.u.size() != dim) throw Error(ErrorKind::InvalidInput, "atom dimension mismatch");
    if (!std::isfinite(a.w) || a.w < 0.0) throw Error(ErrorKind::InvalidInput, "atom weight must be finite and >= 0");
    const double len = a.u.norm();
    if (!(std::abs(len - 1.0) <= 1e-9)) {
      throw Error(ErrorKind::InvalidInput, "atom direction is not a unit vector (norm " + std::to_string(len) + ")");
    }
    if (a.w == 0.0) continue;
    a.u /= len;
    const std::size_t j = find(a.u);
    if (j < atoms_.size()) {
      atoms_[j].w += a.w;
    } else {
      atoms_.push_back(std::move(a));
    }
  }
  for (const Atom& a : atoms_) mass_ += a.w;
  if (atoms_.empty()) throw Error(ErrorKind::InvalidInput, "measure has no atoms of positive weight");
}

DiscreteSphericalMeasure DiscreteSphericalMeasure::scaled(double lambda) const {
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) a.w *= lambda;
  return DiscreteSphericalMeasure(dim_, std::move(out));
}

std::size_t DiscreteSphericalMeasure::find(const Vec& u, double tol) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if ((atoms_[i].u - u).norm() <= tol) return i;
  }
  return atoms_.size();
}

DiscreteSphericalMeasure cone_volume_measure(const HPolytope& p, const FacetComplex& fc) {
  std::vector<Atom> atoms;
  for (const Facet& f : fc.facets) {
    const std::size_t i = f.normal_index;
    atoms.push_back({p.normal(i), p.support(i) * fc.facet_areas[i] / p.dim()});
  }
  return DiscreteSphericalMeasure(p.dim(), std::move(atoms));
}

DiscreteSphericalMeasure cone_volume_measure(const HPolytope& p) {
  return cone_volume_measure(p, build_facet_complex(p));
}

DiscreteSphericalMeasure surface_area_measure(const HPolytope& p, const FacetComplex& fc) {
  std::vector<Atom> atoms;
  for (const Facet& f : fc.facets) atoms.push_back({p.normal(f.normal_index), fc.facet_areas[f.normal_index]});
  return DiscreteSphericalMeasure(p.dim(), std::move(atoms));
}

DiscreteSphericalMeasure surface_area_measure(const HPolytope& p) {
  return surface_area_measure(p, build_facet_complex(p));
}

double distance_to_subsphere(const Vec& u, const Mat& basis) {
  // ‖u - Pu/‖Pu‖‖ rather than sqrt(2 - 2‖Pu‖): the latter loses half the
  // digits near the subsphere, which matters for the radius-0 membership test.
  const Vec pu = basis * (basis.transpose() * u);
  const double len = pu.norm();
  if (len <= 1e-300) return std::sqrt(2.0);
  return (u - pu / len).norm();
}

double tube_mass(const DiscreteSphericalMeasure& mu, const Mat& basis, double rho) {
  if (basis.rows() != mu.dim()) throw Error(ErrorKind::InvalidInput, "subspace basis has wrong ambient dimension");
  if (!(rho >= 0.0 && rho <= 2.0)) throw Error(ErrorKind::ParameterOutOfRange, "tube radius must lie in [0, 2]");
  double m = 0.0;
  for (const Atom& a : mu.atoms()) {
    if (distance_to_subsphere(a.u, basis) <= rho) m += a.w;
  }
  return m;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Strict:
      return "strict";
    case Verdict::Equality:
      return "equality";
    case Verdict::Violated:
      return "violated";
  }
  return "unknown";
}

namespace {

void require_invariant(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g) {
  if (mu.dim() != g.dim) throw Error(ErrorKind::InvalidInput, "measure and group dimensions differ");
  const double defect = measure_invariance_defect(mu, g);
  if (!(defect <= 1e-10 * std::max(1.0, mu.mass()))) {
    throw Error(ErrorKind::MeasureNotInvariant,
                "measure is not invariant under the group (weight defect " + std::to_string(defect) + ")");
  }
}

SubspaceRecord make_record(const InvariantSubspace& s) {
  SubspaceRecord r;
  r.basis = s.basis;
  r.dim = s.dim;
  r.components = s.components;
  return r;
}

}  // namespace

SCCReport check_theorem_1_1(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g, double tol) {
  return check_theorem_1_1(mu, g, invariant_decomposition(g), tol);
}

SCCReport check_theorem_1_1(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g,
                            const InvariantDecomposition& d, double tol) {
  require_invariant(mu, g);
  const int n = mu.dim();
  SCCReport rep;
  rep.total_mass = mu.mass();
  const auto subspaces = enumerate_invariant_subspaces(d);
  rep.irrelevant = subspaces.empty();
  const double eq_tol = tol * std::max(1.0, rep.total_mass);

  for (const InvariantSubspace& s : subspaces) {
    SubspaceRecord r = make_record(s);
    r.mass = tube_mass(mu, s.basis, tol);
    r.threshold = static_cast<double>(s.dim) / n * rep.total_mass;
    r.slack = r.threshold - r.mass;
    const Mat perp = Eigen::FullPivHouseholderQR<Mat>(s.basis).matrixQ().rightCols(n - s.dim);
    for (const Atom& a : mu.atoms()) {
      if (distance_to_subsphere(a.u, s.basis) > tol && distance_to_subsphere(a.u, perp) > tol) {
        r.split_support = false;
        break;
      }
    }
    rep.records.push_back(std::move(r));
  }

  // Worst record decides: any overshoot, or an equality without the direct
  // sum splitting of the support, is a violation.
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const SubspaceRecord& r = rep.records[i];
    Verdict v = Verdict::Strict;
    if (r.slack < -eq_tol) {
      v = Verdict::Violated;
    } else if (r.slack <= eq_tol) {
      v = r.split_support ? Verdict::Equality : Verdict::Violated;
    }
    if (static_cast<int>(v) > static_cast<int>(rep.verdict)) {
      rep.verdict = v;
      rep.witness = i;
    }
  }
  return rep;
}

SCCReport check_quantitative_scc(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g, double delta,
                                 double tau) {
  return check_quantitative_scc(mu, g, invariant_decomposition(g), delta, tau);
}

SCCReport check_quantitative_scc(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g,
                                 const InvariantDecomposition& d, double delta, double tau) {
  if (!(delta > 0.0 && delta < 0.5)) throw Error(ErrorKind::ParameterOutOfRange, "delta must lie in (0, 1/2)");
  if (!(tau > 0.0 && tau < 0.5)) throw Error(ErrorKind::ParameterOutOfRange, "tau must lie in (0, 1/2)");
  if (std::abs(mu.mass() - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidInput, "quantitative condition needs a probability measure; normalize first");
  }
  require_invariant(mu, g);
  const int n = mu.dim();
  SCCReport rep;
  rep.total_mass = mu.mass();
  const auto subspaces = enumerate_invariant_subspaces(d);
  rep.irrelevant = subspaces.empty();
  double worst = std::numeric_limits<double>::infinity();
  for (const InvariantSubspace& s : subspaces) {
    SubspaceRecord r = make_record(s);
    r.mass = tube_mass(mu, s.basis, delta);
    r.threshold = (1.0 - tau) * s.dim / n;
    r.slack = r.threshold - r.mass;
    if (r.slack < 0.0 && r.slack < worst) {
      worst = r.slack;
      rep.verdict = Verdict::Violated;
      rep.witness = rep.records.size();
    }
    rep.records.push_back(std::move(r));
  }
  return rep;
}

namespace {

double chord(const Vec& a, const Vec& b) { return (a - b).norm(); }

void check_atom_cap(const DiscreteSphericalMeasure& m) {
  if (m.size() > kMaxTransportAtoms) {
    throw Error(ErrorKind::InvalidInput,
                "transport is limited to " + std::to_string(kMaxTransportAtoms) + " atoms per measure");
  }
}

}  // namespace

double wasserstein(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  if (mu.dim() != nu.dim()) throw Error(ErrorKind::InvalidInput, "measures live on different spheres");
  if (std::abs(mu.mass() - nu.mass()) >= 1e-9) {
    throw Error(ErrorKind::MassMismatch,
                "wasserstein needs equal total masses (" + std::to_string(mu.mass()) + " vs " +
                    std::to_string(nu.mass()) + "); use the bounded-Lipschitz distance for unequal masses");
  }
  check_atom_cap(mu);
  check_atom_cap(nu);
  const std::size_t m = mu.size();
  const std::size_t k = nu.size();
  std::vector<double> supply(m);
  std::vector<double> demand(k);
  for (std::size_t i = 0; i < m; ++i) supply[i] = mu[i].w;
  const double rescale = mu.mass() / nu.mass();
  for (std::size_t j = 0; j < k; ++j) demand[j] = nu[j].w * rescale;
  Mat cost(m, k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) cost(i, j) = chord(mu[i].u, nu[j].u);
  }
  return solve_transport(supply, demand, cost).cost;
}

namespace {

// Net signed mass mu - nu on the merged atom set, split by sign.
struct SignedParts {
  std::vector<Vec> pos_u;
  std::vector<double> pos_w;
  std::vector<Vec> neg_u;
  std::vector<double> neg_w;
};

SignedParts signed_parts(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  std::vector<Vec> dirs;
  std::vector<double> net;
  for (const Atom& a : mu.atoms()) {
    dirs.push_back(a.u);
    net.push_back(a.w);
  }
  for (const Atom& a : nu.atoms()) {
    const std::size_t j = mu.find(a.u);
    if (j < mu.size()) {
      net[j] -= a.w;
    } else {
      dirs.push_back(a.u);
      net.push_back(-a.w);
    }
  }
  SignedParts s;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    if (net[i] > 0.0) {
      s.pos_u.push_back(dirs[i]);
      s.pos_w.push_back(net[i]);
    } else if (net[i] < 0.0) {
      s.neg_u.push_back(dirs[i]);
      s.neg_w.push_back(-net[i]);
    }
  }
  return s;
}

// Min-cost flow from the positive to the negative part where any unit may
// also leave to, or arrive from, a ground node at cost 1 (the dual of the
// |f| <= 1 cap). Dense LP in the flow variables.
double bl_dense_lp(const SignedParts& s) {
  const int p = static_cast<int>(s.pos_w.size());
  const int q = static_cast<int>(s.neg_w.size());
  const int cols = p * q + p + q;
  Mat a = Mat::Zero(p + q, cols);
  Vec b(p + q);
  Vec c(cols);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < q; ++j) {
      const int col = i * q + j;
      a(i, col) = 1.0;
      a(p + j, col) = 1.0;
      c[col] = chord(s.pos_u[i], s.neg_u[j]);
    }
  }
  for (int i = 0; i < p; ++i) {
    a(i, p * q + i) = 1.0;
    c[p * q + i] = 1.0;
    b[i] = s.pos_w[i];
  }
  for (int j = 0; j < q; ++j) {
    a(p + j, p * q + p + j) = 1.0;
    c[p * q + p + j] = 1.0;
    b[p + j] = s.neg_w[j];
  }
  const lp::Result r = lp::minimize(a, b, c);
  if (r.status != lp::Status::Optimal) {
    throw Error(ErrorKind::ToleranceUnreachable, "bounded-Lipschitz LP did not reach optimality");
  }
  return r.objective;
}

// Same flow problem as a balanced transportation problem with the ground
// node appended on both sides.
double bl_transport(const SignedParts& s) {
  const std::size_t p = s.pos_w.size();
  const std::size_t q = s.neg_w.size();
  double tp = 0.0;
  double tq = 0.0;
  for (double w : s.pos_w) tp += w;
  for (double w : s.neg_w) tq += w;
  std::vector<double> supply = s.pos_w;
  supply.push_back(tq);
  std::vector<double> demand = s.neg_w;
  demand.push_back(tp);
  Mat cost(p + 1, q + 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < q; ++j) cost(i, j) = chord(s.pos_u[i], s.neg_u[j]);
    cost(i, q) = 1.0;
  }
  for (std::size_t j = 0; j < q; ++j) cost(p, j) = 1.0;
  cost(p, q) = 0.0;
  return solve_transport(supply, demand, cost).cost;
}

}  // namespace

double bounded_lipschitz(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu) {
  if (mu.dim() != nu.dim()) throw Error(ErrorKind::InvalidInput, "measures live on different spheres");
  check_atom_cap(mu);
  check_atom_cap(nu);
  const SignedParts s = signed_parts(mu, nu);
  if (s.pos_w.empty() && s.neg_w.empty()) return 0.0;
  if (s.pos_w.empty() || s.neg_w.empty()) {
    double t = 0.0;
    for (double w : s.pos_w) t += w;
    for (double w : s.neg_w) t += w;
    return t;
  }
  if (s.pos_w.size() * s.neg_w.size() <= 4096) return bl_dense_lp(s);
  return bl_transport(s);
}

}  // namespace logmink
