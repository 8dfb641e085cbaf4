#include "logmink/coxeter.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <string>

namespace logmink {

Mat reflection_matrix(const Vec& normal) {
  const int n = static_cast<int>(normal.size());
  return Mat::Identity(n, n) - 2.0 * normal * normal.transpose();
}

namespace {

bool same_matrix(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff() <= kMatrixTol; }

std::size_t find_matrix(const std::vector<Mat>& list, const Mat& m) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (same_matrix(list[i], m)) return i;
  }
  return list.size();
}

}  // namespace

std::vector<Mat> close_under_products(int dim, const std::vector<Mat>& seeds, std::size_t order_cap) {
  std::vector<Mat> elems{Mat::Identity(dim, dim)};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const Mat e = elems[queue.front()];
    queue.pop_front();
    for (const Mat& s : seeds) {
      Mat p = s * e;
      if (find_matrix(elems, p) != elems.size()) continue;
      if (elems.size() >= order_cap) {
        throw Error(ErrorKind::OrderCapExceeded,
                    "group order exceeds cap " + std::to_string(order_cap) + " (non-crystallographic mirror angle?)");
      }
      elems.push_back(std::move(p));
      queue.push_back(elems.size() - 1);
    }
  }
  return elems;
}

ReflectionGroup generate_group(const std::vector<UnitVector>& normals, std::size_t order_cap) {
  if (normals.empty()) throw Error(ErrorKind::NormalsDegenerate, "no generator normals");
  const int n = normals.front().dim();
  Mat span(n, static_cast<int>(normals.size()));
  std::vector<Mat> gens;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    if (normals[i].dim() != n) throw Error(ErrorKind::InvalidInput, "generator dimension mismatch");
    span.col(static_cast<int>(i)) = normals[i].coords();
    gens.push_back(reflection_matrix(normals[i].coords()));
  }
  Eigen::JacobiSVD<Mat> svd(span);
  if (svd.singularValues().size() < n || svd.singularValues()[n - 1] < 1e-9) {
    throw Error(ErrorKind::NormalsDegenerate, "mirror normals do not span R^n");
  }
  ReflectionGroup g;
  g.dim = n;
  g.generators = normals;
  g.elements = close_under_products(n, gens, order_cap);
  if (fixed_point_defect(g) >= 1e-8) {
    throw Error(ErrorKind::NormalsDegenerate, "group has nonzero fixed points");
  }
  return g;
}

double fixed_point_defect(const ReflectionGroup& g) {
  Mat avg = Mat::Zero(g.dim, g.dim);
  for (const Mat& a : g.elements) avg += a;
  avg /= static_cast<double>(g.order());
  Eigen::JacobiSVD<Mat> svd(avg);
  return svd.singularValues()[0];
}

std::vector<int> InvariantDecomposition::dims() const {
  std::vector<int> out;
  for (const Mat& b : subspaces) out.push_back(static_cast<int>(b.cols()));
  return out;
}

namespace {

Mat averaged_random_symmetric(const ReflectionGroup& g, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat s(g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i) {
    for (int j = 0; j < g.dim; ++j) s(i, j) = gauss(rng);
  }
  s = 0.5 * (s + s.transpose()).eval();
  Mat avg = Mat::Zero(g.dim, g.dim);
  for (const Mat& a : g.elements) avg += a.transpose() * s * a;
  return avg / static_cast<double>(g.order());
}

// Largest-magnitude coordinate of a 1-d basis is made positive.
void canonical_sign(Mat& b) {
  if (b.cols() != 1) return;
  Eigen::Index k = 0;
  b.col(0).cwiseAbs().maxCoeff(&k);
  if (b(k, 0) < 0) b = -b;
}

}  // namespace

InvariantDecomposition invariant_decomposition(const ReflectionGroup& g, const DecompositionOptions& opts) {
  const int n = g.dim;
  std::mt19937_64 rng(opts.seed);
  std::vector<Mat> parts{Mat::Identity(n, n)};
  std::vector<Mat> averages;

  for (int trial = 0; trial < opts.trials; ++trial) {
    const Mat avg = averaged_random_symmetric(g, rng);
    averages.push_back(avg);
    std::vector<Mat> refined;
    for (const Mat& b : parts) {
      if (b.cols() == 1) {
        refined.push_back(b);
        continue;
      }
      const Mat m = b.transpose() * avg * b;
      Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (m + m.transpose()));
      const Vec& ev = eig.eigenvalues();
      int start = 0;
      for (int i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || ev[i] - ev[i - 1] > opts.gap) {
          refined.push_back(b * eig.eigenvectors().middleCols(start, i - start));
          start = i;
        }
      }
    }
    parts = std::move(refined);
  }

  // By Schur's lemma every averaged matrix acts as a scalar on an irreducible
  // component; a part on which some average has a small but nonzero spread is
  // neither provably irreducible nor safely splittable.
  for (const Mat& b : parts) {
    for (const Mat& avg : averages) {
      const Mat m = b.transpose() * avg * b;
      Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (m + m.transpose()));
      const double spread = eig.eigenvalues().maxCoeff() - eig.eigenvalues().minCoeff();
      if (spread > 1e-10) {
        throw Error(ErrorKind::NumericalRankAmbiguity,
                    "eigenvalue gap below threshold persisted across all random trials");
      }
    }
    for (const Mat& a : g.elements) {
      const Mat off = a * b - b * (b.transpose() * a * b);
      if (off.norm() >= 1e-8) throw Error(ErrorKind::NumericalRankAmbiguity, "component is not invariant");
    }
  }

  for (Mat& b : parts) canonical_sign(b);
  auto key = [](const Mat& b) {
    const Mat p = b * b.transpose();
    Eigen::Index k = 0;
    p.diagonal().maxCoeff(&k);
    return std::pair<int, Eigen::Index>(static_cast<int>(b.cols()), k);
  };
  std::stable_sort(parts.begin(), parts.end(), [&](const Mat& a, const Mat& b) { return key(a) < key(b); });

  InvariantDecomposition d;
  d.dim = n;
  d.subspaces = std::move(parts);
  return d;
}

std::vector<InvariantSubspace> enumerate_invariant_subspaces(const InvariantDecomposition& d) {
  std::vector<InvariantSubspace> out;
  const std::size_t m = d.subspaces.size();
  if (m < 2) return out;
  const std::size_t full = (std::size_t{1} << m) - 1;
  for (std::size_t mask = 1; mask < full; ++mask) {
    InvariantSubspace s;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1) {
        s.components.push_back(i);
        s.dim += static_cast<int>(d.subspaces[i].cols());
      }
    }
    s.basis = Mat(d.dim, s.dim);
    int col = 0;
    for (std::size_t i : s.components) {
      const Mat& b = d.subspaces[i];
      s.basis.middleCols(col, b.cols()) = b;
      col += static_cast<int>(b.cols());
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<std::size_t>> direction_permutations(const std::vector<Vec>& dirs, const ReflectionGroup& g,
                                                             double tol) {
  std::vector<std::vector<std::size_t>> perms(g.order(), std::vector<std::size_t>(dirs.size()));
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const Vec img = g.elements[a] * dirs[i];
      std::size_t hit = dirs.size();
      for (std::size_t j = 0; j < dirs.size(); ++j) {
        if ((dirs[j] - img).norm() <= tol) {
          hit = j;
          break;
        }
      }
      if (hit == dirs.size()) throw Error(ErrorKind::InvalidInput, "direction set is not closed under the group");
      perms[a][i] = hit;
    }
  }
  return perms;
}

std::vector<std::size_t> orbit_labels(const std::vector<std::vector<std::size_t>>& perms) {
  const std::size_t m = perms.empty() ? 0 : perms.front().size();
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(m, kUnset);
  std::size_t next = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (label[i] != kUnset) continue;
    for (const auto& p : perms) label[p[i]] = next;
    ++next;
  }
  return label;
}

DiscreteSphericalMeasure symmetrize_measure(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g) {
  if (mu.dim() != g.dim) throw Error(ErrorKind::InvalidInput, "measure and group dimensions differ");
  std::vector<Atom> atoms;
  const double inv = 1.0 / static_cast<double>(g.order());
  for (const Atom& at : mu.atoms()) {
    for (const Mat& a : g.elements) {
      Vec img = a * at.u;
      img /= img.norm();
      atoms.push_back({std::move(img), at.w * inv});
    }
  }
  return DiscreteSphericalMeasure(mu.dim(), std::move(atoms));
}

double measure_invariance_defect(const DiscreteSphericalMeasure& mu, const ReflectionGroup& g) {
  double worst = 0.0;
  for (const Atom& at : mu.atoms()) {
    for (const Mat& a : g.elements) {
      const std::size_t j = mu.find(a * at.u);
      if (j == mu.size()) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, std::abs(mu[j].w - at.w));
    }
  }
  return worst;
}

HPolytope symmetrize_supports(const HPolytope& p, const ReflectionGroup& g) {
  if (p.dim() != g.dim) throw Error(ErrorKind::InvalidInput, "polytope and group dimensions differ");
  std::vector<Vec> dirs;
  std::vector<double> h;
  for (std::size_t i = 0; i < p.size(); ++i) {
    dirs.push_back(p.normal(i));
    h.push_back(p.support(i));
  }
  // Orbit completion: missing images inherit the support of their source.
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (const Mat& a : g.elements) {
      Vec img = a * dirs[i];
      img /= img.norm();
      const bool present = std::any_of(dirs.begin(), dirs.end(), [&](const Vec& d) { return (d - img).norm() <= kGeomTol; });
      if (!present) {
        dirs.push_back(std::move(img));
        h.push_back(h[i]);
      }
    }
  }
  const auto perms = direction_permutations(dirs, g);
  std::vector<double> avg(dirs.size(), 0.0);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    for (const auto& perm : perms) avg[i] += h[perm[i]];
    avg[i] /= static_cast<double>(perms.size());
  }
  std::vector<UnitVector> normals;
  for (const Vec& d : dirs) normals.push_back(UnitVector::normalize(d));
  return HPolytope(p.dim(), std::move(normals), std::move(avg));
}

double body_invariance_defect(const HPolytope& p, const FacetComplex& fc, const ReflectionGroup& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double base = support_eval(fc, p.normal(i));
    for (const Mat& a : g.elements) {
      worst = std::max(worst, std::abs(support_eval(fc, a * p.normal(i)) - base));
    }
  }
  return worst;
}

}  // namespace logmink
