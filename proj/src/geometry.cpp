#include "logmink/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "logmink/lp.hpp"

namespace logmink {

UnitVector::UnitVector(Vec coords) : v_(std::move(coords)) {
  if (v_.size() < 1 || !v_.allFinite()) throw Error(ErrorKind::InvalidInput, "unit vector: bad coordinates");
  if (std::abs(v_.norm() - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidInput, "unit vector: norm differs from 1 by more than 1e-12");
  }
}

UnitVector UnitVector::normalize(const Vec& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidInput, "cannot normalize zero vector");
  Vec w = v / n;
  // One more pass brings the norm to within a couple of ulps.
  w /= w.norm();
  return UnitVector(std::move(w));
}

HPolytope::HPolytope(int dim, std::vector<UnitVector> normals, std::vector<double> supports)
    : dim_(dim), normals_(std::move(normals)), supports_(std::move(supports)) {
  if (dim_ < 1) throw Error(ErrorKind::InvalidInput, "polytope dimension must be positive");
  if (normals_.size() != supports_.size()) {
    throw Error(ErrorKind::InvalidInput, "normals and supports differ in length");
  }
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    if (normals_[i].dim() != dim_) throw Error(ErrorKind::InvalidInput, "normal dimension mismatch");
    if (!(supports_[i] > 0.0) || !std::isfinite(supports_[i])) {
      throw Error(ErrorKind::InvalidInput, "support numbers must be positive (origin interior)");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((normals_[i].coords() - normals_[j].coords()).norm() <= kGeomTol) {
        throw Error(ErrorKind::InvalidInput,
                    "normals " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
}

HPolytope HPolytope::dilate(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidInput, "dilation factor must be positive");
  std::vector<double> h = supports_;
  for (double& x : h) x *= t;
  return with_supports(std::move(h));
}

HPolytope HPolytope::with_supports(std::vector<double> supports) const {
  HPolytope out = *this;
  if (supports.size() != supports_.size()) throw Error(ErrorKind::InvalidInput, "support count mismatch");
  for (double h : supports) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::InvalidInput, "support numbers must be positive");
  }
  out.supports_ = std::move(supports);
  return out;
}

HPolytope HPolytope::linear_image(const Mat& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) throw Error(ErrorKind::InvalidInput, "linear map shape mismatch");
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorKind::InvalidInput, "linear map is singular");
  const Mat inv_t = lu.inverse().transpose();
  std::vector<UnitVector> normals;
  std::vector<double> h;
  for (std::size_t i = 0; i < size(); ++i) {
    const Vec w = inv_t * normal(i);
    const double len = w.norm();
    normals.push_back(UnitVector::normalize(w));
    h.push_back(supports_[i] / len);
  }
  return HPolytope(dim_, std::move(normals), std::move(h));
}

namespace {

struct Halfspace {
  Vec a;
  double b;
};

struct RawVertex {
  Vec x;
  std::vector<int> active;  // sorted constraint indices
};

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains_index(const std::vector<int>& sorted, int idx) {
  return std::binary_search(sorted.begin(), sorted.end(), idx);
}

int numeric_rank(const Mat& m, double rel_tol = 1e-9) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * std::max(1.0, s[0])) ++r;
  }
  return r;
}

Vec solve_active(const std::vector<Halfspace>& hs, const std::vector<int>& active, int n) {
  Mat a(static_cast<int>(active.size()), n);
  Vec b(static_cast<int>(active.size()));
  for (std::size_t r = 0; r < active.size(); ++r) {
    a.row(static_cast<int>(r)) = hs[active[r]].a.transpose();
    b[static_cast<int>(r)] = hs[active[r]].b;
  }
  return a.colPivHouseholderQr().solve(b);
}

// Incremental halfspace intersection starting from the box [-box, box]^n.
// Box constraints are numbered after the body constraints. Returns false if a
// vertex of the box survives, i.e. the box was too small or the body is
// unbounded.
bool clip_box(const std::vector<Halfspace>& body, int n, double box, std::vector<RawVertex>& out) {
  const int m = static_cast<int>(body.size());
  std::vector<Halfspace> hs = body;
  for (int k = 0; k < n; ++k) {
    Vec e = Vec::Zero(n);
    e[k] = 1.0;
    hs.push_back({e, box});
    hs.push_back({-e, box});
  }

  std::vector<RawVertex> verts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    RawVertex v{Vec(n), {}};
    for (int k = 0; k < n; ++k) {
      const bool pos = (mask >> k) & 1;
      v.x[k] = pos ? box : -box;
      v.active.push_back(m + 2 * k + (pos ? 0 : 1));
    }
    std::sort(v.active.begin(), v.active.end());
    verts.push_back(std::move(v));
  }

  for (int c = 0; c < m; ++c) {
    const Halfspace& h = hs[c];
    std::vector<int> cls(verts.size());
    bool any_out = false;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const double s = h.a.dot(verts[i].x) - h.b;
      const double tol = 1e-11 * (std::abs(h.b) + verts[i].x.norm());
      cls[i] = s > tol ? 1 : (s < -tol ? -1 : 0);
      any_out = any_out || cls[i] == 1;
    }
    std::vector<RawVertex> next;
    next.reserve(verts.size() + 8);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      if (cls[i] == 1) continue;
      RawVertex v = verts[i];
      if (cls[i] == 0) v.active.insert(std::upper_bound(v.active.begin(), v.active.end(), c), c);
      next.push_back(std::move(v));
    }
    if (any_out) {
      for (std::size_t i = 0; i < verts.size(); ++i) {
        if (cls[i] != -1) continue;
        for (std::size_t j = 0; j < verts.size(); ++j) {
          if (cls[j] != 1) continue;
          std::vector<int> common = intersect_sorted(verts[i].active, verts[j].active);
          if (static_cast<int>(common.size()) < n - 1) continue;
          Mat na(static_cast<int>(common.size()), n);
          for (std::size_t r = 0; r < common.size(); ++r) na.row(static_cast<int>(r)) = hs[common[r]].a.transpose();
          if (numeric_rank(na) != n - 1) continue;
          common.insert(std::upper_bound(common.begin(), common.end(), c), c);
          RawVertex nv{solve_active(hs, common, n), std::move(common)};
          next.push_back(std::move(nv));
        }
      }
    }
    verts = std::move(next);
  }

  for (const RawVertex& v : verts) {
    if (!v.active.empty() && v.active.back() >= m) return false;
  }
  // Re-solve from the active body constraints and merge coincident vertices.
  const double scale = std::accumulate(body.begin(), body.end(), 0.0,
                                       [](double acc, const Halfspace& h) { return std::max(acc, h.b); });
  out.clear();
  for (RawVertex& v : verts) {
    v.x = solve_active(hs, v.active, n);
    bool merged = false;
    for (RawVertex& w : out) {
      if ((w.x - v.x).norm() <= kGeomTol * std::max(1.0, scale)) {
        std::vector<int> u;
        std::set_union(w.active.begin(), w.active.end(), v.active.begin(), v.active.end(), std::back_inserter(u));
        w.active = std::move(u);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(v));
  }
  return true;
}

struct FaceMeasure {
  double vol;
  Vec centroid;
};

// Affine rank and an orthonormal basis of span{x_i - x_0}.
Mat affine_basis(const std::vector<Vec>& pts, const std::vector<std::size_t>& idx, double scale) {
  const int n = static_cast<int>(pts[idx[0]].size());
  Mat d(n, static_cast<int>(idx.size()) - 1);
  for (std::size_t i = 1; i < idx.size(); ++i) d.col(static_cast<int>(i) - 1) = pts[idx[i]] - pts[idx[0]];
  if (d.cols() == 0) return Mat(n, 0);
  Eigen::JacobiSVD<Mat> svd(d, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > 1e-9 * std::max(1.0, scale)) ++r;
  }
  return svd.matrixU().leftCols(r);
}

// (k)-dimensional volume and centroid of the face spanned by pts[idx],
// decomposed into pyramids over its (k-1)-faces. Subfaces are found through
// the active constraint sets; `fixed` holds constraints already defining the
// face.
FaceMeasure face_measure(const std::vector<Vec>& pts, const std::vector<std::vector<int>>& active,
                         const std::vector<std::size_t>& idx, int k, std::vector<int>& fixed, double scale) {
  if (k == 0) return {1.0, pts[idx[0]]};
  if (k == 1) {
    std::size_t a = idx[0];
    std::size_t b = idx[0];
    double best = -1.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        const double d = (pts[idx[i]] - pts[idx[j]]).norm();
        if (d > best) {
          best = d;
          a = idx[i];
          b = idx[j];
        }
      }
    }
    return {std::max(best, 0.0), 0.5 * (pts[a] + pts[b])};
  }

  Vec c = Vec::Zero(pts[idx[0]].size());
  for (std::size_t i : idx) c += pts[i];
  c /= static_cast<double>(idx.size());

  std::set<int> candidates;
  for (std::size_t i : idx) candidates.insert(active[i].begin(), active[i].end());
  for (int f : fixed) candidates.erase(f);

  std::set<std::vector<std::size_t>> seen;
  double vol = 0.0;
  Vec moment = Vec::Zero(c.size());
  for (int j : candidates) {
    std::vector<std::size_t> sub;
    for (std::size_t i : idx) {
      if (contains_index(active[i], j)) sub.push_back(i);
    }
    if (static_cast<int>(sub.size()) < k || sub.size() == idx.size()) continue;
    if (!seen.insert(sub).second) continue;
    const Mat basis = affine_basis(pts, sub, scale);
    if (basis.cols() != k - 1) continue;
    const Vec off = c - pts[sub[0]];
    const double height = (off - basis * (basis.transpose() * off)).norm();
    fixed.push_back(j);
    const FaceMeasure m = face_measure(pts, active, sub, k - 1, fixed, scale);
    fixed.pop_back();
    const double pv = height * m.vol / k;
    vol += pv;
    moment += pv * (c + (static_cast<double>(k) / (k + 1)) * (m.centroid - c));
  }
  if (vol <= 0.0) return {0.0, c};
  return {vol, moment / vol};
}

FacetComplex build_segment(const HPolytope& p) {
  double hp = -1.0;
  double hm = -1.0;
  FacetComplex fc;
  fc.dim = 1;
  fc.facet_areas.assign(p.size(), 0.0);
  std::size_t ip = 0;
  std::size_t im = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.normal(i)[0] > 0) {
      hp = p.support(i);
      ip = i;
    } else {
      hm = p.support(i);
      im = i;
    }
  }
  if (hp < 0 || hm < 0) throw Error(ErrorKind::UnboundedBody, "segment needs both directions");
  fc.vertices = {Vec::Constant(1, hp), Vec::Constant(1, -hm)};
  fc.facets = {{ip, {0}}, {im, {1}}};
  fc.facet_areas[ip] = 1.0;
  fc.facet_areas[im] = 1.0;
  fc.volume = hp + hm;
  fc.centroid = Vec::Constant(1, 0.5 * (hp - hm));
  return fc;
}

}  // namespace

bool positively_spans(int dim, const std::vector<Vec>& directions) {
  const int m = static_cast<int>(directions.size());
  if (m <= dim) return false;
  Mat u(dim, m);
  for (int i = 0; i < m; ++i) u.col(i) = directions[i];
  if (numeric_rank(u) < dim) return false;
  // maximize t s.t. sum (mu_i + t) u_i = 0, sum mu_i + m t = 1, mu, t >= 0.
  Mat a = Mat::Zero(dim + 1, m + 1);
  a.topLeftCorner(dim, m) = u;
  a.block(0, m, dim, 1) = u.rowwise().sum();
  a.row(dim).head(m).setOnes();
  a(dim, m) = m;
  Vec b = Vec::Zero(dim + 1);
  b[dim] = 1.0;
  Vec c = Vec::Zero(m + 1);
  c[m] = -1.0;
  const lp::Result r = lp::minimize(a, b, c);
  return r.status == lp::Status::Optimal && -r.objective > 1e-12;
}

FacetComplex build_facet_complex(const HPolytope& p) {
  const int n = p.dim();
  if (n > kMaxExactDim) {
    throw Error(ErrorKind::DimensionUnsupported,
                "exact geometry is limited to n <= 4 (got n = " + std::to_string(n) + ")");
  }
  if (n == 1) return build_segment(p);

  std::vector<Vec> dirs;
  for (const UnitVector& u : p.normals()) dirs.push_back(u.coords());
  if (!positively_spans(n, dirs)) {
    throw Error(ErrorKind::UnboundedBody, "normals do not positively span R^n");
  }

  std::vector<Halfspace> hs;
  double hmax = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    hs.push_back({p.normal(i), p.support(i)});
    hmax = std::max(hmax, p.support(i));
  }
  std::vector<RawVertex> verts;
  double box = 1e3 * hmax;
  bool ok = false;
  for (int attempt = 0; attempt < 4 && !ok; ++attempt, box *= 1e3) ok = clip_box(hs, n, box, verts);
  if (!ok) throw Error(ErrorKind::UnboundedBody, "vertex enumeration escaped the bounding box");

  FacetComplex fc;
  fc.dim = n;
  fc.facet_areas.assign(p.size(), 0.0);
  std::vector<std::vector<int>> active;
  for (RawVertex& v : verts) {
    fc.vertices.push_back(v.x);
    active.push_back(std::move(v.active));
  }

  double vol = 0.0;
  Vec moment = Vec::Zero(n);
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < active.size(); ++v) {
      if (contains_index(active[v], static_cast<int>(i))) idx.push_back(v);
    }
    if (static_cast<int>(idx.size()) < n || affine_basis(fc.vertices, idx, hmax).cols() != n - 1) {
      fc.redundant.push_back(i);
      continue;
    }
    std::vector<int> fixed{static_cast<int>(i)};
    const FaceMeasure fm = face_measure(fc.vertices, active, idx, n - 1, fixed, hmax);
    if (fm.vol <= 1e-14 * std::pow(std::max(hmax, 1e-300), n - 1)) {
      fc.redundant.push_back(i);
      continue;
    }
    fc.facet_areas[i] = fm.vol;
    fc.facets.push_back({i, std::move(idx)});
    const double cone = p.support(i) * fm.vol / n;
    vol += cone;
    moment += cone * (static_cast<double>(n) / (n + 1)) * fm.centroid;
  }
  if (vol < 1e-12) throw Error(ErrorKind::DegenerateBody, "volume below 1e-12");
  fc.volume = vol;
  fc.centroid = moment / vol;
  return fc;
}

double volume(const HPolytope& p) { return build_facet_complex(p).volume; }

double support_eval(const FacetComplex& fc, const Vec& u) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& v : fc.vertices) best = std::max(best, v.dot(u));
  return best;
}

double support_eval(const HPolytope& p, const UnitVector& u) {
  return support_eval(build_facet_complex(p), u.coords());
}

HPolytope polytope_from_vertices(int dim, const std::vector<Vec>& vertices) {
  std::vector<UnitVector> normals;
  std::vector<double> h;
  for (const Vec& v : vertices) {
    if (v.size() != dim) throw Error(ErrorKind::InvalidInput, "vertex dimension mismatch");
    const double len = v.norm();
    if (len <= kGeomTol) throw Error(ErrorKind::InvalidInput, "origin must be interior, got a vertex at o");
    UnitVector u = UnitVector::normalize(v);
    bool dup = false;
    for (std::size_t j = 0; j < normals.size(); ++j) {
      if ((normals[j].coords() - u.coords()).norm() <= kGeomTol) {
        h[j] = std::min(h[j], 1.0 / len);
        dup = true;
        break;
      }
    }
    if (!dup) {
      normals.push_back(std::move(u));
      h.push_back(1.0 / len);
    }
  }
  const HPolytope polar(dim, std::move(normals), std::move(h));
  FacetComplex pc;
  try {
    pc = build_facet_complex(polar);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnboundedBody) {
      throw Error(ErrorKind::InvalidInput, "origin is not interior to the convex hull of the vertices");
    }
    throw;
  }
  std::vector<UnitVector> out_normals;
  std::vector<double> out_h;
  for (const Vec& w : pc.vertices) {
    const double len = w.norm();
    out_normals.push_back(UnitVector::normalize(w));
    out_h.push_back(1.0 / len);
  }
  return HPolytope(dim, std::move(out_normals), std::move(out_h));
}

namespace {

// Maximum of <a, u> over the spherical cap {u : |u - c| <= rho}.
double cap_max(const Vec& a, const Vec& c, double beta) {
  const double na = a.norm();
  if (na == 0.0) return 0.0;
  const double cos_t = std::clamp(a.dot(c) / na, -1.0, 1.0);
  const double theta = std::acos(cos_t);
  return na * std::cos(std::max(0.0, theta - beta));
}

struct SphereCell {
  int axis;
  int sign;
  Vec lo;
  Vec hi;
  double ub;
};

struct CellOrder {
  bool operator()(const SphereCell& a, const SphereCell& b) const { return a.ub < b.ub; }
};

class HausdorffBound {
 public:
  HausdorffBound(const FacetComplex& p, const FacetComplex& q) : p_(p), q_(q), n_(p.dim) {
    pi_p_ = nearest(p_.vertices, q_.vertices);
    pi_q_ = nearest(q_.vertices, p_.vertices);
  }

  // Evaluates |f| at the cell centre and an upper bound for sup |f| over the cell.
  std::pair<double, double> evaluate(const SphereCell& cell) const {
    Vec x(n_);
    for (int d = 0, k = 0; d < n_; ++d) {
      if (d == cell.axis) {
        x[d] = cell.sign;
      } else {
        x[d] = 0.5 * (cell.lo[k] + cell.hi[k]);
        ++k;
      }
    }
    const double rho = 0.5 * (cell.hi - cell.lo).norm();
    const Vec c = x / x.norm();
    const double beta = 2.0 * std::asin(std::min(1.0, rho / 2.0));

    const auto [hp, vp] = argmax(p_.vertices, c);
    const auto [hq, vq] = argmax(q_.vertices, c);
    const double fc = hp - hq;

    const double up = side_bound(p_.vertices, q_.vertices, pi_p_, vp, vq, c, beta);
    const double uq = side_bound(q_.vertices, p_.vertices, pi_q_, vq, vp, c, beta);
    return {std::abs(fc), std::max({up, uq, std::abs(fc)})};
  }

 private:
  static std::vector<std::size_t> nearest(const std::vector<Vec>& from, const std::vector<Vec>& to) {
    std::vector<std::size_t> out(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < to.size(); ++j) {
        const double d = (from[i] - to[j]).squaredNorm();
        if (d < best) {
          best = d;
          out[i] = j;
        }
      }
    }
    return out;
  }

  static std::pair<double, std::size_t> argmax(const std::vector<Vec>& verts, const Vec& u) {
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const double s = verts[i].dot(u);
      if (s > best) {
        best = s;
        arg = i;
      }
    }
    return {best, arg};
  }

  // Bound for sup (h_a - h_b) over the cap. Any vertex that maximises h_a
  // somewhere in the cap satisfies cap_max(v - v_c) >= 0; for such v and any
  // vertex w of b, h_a(u) - h_b(u) <= <v - w, u>.
  static double side_bound(const std::vector<Vec>& a, const std::vector<Vec>& b,
                           const std::vector<std::size_t>& pi, std::size_t va, std::size_t vb,
                           const Vec& c, double beta) {
    double out = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != va && cap_max(a[i] - a[va], c, beta) < -1e-15) continue;
      const double via_center = cap_max(a[i] - b[vb], c, beta);
      const double via_nearest = cap_max(a[i] - b[pi[i]], c, beta);
      out = std::max(out, std::min(via_center, via_nearest));
    }
    return out;
  }

  const FacetComplex& p_;
  const FacetComplex& q_;
  int n_;
  std::vector<std::size_t> pi_p_;
  std::vector<std::size_t> pi_q_;
};

}  // namespace

HausdorffResult hausdorff_distance(const FacetComplex& p, const FacetComplex& q, double tol, std::size_t budget) {
  if (p.dim != q.dim) throw Error(ErrorKind::InvalidInput, "hausdorff: dimension mismatch");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "hausdorff: tolerance must be positive");
  const int n = p.dim;
  HausdorffResult res;
  if (n == 1) {
    const double a = std::abs(support_eval(p, Vec::Constant(1, 1.0)) - support_eval(q, Vec::Constant(1, 1.0)));
    const double b = std::abs(support_eval(p, Vec::Constant(1, -1.0)) - support_eval(q, Vec::Constant(1, -1.0)));
    res.value = res.upper_bound = std::max(a, b);
    res.evaluations = 2;
    return res;
  }

  const HausdorffBound bound(p, q);
  std::priority_queue<SphereCell, std::vector<SphereCell>, CellOrder> heap;
  double best = 0.0;
  auto push = [&](SphereCell cell) {
    const auto [val, ub] = bound.evaluate(cell);
    best = std::max(best, val);
    cell.ub = ub;
    heap.push(std::move(cell));
    ++res.evaluations;
  };
  for (int axis = 0; axis < n; ++axis) {
    for (int sign : {-1, 1}) push({axis, sign, Vec::Constant(n - 1, -1.0), Vec::Constant(n - 1, 1.0), 0.0});
  }

  const int children = 1 << (n - 1);
  while (!heap.empty()) {
    if (heap.top().ub <= best + tol) break;
    if (res.evaluations + children > budget) {
      throw Error(ErrorKind::ToleranceUnreachable,
                  "hausdorff: certification needs more than " + std::to_string(budget) + " evaluations");
    }
    const SphereCell cell = heap.top();
    heap.pop();
    const Vec mid = 0.5 * (cell.lo + cell.hi);
    for (int mask = 0; mask < children; ++mask) {
      SphereCell child{cell.axis, cell.sign, cell.lo, cell.hi, 0.0};
      for (int d = 0; d < n - 1; ++d) {
        if ((mask >> d) & 1) {
          child.lo[d] = mid[d];
        } else {
          child.hi[d] = mid[d];
        }
      }
      push(std::move(child));
    }
  }
  res.value = best;
  res.upper_bound = heap.empty() ? best : std::max(best, heap.top().ub);
  return res;
}

HausdorffResult hausdorff_distance(const HPolytope& p, const HPolytope& q, double tol, std::size_t budget) {
  return hausdorff_distance(build_facet_complex(p), build_facet_complex(q), tol, budget);
}

BodyMetrics radii_and_centroid(const HPolytope& p, const FacetComplex& fc) {
  BodyMetrics m;
  m.inradius_o = *std::min_element(p.supports().begin(), p.supports().end());
  for (const Vec& v : fc.vertices) m.circumradius_o = std::max(m.circumradius_o, v.norm());
  m.centroid = fc.centroid;
  return m;
}

BodyMetrics radii_and_centroid(const HPolytope& p) { return radii_and_centroid(p, build_facet_complex(p)); }

HPolytope direct_sum(const HPolytope& a, const Mat& basis_a, const HPolytope& b, const Mat& basis_b) {
  const int n = static_cast<int>(basis_a.rows());
  if (basis_b.rows() != n || basis_a.cols() != a.dim() || basis_b.cols() != b.dim() || a.dim() + b.dim() != n) {
    throw Error(ErrorKind::InvalidInput, "direct_sum: basis shapes do not match the summands");
  }
  const double ortho_a = (basis_a.transpose() * basis_a - Mat::Identity(a.dim(), a.dim())).norm();
  const double ortho_b = (basis_b.transpose() * basis_b - Mat::Identity(b.dim(), b.dim())).norm();
  const double cross = (basis_a.transpose() * basis_b).norm();
  if (ortho_a > 1e-9 || ortho_b > 1e-9 || cross > 1e-9) {
    throw Error(ErrorKind::SubspacesNotOrthogonal, "direct_sum: subspaces are not orthogonal complements");
  }
  std::vector<UnitVector> normals;
  std::vector<double> h;
  for (std::size_t i = 0; i < a.size(); ++i) {
    normals.push_back(UnitVector::normalize(basis_a * a.normal(i)));
    h.push_back(a.support(i));
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    normals.push_back(UnitVector::normalize(basis_b * b.normal(i)));
    h.push_back(b.support(i));
  }
  return HPolytope(n, std::move(normals), std::move(h));
}

double norm_in_difference_body(const Vec& x, const HPolytope& q) {
  if (x.size() != q.dim()) throw Error(ErrorKind::InvalidInput, "gauge: dimension mismatch");
  if (x.norm() == 0.0) return 0.0;
  const FacetComplex fc = build_facet_complex(q);
  std::vector<Vec> diffs;
  for (std::size_t i = 0; i < fc.vertices.size(); ++i) {
    for (std::size_t j = 0; j < fc.vertices.size(); ++j) {
      if (i != j) diffs.push_back(fc.vertices[i] - fc.vertices[j]);
    }
  }
  // min sum(lambda) s.t. sum lambda_k d_k = x, lambda >= 0.
  const int n = q.dim();
  Mat a(n, static_cast<int>(diffs.size()));
  for (std::size_t k = 0; k < diffs.size(); ++k) a.col(static_cast<int>(k)) = diffs[k];
  const lp::Result r = lp::minimize(a, x, Vec::Ones(static_cast<int>(diffs.size())));
  if (r.status != lp::Status::Optimal) throw Error(ErrorKind::DegenerateBody, "gauge LP failed");
  return r.objective;
}

bool contains_points(const HPolytope& outer, const std::vector<Vec>& points, double tol) {
  for (const Vec& x : points) {
    for (std::size_t i = 0; i < outer.size(); ++i) {
      if (outer.normal(i).dot(x) > outer.support(i) + tol) return false;
    }
  }
  return true;
}

}  // namespace logmink
