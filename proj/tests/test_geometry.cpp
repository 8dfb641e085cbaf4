#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logmink/geometry.hpp"
#include "oracles.hpp"

using namespace logmink;
using oracle::axis;
using oracle::polar;

namespace {

HPolytope regular_octagon(double h) {
  std::vector<UnitVector> normals;
  for (int k = 0; k < 8; ++k) normals.emplace_back(polar(k * std::numbers::pi / 4));
  return HPolytope(2, std::move(normals), std::vector<double>(8, h));
}

HPolytope cross_polytope_2d(double a) {
  std::vector<UnitVector> normals;
  for (int k = 0; k < 4; ++k) normals.emplace_back(polar(std::numbers::pi / 4 + k * std::numbers::pi / 2));
  // vertices (+-a, 0), (0, +-a): the edge x + y = a sits at distance a / sqrt2
  return HPolytope(2, std::move(normals), std::vector<double>(4, a / std::sqrt(2.0)));
}

HPolytope translate(const HPolytope& p, const Vec& z) {
  std::vector<double> h;
  for (std::size_t i = 0; i < p.size(); ++i) h.push_back(p.support(i) + p.normal(i).dot(z));
  return p.with_supports(std::move(h));
}

}  // namespace

TEST_CASE("unit square facet complex") {
  const FacetComplex fc = build_facet_complex(oracle::cube(2));
  CHECK(fc.vertices.size() == 4);
  CHECK(fc.volume == doctest::Approx(1.0).epsilon(1e-12));
  for (double a : fc.facet_areas) CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
  for (const Vec& v : fc.vertices) {
    CHECK(std::abs(v[0]) == doctest::Approx(0.5));
    CHECK(std::abs(v[1]) == doctest::Approx(0.5));
  }
}

TEST_CASE("unit cube volume and areas in every supported dimension") {
  for (int n = 2; n <= 4; ++n) {
    const FacetComplex fc = build_facet_complex(oracle::cube(n));
    CHECK(fc.volume == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fc.vertices.size() == (std::size_t{1} << n));
    for (double a : fc.facet_areas) CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("octagon volume matches the shoelace formula on its vertices") {
  const HPolytope oct = regular_octagon(0.5);
  const FacetComplex fc = build_facet_complex(oct);
  CHECK(fc.vertices.size() == 8);
  CHECK(fc.volume == doctest::Approx(oracle::shoelace(fc.vertices)).epsilon(1e-12));
  // regular octagon with inradius r has area 8 r^2 tan(pi/8)
  CHECK(fc.volume == doctest::Approx(8 * 0.25 * std::tan(std::numbers::pi / 8)).epsilon(1e-12));
  double perimeter = 0.0;
  for (double a : fc.facet_areas) perimeter += a;
  CHECK(perimeter == doctest::Approx(16 * 0.5 * std::tan(std::numbers::pi / 8)).epsilon(1e-12));
}

TEST_CASE("cross-polytope volume, support and radii") {
  const HPolytope p = cross_polytope_2d(1.0 / std::sqrt(2.0));
  CHECK(volume(p) == doctest::Approx(1.0).epsilon(1e-12));
  const BodyMetrics m = radii_and_centroid(p);
  CHECK(m.inradius_o == doctest::Approx(0.5));
  CHECK(m.circumradius_o == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("support function evaluation") {
  CHECK(support_eval(oracle::cube(3), UnitVector(axis(3, 0))) == doctest::Approx(0.5));
  CHECK(support_eval(oracle::cube(2), UnitVector::normalize(Vec::Ones(2))) == doctest::Approx(std::sqrt(2.0) / 2));
  std::mt19937_64 rng(7);
  const HPolytope p = oracle::random_symmetric_body(3, 5, rng);
  for (int i = 0; i < 50; ++i) CHECK(support_eval(p, UnitVector(oracle::random_unit(3, rng))) > 0.0);
}

TEST_CASE("volume homogeneity and rotation invariance") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 3; ++n) {
    const HPolytope p = oracle::random_symmetric_body(n, 4, rng);
    const double v = volume(p);
    for (double t : {0.5, 2.0, 3.0}) CHECK(volume(p.dilate(t)) == doctest::Approx(std::pow(t, n) * v).epsilon(1e-9));
    const Mat q = Eigen::HouseholderQR<Mat>(Mat::Random(n, n)).householderQ();
    CHECK(volume(p.linear_image(q)) == doctest::Approx(v).epsilon(1e-9));
  }
}

TEST_CASE("pyramid identity on random bodies") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const HPolytope p = oracle::random_symmetric_body(n, 3 + trial % 4, rng);
    const FacetComplex fc = build_facet_complex(p);
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += p.support(i) * fc.facet_areas[i];
    CHECK(s / n == doctest::Approx(fc.volume).epsilon(1e-9));
    for (const Vec& v : fc.vertices) {
      int tight = 0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const double slack = p.support(i) - p.normal(i).dot(v);
        CHECK(slack >= -1e-9);
        if (slack <= 1e-9) ++tight;
      }
      CHECK(tight >= n);
    }
  }
}

TEST_CASE("redundant halfspaces are reported") {
  std::vector<UnitVector> normals{UnitVector(axis(2, 0)), UnitVector(axis(2, 0, -1)), UnitVector(axis(2, 1)),
                                  UnitVector(axis(2, 1, -1)), UnitVector::normalize(Vec::Ones(2))};
  const HPolytope p(2, normals, {0.5, 0.5, 0.5, 0.5, 2.0});
  const FacetComplex fc = build_facet_complex(p);
  REQUIRE(fc.redundant.size() == 1);
  CHECK(fc.redundant[0] == 4);
  CHECK(fc.facet_areas[4] == 0.0);
  CHECK(fc.volume == doctest::Approx(1.0));
}

TEST_CASE("construction errors") {
  SUBCASE("unbounded") {
    const HPolytope p(2, {UnitVector(axis(2, 0)), UnitVector(axis(2, 1)), UnitVector(axis(2, 0, -1))}, {1, 1, 1});
    CHECK_THROWS_AS(build_facet_complex(p), Error);
    try {
      build_facet_complex(p);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnboundedBody);
    }
  }
  SUBCASE("dimension cap") {
    try {
      build_facet_complex(oracle::cube(5));
      FAIL("expected DimensionUnsupported");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionUnsupported);
    }
  }
  SUBCASE("degenerate") {
    try {
      build_facet_complex(oracle::cube(2, 1e-7));
      FAIL("expected DegenerateBody");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateBody);
    }
  }
  SUBCASE("non-unit normal") { CHECK_THROWS_AS(UnitVector(Vec::Ones(2)), Error); }
  SUBCASE("nonpositive support") {
    CHECK_THROWS_AS(HPolytope(2, {UnitVector(axis(2, 0)), UnitVector(axis(2, 0, -1))}, {1.0, 0.0}), Error);
  }
}

TEST_CASE("Hausdorff distance examples") {
  const HPolytope a = oracle::cube(2, 0.5);
  const HPolytope b = oracle::cube(2, 1.0);
  CHECK(hausdorff_distance(a, a, 1e-9).upper_bound <= 1e-9);
  const HausdorffResult r = hausdorff_distance(a, b, 1e-9);
  CHECK(r.value <= std::sqrt(2.0) / 2 + 1e-12);
  CHECK(r.upper_bound >= std::sqrt(2.0) / 2 - 1e-12);
  CHECK(r.upper_bound - r.value <= 1e-9);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-8));

  const HPolytope oct = regular_octagon(0.5);
  Vec z(2);
  z << 0.01, -0.02;
  const HausdorffResult t = hausdorff_distance(oct, translate(oct, z), 1e-10);
  CHECK(t.value == doctest::Approx(z.norm()).epsilon(1e-8));
}

TEST_CASE("Hausdorff budget exhaustion is reported") {
  try {
    hausdorff_distance(oracle::cube(3), oracle::cube(3, 0.7), 1e-12, 10);
    FAIL("expected ToleranceUnreachable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ToleranceUnreachable);
  }
}

TEST_CASE("Hausdorff distance is a metric on a fixed set") {
  std::mt19937_64 rng(3);
  const double tol = 1e-7;
  std::vector<HPolytope> bodies;
  for (int i = 0; i < 4; ++i) bodies.push_back(oracle::random_symmetric_body(2, 3, rng));
  for (const HPolytope& p : bodies) {
    for (const HPolytope& q : bodies) {
      const double pq = hausdorff_distance(p, q, tol).value;
      const double qp = hausdorff_distance(q, p, tol).value;
      CHECK(std::abs(pq - qp) <= tol);
      for (const HPolytope& r : bodies) {
        CHECK(hausdorff_distance(p, r, tol).value <= pq + hausdorff_distance(q, r, tol).value + 3 * tol);
      }
    }
  }
}

TEST_CASE("support function is R-Lipschitz on the sphere") {
  std::mt19937_64 rng(19);
  for (int n = 2; n <= 3; ++n) {
    const HPolytope p = oracle::random_symmetric_body(n, 4, rng);
    const FacetComplex fc = build_facet_complex(p);
    const double r = radii_and_centroid(p, fc).circumradius_o;
    for (int i = 0; i < 10000; ++i) {
      const Vec u = oracle::random_unit(n, rng);
      const Vec v = oracle::random_unit(n, rng);
      CHECK_LE(std::abs(support_eval(fc, u) - support_eval(fc, v)), r * (u - v).norm() + 1e-12);
    }
  }
}

TEST_CASE("radii and centroid") {
  for (int n = 2; n <= 4; ++n) {
    const BodyMetrics m = radii_and_centroid(oracle::cube(n));
    CHECK(m.inradius_o == doctest::Approx(0.5));
    CHECK(m.circumradius_o == doctest::Approx(std::sqrt(n) / 2));
    CHECK(m.centroid.norm() <= 1e-12);
  }
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10; ++i) {
    // B2-symmetric octagon: axis supports a, diagonal supports b
    std::uniform_real_distribution<double> u(0.8, 1.3);
    const double a = 1.0, b = u(rng);
    std::vector<UnitVector> normals;
    std::vector<double> h;
    for (int k = 0; k < 8; ++k) {
      normals.emplace_back(polar(k * std::numbers::pi / 4));
      h.push_back(k % 2 == 0 ? a : b);
    }
    const BodyMetrics m = radii_and_centroid(HPolytope(2, normals, h));
    CHECK(m.centroid.norm() <= 1e-9);
    CHECK(m.inradius_o <= m.circumradius_o);
  }
}

TEST_CASE("inradius lower bound on centred bodies") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int n = 2; n <= 3; ++n) {
    for (int i = 0; i < 100; ++i) {
      const HPolytope p = oracle::random_symmetric_body(n, 2 + i % 5, rng);
      const FacetComplex fc = build_facet_complex(p);
      const BodyMetrics m = radii_and_centroid(p, fc);
      REQUIRE(m.centroid.norm() <= 1e-9);
      const double bound = std::pow(n, n / 2.0) / std::pow(5.0, n) * fc.volume / std::pow(m.circumradius_o, n - 1);
      CHECK(m.inradius_o >= bound);
      ++checked;
    }
  }
  CHECK(checked == 200);
}

TEST_CASE("direct sums") {
  const HPolytope seg = oracle::cube(1);
  const Mat id = Mat::Identity(2, 2);
  const HPolytope sq = direct_sum(seg, id.col(0), seg, id.col(1));
  CHECK(volume(sq) == doctest::Approx(1.0));
  CHECK(hausdorff_distance(sq, oracle::cube(2), 1e-10).upper_bound <= 1e-10);

  const double a = 0.7, b = 1.9;
  const HPolytope rect = direct_sum(oracle::cube(1, a), id.col(0), oracle::cube(1, b), id.col(1));
  CHECK(volume(rect) == doctest::Approx(4 * a * b));

  const Mat id3 = Mat::Identity(3, 3);
  const HPolytope prism = direct_sum(regular_octagon(0.5), id3.leftCols(2), oracle::cube(1, 0.25), id3.col(2));
  CHECK(volume(prism) == doctest::Approx(volume(regular_octagon(0.5)) * 0.5).epsilon(1e-10));

  Vec skew(2);
  skew << 1.0, 0.1;
  try {
    direct_sum(seg, id.col(0), seg, skew.normalized());
    FAIL("expected SubspacesNotOrthogonal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SubspacesNotOrthogonal);
  }
}

TEST_CASE("gauge of the difference body") {
  CHECK(norm_in_difference_body(Vec::Zero(3), oracle::cube(3)) == doctest::Approx(0.0));
  CHECK(norm_in_difference_body(axis(3, 0), oracle::cube(3)) == doctest::Approx(1.0));
  const double a = 0.3, b = 1.1;
  Vec x(2);
  x << a, b;
  CHECK(norm_in_difference_body(x, oracle::box({a, b})) == doctest::Approx(0.5));
  // symmetric q: gauge of q - q is half the gauge of q
  const HPolytope oct = regular_octagon(0.5);
  const Vec y = polar(0.3) * 0.2;
  double gauge = 0.0;
  for (std::size_t i = 0; i < oct.size(); ++i) gauge = std::max(gauge, oct.normal(i).dot(y) / oct.support(i));
  CHECK(norm_in_difference_body(y, oct) == doctest::Approx(gauge / 2));
}

TEST_CASE("polytope from vertices round trip") {
  std::vector<Vec> verts;
  for (int k = 0; k < 6; ++k) verts.push_back(polar(k * std::numbers::pi / 3 + 0.1));
  const HPolytope p = polytope_from_vertices(2, verts);
  CHECK(volume(p) == doctest::Approx(oracle::shoelace(verts)).epsilon(1e-12));
  CHECK(contains_points(p, verts));
  std::vector<Vec> outside{polar(0.1) * 1.01};
  CHECK_FALSE(contains_points(p, outside));
}
