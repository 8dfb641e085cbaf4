#include <doctest.h>

#include <cmath>
#include <numbers>

#include "logmink/constructions.hpp"
#include "logmink/measures.hpp"
#include "oracles.hpp"

using namespace logmink;
using oracle::axis;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidInput;
}

// Unit square with the four corners cut at leg t, no rescaling.
HPolytope cut_square(double t) {
  std::vector<UnitVector> normals;
  std::vector<double> h;
  for (int k = 0; k < 4; ++k) {
    normals.emplace_back(oracle::polar(k * std::numbers::pi / 2));
    h.push_back(0.5);
    normals.emplace_back(oracle::polar(std::numbers::pi / 4 + k * std::numbers::pi / 2));
    h.push_back((1.0 - t) / std::sqrt(2.0));
  }
  return HPolytope(2, normals, h);
}

}  // namespace

TEST_CASE("stability constants") {
  const StabilityConstants irr = constants(3, 0.1, 0.25, true);
  CHECK(irr.branch == Branch::Irreducible);
  CHECK(irr.R0 == 3.0);
  CHECK(irr.r0 == doctest::Approx(0.36787944117144233));
  CHECK(irr.gamma0 == 1.0);
  CHECK(constants(3, 0.1, 0.25, true, 2.0).gamma0 == doctest::Approx(8.0));

  const StabilityConstants red = constants(2, 0.1, 0.25, false);
  CHECK(red.branch == Branch::Reducible);
  CHECK(red.R0 == doctest::Approx(1.6777216e11).epsilon(1e-12));
  // (2/25)(0.1/64)^4 = 0.08 * 5.9604644775390625e-12
  CHECK(red.r0 == doctest::Approx(4.76837158203125e-13).epsilon(1e-12));
  CHECK(red.r0 < red.R0);
  // (1/tau) delta^{-3n/tau} n^{12n/tau} = 4 * 1e24 * 2^96
  CHECK(std::log(red.gamma0) == doctest::Approx(std::log(4.0) + 24 * std::log(10.0) + 96 * std::log(2.0)).epsilon(1e-12));

  CHECK(kind_of([] { constants(2, 0.0, 0.25, false); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { constants(2, 0.1, 0.5, false); }) == ErrorKind::ParameterOutOfRange);
  CHECK(kind_of([] { constants(2, 0.1, 0.25, true, 0.0); }) == ErrorKind::ParameterOutOfRange);
}

TEST_CASE("non-splitting constant") {
  // (0.1 * 0.25 / 8) (2/25) (0.1/64)^8
  const double expected = 0.003125 * 0.08 * std::pow(0.0015625, 8);
  CHECK(eta_constant(2, 0.1, 0.25) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(eta_constant(2, 0.1, 0.25) == doctest::Approx(8.881784197001252e-27).epsilon(1e-12));
  for (int n = 2; n <= 4; ++n) {
    for (double tau : {0.05, 0.25, 0.45}) {
      double prev = 0.0;
      for (double delta : {0.01, 0.1, 0.2, 0.3, 0.49}) {
        const double eta = eta_constant(n, delta, tau);
        CHECK(eta < tau / (4.0 * n));
        CHECK(eta >= prev);
        // eta = (delta tau / 4n) r0 / R0
        const StabilityConstants k = constants(n, delta, tau, false);
        CHECK(eta == doctest::Approx(delta * tau / (4.0 * n) * k.r0 / k.R0).epsilon(1e-10));
        prev = eta;
      }
    }
  }
  CHECK(kind_of([] { eta_constant(2, 0.6, 0.25); }) == ErrorKind::ParameterOutOfRange);
}

TEST_CASE("chopped cube") {
  for (int n = 2; n <= 3; ++n) {
    const HPolytope c0 = chopped_cube(n, 0.0);
    CHECK(hausdorff_distance(c0, oracle::cube(n), 1e-10).upper_bound < 1e-9);
  }
  const HPolytope c = chopped_cube(2, 0.01);
  CHECK(volume(c) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(build_facet_complex(c).vertices.size() == 8);
  CHECK(chop_leg(2, 0.01) == doctest::Approx(std::sqrt(0.02)));
  // before rescaling the four corners remove 4 * t^2 / 2
  const double t = chop_leg(2, 0.01);
  CHECK(volume(cut_square(t)) == doctest::Approx(1.0 - 2 * t * t).epsilon(1e-12));
  CHECK(volume(chopped_cube(3, 1e-3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(body_invariance_defect(c, build_facet_complex(c), oracle::coordinate_group(2)) < 1e-12);

  // corner cut depth along the diagonal is t / sqrt2
  CHECK(hausdorff_distance(oracle::cube(2), cut_square(t), 1e-11).value == doctest::Approx(t / std::sqrt(2.0)).epsilon(1e-9));

  CHECK(kind_of([] { chopped_cube(2, 0.125); }) == ErrorKind::CutsOverlap);
  CHECK(kind_of([] { chopped_cube(3, 1.0 / 48); }) == ErrorKind::CutsOverlap);
  CHECK_NOTHROW(chopped_cube(3, 1.0 / 48 - 1e-6));
}

TEST_CASE("diagonal transform") {
  const UnitVector e2(axis(2, 1));
  const HPolytope sq = oracle::cube(2);
  const HPolytope id = diagonal_transform(sq, e2, 1.0);
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(id.support(i) == doctest::Approx(sq.support(i)));

  const HPolytope r = diagonal_transform(sq, e2, 2.0);
  CHECK(hausdorff_distance(r, oracle::box({1.0, 0.25}), 1e-10).upper_bound < 1e-9);
  CHECK(volume(r) == doctest::Approx(1.0));

  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    const HPolytope p = oracle::random_symmetric_body(n, 3, rng);
    const double v = volume(p);
    const UnitVector e(oracle::random_unit(n, rng));
    for (double s : {0.3, 2.0, 7.0, 40.0}) CHECK(std::abs(volume(diagonal_transform(p, e, s)) - v) < 1e-9 * v);
    CHECK(phi_s_matrix(e, 3.0).determinant() == doctest::Approx(1.0));
    CHECK((phi_s_matrix(e, 3.0) * e.coords() - std::pow(3.0, -(n - 1.0)) * e.coords()).norm() < 1e-12);
  }
}

TEST_CASE("mu zero") {
  const DiscreteSphericalMeasure m = mu_zero(UnitVector(axis(2, 0)));
  REQUIRE(m.size() == 2);
  CHECK(m.mass() == doctest::Approx(1.0));
  CHECK(m[m.find(axis(2, 0))].w == 0.5);
  CHECK(m[m.find(axis(2, 0, -1))].w == 0.5);
  const DiscreteSphericalMeasure s = symmetrize_measure(m, oracle::coordinate_group(2));
  CHECK(s.size() == 2);
  CHECK(s[s.find(axis(2, 0))].w == doctest::Approx(0.5));
}

TEST_CASE("Q_t rescaled direct sums") {
  const Mat id = Mat::Identity(2, 2);
  const HPolytope seg = oracle::cube(1);
  const HPolytope q1 = qt_construction(seg, id.col(0), seg, id.col(1), 1.0);
  CHECK(hausdorff_distance(q1, oracle::box({1.5, 1.0 / 6}), 1e-10).upper_bound < 1e-9);
  CHECK(volume(q1) == doctest::Approx(1.0).epsilon(1e-12));
  for (const Atom& a : cone_volume_measure(q1).atoms()) CHECK(a.w == doctest::Approx(0.25).epsilon(1e-12));

  const HPolytope q0 = qt_construction(seg, id.col(0), seg, id.col(1), 0.0);
  CHECK(hausdorff_distance(q0, oracle::cube(2), 1e-10).upper_bound < 1e-9);

  const Mat id3 = Mat::Identity(3, 3);
  const HPolytope m1 = oracle::cube(2);
  const HPolytope c1 = oracle::cube(1);
  const DiscreteSphericalMeasure base = cone_volume_measure(qt_construction(m1, id3.leftCols(2), c1, id3.col(2), 0.0));
  for (double t : {0.5, 1.0, 2.0, 10.0}) {
    const HPolytope q = qt_construction(m1, id3.leftCols(2), c1, id3.col(2), t);
    CHECK(volume(q) == doctest::Approx(1.0).epsilon(1e-12));
    const DiscreteSphericalMeasure v = cone_volume_measure(q);
    REQUIRE(v.size() == base.size());
    for (const Atom& a : v.atoms()) CHECK(a.w == doctest::Approx(base[base.find(a.u)].w).epsilon(1e-12));
  }
  for (double t : {1.0, 2.0, 5.0}) {
    const HPolytope q = qt_construction(seg, id.col(0), seg, id.col(1), t);
    CHECK(hausdorff_distance(oracle::cube(2), q, 1e-9).value >= t - 1e-9);
  }
  Vec skew(2);
  skew << 0.6, 0.8;
  CHECK(kind_of([&] { qt_construction(seg, id.col(0), seg, skew, 1.0); }) == ErrorKind::SubspacesNotOrthogonal);
  CHECK(kind_of([&] { qt_construction(seg, id.col(0), seg, id.col(1), -1.0); }) == ErrorKind::ParameterOutOfRange);
}
