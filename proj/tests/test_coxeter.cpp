#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logmink/coxeter.hpp"
#include "oracles.hpp"

using namespace logmink;
using oracle::axis;
using oracle::polar;

namespace {

ReflectionGroup product_group() {
  Vec m(3);
  m << std::cos(3 * std::numbers::pi / 4), std::sin(3 * std::numbers::pi / 4), 0.0;
  return generate_group({UnitVector(axis(3, 0)), UnitVector(m), UnitVector(axis(3, 2))});
}

// Largest principal-angle sine between two subspaces of equal dimension.
double subspace_gap(const Mat& a, const Mat& b) { return (a - b * (b.transpose() * a)).norm(); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(oracle::coordinate_group(2).order() == 4);
  CHECK(oracle::dihedral8().order() == 8);
  CHECK(oracle::coordinate_group(3).order() == 8);
  CHECK(product_group().order() == 16);
}

TEST_CASE("group elements are orthogonal and closed") {
  for (const ReflectionGroup& g : {oracle::dihedral8(), product_group()}) {
    const int n = g.dim;
    CHECK((g.elements[0] - Mat::Identity(n, n)).norm() < 1e-12);
    for (const UnitVector& u : g.generators) {
      const Mat r = reflection_matrix(u.coords());
      CHECK((r * r - Mat::Identity(n, n)).norm() < 1e-10);
      CHECK(r.determinant() == doctest::Approx(-1.0));
    }
    for (const Mat& a : g.elements) {
      CHECK((a.transpose() * a - Mat::Identity(n, n)).norm() < 1e-10);
      for (const Mat& b : g.elements) {
        bool found = false;
        for (const Mat& c : g.elements) found = found || (a * b - c).norm() < 1e-10;
        CHECK(found);
      }
    }
    CHECK(fixed_point_defect(g) < 1e-8);
    // regenerating from the element list gives the same group
    CHECK(close_under_products(n, g.elements).size() == g.order());
  }
}

TEST_CASE("irrational mirror angle exceeds the order cap") {
  const double angle = std::numbers::pi / 2 + std::sqrt(2.0);
  CHECK(kind_of([&] { generate_group({UnitVector(axis(2, 0)), UnitVector(polar(angle))}); }) ==
        ErrorKind::OrderCapExceeded);
  CHECK(kind_of([&] { generate_group({UnitVector(axis(2, 0)), UnitVector(polar(std::numbers::pi / 7))}, 10); }) ==
        ErrorKind::OrderCapExceeded);
}

TEST_CASE("non-spanning mirrors are rejected") {
  CHECK(kind_of([&] { generate_group({UnitVector(axis(3, 0)), UnitVector(axis(3, 1))}); }) ==
        ErrorKind::NormalsDegenerate);
  CHECK(kind_of([&] { generate_group({UnitVector(axis(2, 0)), UnitVector(axis(2, 0, -1))}); }) ==
        ErrorKind::NormalsDegenerate);
}

TEST_CASE("invariant decompositions") {
  SUBCASE("coordinate group n=3") {
    const InvariantDecomposition d = invariant_decomposition(oracle::coordinate_group(3));
    REQUIRE(d.count() == 3);
    for (const Mat& b : d.subspaces) {
      CHECK(b.cols() == 1);
      CHECK(b.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
    }
  }
  SUBCASE("dihedral") {
    const InvariantDecomposition d = invariant_decomposition(oracle::dihedral8());
    CHECK(d.irreducible());
    CHECK(d.dims() == std::vector<int>{2});
  }
  SUBCASE("product") {
    const InvariantDecomposition d = invariant_decomposition(product_group());
    REQUIRE(d.count() == 2);
    std::vector<int> dims = d.dims();
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{1, 2});
    for (const Mat& b : d.subspaces) {
      if (b.cols() == 1) CHECK(std::abs(b(2, 0)) == doctest::Approx(1.0));
      if (b.cols() == 2) CHECK(b.row(2).norm() < 1e-10);
    }
  }
}

TEST_CASE("decomposition is seed independent and orthogonal") {
  for (const ReflectionGroup& g : {oracle::coordinate_group(3), product_group(), oracle::dihedral8()}) {
    const InvariantDecomposition a = invariant_decomposition(g);
    DecompositionOptions opts;
    opts.seed = 12345;
    const InvariantDecomposition b = invariant_decomposition(g, opts);
    REQUIRE(a.count() == b.count());
    int total = 0;
    for (std::size_t i = 0; i < a.count(); ++i) {
      total += a.dims()[i];
      bool matched = false;
      for (std::size_t j = 0; j < b.count(); ++j) {
        if (a.subspaces[i].cols() == b.subspaces[j].cols())
          matched = matched || subspace_gap(a.subspaces[i], b.subspaces[j]) < 1e-7;
      }
      CHECK(matched);
      for (std::size_t j = i + 1; j < a.count(); ++j)
        CHECK((a.subspaces[i].transpose() * a.subspaces[j]).norm() < 1e-10);
      for (const Mat& m : g.elements) CHECK(subspace_gap(m * a.subspaces[i], a.subspaces[i]) < 1e-8);
    }
    CHECK(total == g.dim);
  }
}

TEST_CASE("enumerated invariant subspaces") {
  CHECK(enumerate_invariant_subspaces(invariant_decomposition(oracle::dihedral8())).empty());
  CHECK(enumerate_invariant_subspaces(invariant_decomposition(product_group())).size() == 2);
  const auto subs = enumerate_invariant_subspaces(invariant_decomposition(oracle::coordinate_group(3)));
  REQUIRE(subs.size() == 6);
  int lines = 0, planes = 0;
  for (const InvariantSubspace& s : subs) {
    CHECK(s.basis.cols() == s.dim);
    CHECK((s.basis.transpose() * s.basis - Mat::Identity(s.dim, s.dim)).norm() < 1e-12);
    lines += s.dim == 1;
    planes += s.dim == 2;
  }
  CHECK(lines == 3);
  CHECK(planes == 3);
}

TEST_CASE("symmetrize measure examples") {
  const ReflectionGroup flips = oracle::coordinate_group(2);
  const DiscreteSphericalMeasure one(2, {{axis(2, 0), 1.0}});
  const DiscreteSphericalMeasure s = symmetrize_measure(one, flips);
  REQUIRE(s.size() == 2);
  CHECK(s[s.find(axis(2, 0))].w == doctest::Approx(0.5));
  CHECK(s[s.find(axis(2, 0, -1))].w == doctest::Approx(0.5));

  const DiscreteSphericalMeasure diag(2, {{Vec::Ones(2).normalized(), 1.0}});
  const DiscreteSphericalMeasure d8 = symmetrize_measure(diag, oracle::dihedral8());
  REQUIRE(d8.size() == 4);  // the diagonal's orbit under I2(4) has 4 points
  for (const Atom& a : d8.atoms()) CHECK(a.w == doctest::Approx(0.25));

  const DiscreteSphericalMeasure off(2, {{polar(0.3), 1.0}});
  const DiscreteSphericalMeasure o8 = symmetrize_measure(off, oracle::dihedral8());
  REQUIRE(o8.size() == 8);
  for (const Atom& a : o8.atoms()) CHECK(a.w == doctest::Approx(0.125));
  CHECK(measure_invariance_defect(o8, oracle::dihedral8()) < 1e-12);
  CHECK(std::isinf(measure_invariance_defect(off, oracle::dihedral8())));
}

TEST_CASE("symmetrize measure is an idempotent projection") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  for (const ReflectionGroup& g : {oracle::dihedral8(), product_group(), oracle::coordinate_group(3)}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Atom> atoms;
      for (int k = 0; k < 4; ++k) atoms.push_back({oracle::random_unit(g.dim, rng), w(rng)});
      const DiscreteSphericalMeasure mu(g.dim, atoms);
      const DiscreteSphericalMeasure once = symmetrize_measure(mu, g);
      const DiscreteSphericalMeasure twice = symmetrize_measure(once, g);
      CHECK(once.mass() == doctest::Approx(mu.mass()).epsilon(1e-12));
      CHECK(measure_invariance_defect(once, g) < 1e-10);
      REQUIRE(once.size() == twice.size());
      for (const Atom& a : once.atoms()) {
        const std::size_t j = twice.find(a.u);
        REQUIRE(j < twice.size());
        CHECK(std::abs(twice[j].w - a.w) < 1e-12);
      }
    }
  }
}

TEST_CASE("symmetrize supports") {
  const HPolytope sq(2, {UnitVector(axis(2, 0)), UnitVector(axis(2, 0, -1)), UnitVector(axis(2, 1)),
                         UnitVector(axis(2, 1, -1))},
                     {0.4, 0.6, 0.5, 0.5});
  const HPolytope s = symmetrize_supports(sq, oracle::coordinate_group(2));
  REQUIRE(s.size() == 4);
  for (double h : s.supports()) CHECK(h == doctest::Approx(0.5));
  CHECK(body_invariance_defect(s, build_facet_complex(s), oracle::coordinate_group(2)) < 1e-12);

  const HPolytope cube = oracle::cube(3);
  const HPolytope same = symmetrize_supports(cube, oracle::coordinate_group(3));
  for (double h : same.supports()) CHECK(h == doctest::Approx(0.5));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<double> h;
  for (int i = 0; i < 6; ++i) h.push_back(0.5 + jitter(rng));
  const HPolytope pert = cube.with_supports(h);
  const HPolytope avg = symmetrize_supports(pert, oracle::coordinate_group(3));
  for (std::size_t i = 0; i < avg.size(); ++i) {
    const int ax = [&] {
      int k = 0;
      avg.normal(i).cwiseAbs().maxCoeff(&k);
      return k;
    }();
    CHECK(avg.support(i) == doctest::Approx(0.5 * (h[2 * ax] + h[2 * ax + 1])));
  }

  // orbit completion: a single diagonal cut becomes four under sign flips
  std::vector<UnitVector> normals = cube.normals();
  normals.push_back(UnitVector::normalize(Vec::Ones(3)));
  std::vector<double> sup(6, 0.5);
  sup.push_back(0.8);
  const HPolytope cut = symmetrize_supports(HPolytope(3, normals, sup), oracle::coordinate_group(3));
  CHECK(cut.size() == 14);
}

TEST_CASE("direction permutations and orbits") {
  std::vector<Vec> dirs;
  for (int k = 0; k < 8; ++k) dirs.push_back(polar(k * std::numbers::pi / 4));
  const auto perms = direction_permutations(dirs, oracle::coordinate_group(2));
  const auto labels = orbit_labels(perms);
  CHECK(labels[0] == labels[4]);
  CHECK(labels[0] != labels[2]);
  CHECK(labels[1] == labels[3]);
  CHECK(labels[1] == labels[7]);
  CHECK(labels[0] != labels[1]);
  dirs.pop_back();
  CHECK(kind_of([&] { direction_permutations(dirs, oracle::coordinate_group(2)); }) == ErrorKind::InvalidInput);
}
