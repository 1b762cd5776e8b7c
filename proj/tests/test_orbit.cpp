#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "qhd/catalog.hpp"
#include "qhd/domains.hpp"
#include "qhd/orbit.hpp"

using namespace qhd;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }

ProjMap diag(std::initializer_list<double> entries) {
  Vec v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (double e : entries) v(i++) = e;
  return normalize(Mat(v.asDiagonal()));
}

GeneratorSet quadrant_dilations() {
  return GeneratorSet::with_inverses({diag({2, 1, 1}), diag({1, 2, 1})}, {"a", "b"});
}

// Smallest projective distance from p to any cluster member.
double nearest_member(const LimitSetEstimate& est, const ProjPoint& p, const ConvexDomain& d) {
  double best = 1e300;
  for (const LimitCluster& c : est.clusters) {
    for (const Vec& m : c.members) best = std::min(best, from_bounded_chart(d, m).distance(p));
  }
  return best;
}

}  // namespace

TEST_CASE("orbit of the quadrant under dyadic dilations") {
  const OrbitReport r = orbit(orthant(2), quadrant_dilations(), v2(1, 1), 3);
  CHECK(r.violations == 0);
  std::set<std::pair<int, int>> got;
  for (const OrbitPoint& p : r.points) {
    const Vec x = p.point.affine();
    const int a = static_cast<int>(std::lround(std::log2(x(0))));
    const int b = static_cast<int>(std::lround(std::log2(x(1))));
    CHECK(std::abs(x(0) - std::ldexp(1.0, a)) < 1e-12 * x(0));
    CHECK(std::abs(x(1) - std::ldexp(1.0, b)) < 1e-12 * x(1));
    CHECK(std::abs(a) + std::abs(b) <= 3);
    got.insert({a, b});
  }
  // |a| + |b| <= 3 has 1 + 4 + 8 + 12 lattice points.
  CHECK(got.size() == 25);
  CHECK(r.points.size() == 25);
}

TEST_CASE("orbit edge cases") {
  const OrbitReport none = orbit(ball(Vec::Zero(2), 1.0), GeneratorSet{}, v2(0.2, 0.1), 4);
  REQUIRE(none.points.size() == 1);
  CHECK((none.points[0].point.affine() - v2(0.2, 0.1)).norm() < 1e-15);

  const GeneratorSet axis = GeneratorSet::with_inverses({diag({2, 2, 0.25})}, {"g"});
  const OrbitReport line = orbit(projective_triangle(), axis, v2(1, 1), 5);
  CHECK(line.points.size() == 11);
  for (const OrbitPoint& p : line.points) {
    const Vec x = p.point.affine();
    CHECK(std::abs(x(0) - x(1)) < 1e-9 * x(0));
  }

  CHECK_THROWS_AS(orbit(orthant(2), quadrant_dilations(), v2(-1, 1), 2), Error);
}

TEST_CASE("orbit size is monotone in the word length") {
  const GeneratorSet gens = catalog_get("iii").generators;
  std::size_t last = 0;
  for (int len = 0; len <= 3; ++len) {
    const OrbitReport r = orbit(parabola(), gens, v2(0, 1), len);
    if (len == 0) CHECK(r.points.size() == 1);
    CHECK(r.points.size() >= last);
    CHECK(r.violations == 0);
    last = r.points.size();
  }
}

TEST_CASE("limit set of the ray under halving") {
  const ConvexDomain ray = orthant(1);
  const GeneratorSet gens = GeneratorSet::with_inverses({diag({0.5, 1})}, {"h"});
  const LimitSetEstimate est = limit_set_estimate(ray, gens, Vec::Ones(1), 200);
  CHECK(est.violations == 0);
  bool zero = false;
  for (const LimitCluster& c : est.clusters) {
    if (!c.representative.at_infinity() && std::abs(c.representative.affine()(0)) < 1e-5) zero = true;
  }
  CHECK(zero);
  CHECK(invariance_check(est, diag({3, 1})) < 1e-6);

  Rng rng(1);
  const HullReport hull = hull_closure_check(ray, est, 200, rng, {Vec::Ones(1)});
  CHECK(hull.fraction == doctest::Approx(1.0));
}

TEST_CASE("limit set of the quadrant under diag(2,1/2)") {
  const ConvexDomain q = orthant(2);
  const GeneratorSet gens = GeneratorSet::with_inverses({diag({2, 0.5, 1})}, {"g"});
  const LimitSetEstimate est = limit_set_estimate(q, gens, v2(1, 1), 400);
  REQUIRE_FALSE(est.clusters.empty());
  // Every cluster sits on a side of the triangle x y z = 0.
  for (const LimitCluster& c : est.clusters) {
    CHECK(c.representative.coords().cwiseAbs().minCoeff() < 1e-5);
  }
  CHECK(invariance_check(est, diag({3, 1.0 / 3, 1})) < 1e-6);
}

TEST_CASE("limit set of the disk under a rotation is empty") {
  Mat r = Mat::Identity(3, 3);
  r(0, 0) = r(1, 1) = std::cos(0.3);
  r(0, 1) = -std::sin(0.3);
  r(1, 0) = std::sin(0.3);
  const GeneratorSet gens = GeneratorSet::with_inverses({normalize(r)}, {"r"});
  const LimitSetEstimate est = limit_set_estimate(ball(Vec::Zero(2), 1.0), gens, v2(0.3, 0), 500);
  CHECK(est.clusters.empty());
  CHECK(est.budget > 0);
}

TEST_CASE("triangle under the full diagonal group") {
  const ConvexDomain tri = projective_triangle();
  // 4141 = 2 L^2 + 2 L + 1 closes the breadth-first level L = 45, keeping the
  // explored set symmetric.
  const LimitSetEstimate est = limit_set_estimate(tri, quadrant_dilations(), v2(1, 1), 4141);
  CHECK(est.violations == 0);
  for (const Vec& vertex : {Vec::Unit(3, 0), Vec::Unit(3, 1), Vec::Unit(3, 2)}) {
    CHECK(nearest_member(est, ProjPoint(vertex), tri) < 1e-5);
  }
  Mat swap = Mat::Zero(3, 3);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = 1.0;
  CHECK(invariance_check(est, normalize(swap)) < 1e-6);

  Rng rng(3);
  const HullReport hull = hull_closure_check(tri, est, 300, rng);
  CHECK(hull.fraction == doctest::Approx(1.0));
}

TEST_CASE("parabola hull covers the domain") {
  const CatalogEntry e = catalog_get("iii");
  const LimitSetEstimate est = limit_set_estimate(e.domain, e.generators, e.domain.basepoint(), 60000);
  REQUIRE_FALSE(est.clusters.empty());
  Rng rng(4);
  const HullReport hull = hull_closure_check(e.domain, est, 300, rng, {(Vec(2) << 0, 1).finished()});
  CHECK(hull.fraction >= 0.99);
}

TEST_CASE("every cluster carries a converging witness") {
  const CatalogEntry e = catalog_get("v");
  const LimitSetEstimate est = limit_set_estimate(e.domain, e.generators, e.domain.basepoint(), 2000);
  REQUIRE_FALSE(est.clusters.empty());
  for (const LimitCluster& c : est.clusters) {
    REQUIRE_FALSE(c.witness.empty());
    REQUIRE(c.witness.size() == c.witness_distances.size());
    for (std::size_t i = 1; i < c.witness.size(); ++i) {
      CHECK(c.witness_distances[i] <= c.witness_distances[i - 1]);
      CHECK(c.witness[i].size() >= c.witness[i - 1].size());
    }
    CHECK(c.witness_distances.back() < est.epsilon);
  }
}

TEST_CASE("limit set estimates are conjugation equivariant") {
  Mat h = Mat::Identity(3, 3);
  h(0, 1) = 0.3;
  h(2, 0) = 0.1;
  const ProjMap hp = normalize(h);
  const Mat hinv = h.inverse();
  const ConvexDomain tri = projective_triangle();
  const GeneratorSet gens = GeneratorSet::with_inverses({diag({16, 1, 1}), diag({1, 16, 1})}, {"a", "b"});
  GeneratorSet moved = gens;
  for (ProjMap& g : moved.gens) g = normalize(h * g.matrix() * hinv);
  const ConvexDomain image = projective_image(tri, hp);
  const Vec x0 = v2(1, 1);
  const LimitSetEstimate a = limit_set_estimate(tri, gens, x0, 800);
  const LimitSetEstimate b = limit_set_estimate(image, moved, apply(hp, ProjPoint::from_affine(x0)).affine(), 800);
  REQUIRE_FALSE(a.clusters.empty());
  CHECK(a.clusters.size() == b.clusters.size());
  for (const LimitCluster& c : a.clusters) {
    CHECK(nearest_member(b, apply(hp, c.representative), image) < 1e-6);
  }
}

TEST_CASE("cone points of cone entries lie in the limit set") {
  int cones = 0;
  for (const CatalogEntry& e : catalog_list()) {
    if (!e.flags.cone) continue;
    ++cones;
    REQUIRE(e.cone_point.has_value());
    const LimitSetEstimate est = limit_set_estimate(e.domain, coarse_generators(e), e.domain.basepoint(), 60000);
    CHECK(est.violations == 0);
    CHECK_MESSAGE(nearest_member(est, ProjPoint::from_affine(*e.cone_point), e.domain) < 1e-5, e.id);
  }
  CHECK(cones == 11);
}

TEST_CASE("homogeneous entries have a nonempty limit set") {
  for (const CatalogEntry& e : catalog_list()) {
    if (!e.flags.homogeneous) continue;
    const LimitSetEstimate est = limit_set_estimate(e.domain, coarse_generators(e), e.domain.basepoint(), 5000);
    CHECK_MESSAGE(!est.clusters.empty(), e.id);
  }
}

TEST_CASE("coarse generators stay well conditioned") {
  for (const CatalogEntry& e : catalog_list()) {
    const GeneratorSet g = coarse_generators(e);
    CHECK(g.size() == 2 * static_cast<int>(e.families.size()));
    for (const ProjMap& m : g.gens) {
      Eigen::JacobiSVD<Mat> svd(m.matrix());
      const Vec& s = svd.singularValues();
      CHECK(s[0] <= 1e3 * s[s.size() - 1] * (1 + 1e-12));
    }
  }
}
