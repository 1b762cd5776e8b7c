#include "doctest.h"

#include <cmath>
#include <vector>

#include "qhd/domains.hpp"
#include "qhd/dynamics.hpp"

using namespace qhd;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

ConvexDomain disk() { return ball(Vec::Zero(2), 1.0); }

ProjMap rotation(double a) {
  Mat m = Mat::Identity(3, 3);
  m(0, 0) = std::cos(a);
  m(0, 1) = -std::sin(a);
  m(1, 0) = std::sin(a);
  m(1, 1) = std::cos(a);
  return normalize(m);
}

// (x, y) -> (x + t, y + 2tx + t^2) preserves {y > x^2}.
ProjMap shear(double t) {
  Mat m = Mat::Identity(3, 3);
  m(0, 2) = t;
  m(1, 0) = 2.0 * t;
  m(1, 2) = t * t;
  return normalize(m);
}

ProjMap diag(double a, double b, double c) { return normalize(Mat(v3(a, b, c).asDiagonal())); }

}  // namespace

TEST_CASE("classify_isometry examples") {
  const IsometryClass rot = classify_isometry(disk(), rotation(0.7));
  CHECK(rot.kind == IsometryKind::kElliptic);
  REQUIRE(rot.fixed_interior_point.has_value());
  CHECK(rot.fixed_interior_point->norm() < 1e-9);

  const IsometryClass hyp = classify_isometry(projective_triangle(), diag(2, 2, 0.25));
  CHECK(hyp.kind == IsometryKind::kHyperbolic);
  CHECK(hyp.lambda_max == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(hyp.lambda_min == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(hyp.translation_length() == doctest::Approx(std::log(8.0)).epsilon(1e-12));

  CHECK(classify_isometry(parabola(), shear(1.0)).kind == IsometryKind::kParabolic);

  CHECK_THROWS_AS(classify_isometry(disk(), diag(2, 1, 1)), Error);
}

TEST_CASE("classification is conjugation invariant") {
  Mat h = Mat::Identity(3, 3);
  h(0, 1) = 0.4;
  h(2, 0) = 0.2;
  h(1, 2) = -0.3;
  const ProjMap hp = normalize(h);
  const Mat hinv = h.inverse();
  struct Case {
    ConvexDomain d;
    ProjMap g;
  };
  const std::vector<Case> cases = {{disk(), rotation(1.1)},
                                   {projective_triangle(), diag(2, 2, 0.25)},
                                   {parabola(), shear(0.5)}};
  for (const Case& c : cases) {
    const IsometryClass a = classify_isometry(c.d, c.g);
    const ConvexDomain moved = projective_image(c.d, hp);
    const IsometryClass b = classify_isometry(moved, normalize(h * c.g.matrix() * hinv));
    CHECK(a.kind == b.kind);
    CHECK(a.lambda_max == doctest::Approx(b.lambda_max).epsilon(1e-8));
    CHECK(a.lambda_min == doctest::Approx(b.lambda_min).epsilon(1e-8));
  }
}

TEST_CASE("classification is inverse symmetric") {
  const ProjMap g = diag(3, 1, 0.5);
  const IsometryClass a = classify_isometry(projective_triangle(), g);
  const IsometryClass b = classify_isometry(projective_triangle(), g.inverse());
  CHECK(a.kind == IsometryKind::kHyperbolic);
  CHECK(b.kind == IsometryKind::kHyperbolic);
  CHECK(a.lambda_max == doctest::Approx(1.0 / b.lambda_min).epsilon(1e-10));
  CHECK(a.lambda_min == doctest::Approx(1.0 / b.lambda_max).epsilon(1e-10));
}

TEST_CASE("horospheres of the disk") {
  // H: x = 1 tangent at p = (1, 0).
  const HorosphereSpec spec = make_horosphere_spec(disk(), Hyperplane(v3(1, 0, -1)), ProjPoint(v3(1, 0, 1)));
  const HorosphereLeaf leaf = horosphere_through(disk(), spec, v2(-0.3, 0), 60);
  REQUIRE_FALSE(leaf.points.empty());
  CHECK((leaf.points.front() - v2(-0.3, 0)).norm() < 1e-9);
  // Klein model: horocycles at p are the conics x^2 + y^2 - 1 + k (x - 1)^2 = 0
  // of the pencil spanned by the circle and the double tangent line.
  auto k_of = [](const Vec& q) { return (1.0 - q.squaredNorm()) / ((q(0) - 1.0) * (q(0) - 1.0)); };
  const double k = k_of(leaf.points.front());
  CHECK(k == doctest::Approx(0.91 / 1.69));
  for (const Vec& q : leaf.points) CHECK(std::abs(k_of(q) - k) < 1e-6 * std::max(1.0, k));
}

TEST_CASE("horosphere leaves are consistent (foliation)") {
  const ConvexDomain tri = projective_triangle();
  const HorosphereSpec spec = make_horosphere_spec(tri, Hyperplane(v3(0, 1, 0)), ProjPoint(v3(1, 0, 0)));
  const HorosphereLeaf leaf = horosphere_through(tri, spec, v2(1, 1), 30);
  REQUIRE(leaf.points.size() > 5);
  CHECK((leaf.points.front() - v2(1, 1)).norm() < 1e-9);
  for (std::size_t i = 1; i < leaf.points.size(); i += 5) {
    if (!tri.contains(leaf.points[i])) continue;
    const HorosphereLeaf again = horosphere_through(tri, spec, leaf.points[i], 2);
    CHECK(again.s == doctest::Approx(leaf.s).epsilon(1e-6));
  }
}

TEST_CASE("horosphere invariance") {
  Rng rng(3);
  // Parabola: p = [0:1:0] at infinity, H = the line at infinity.
  const HorosphereSpec par = make_horosphere_spec(parabola(), Hyperplane(v3(0, 0, 1)), ProjPoint(v3(0, 1, 0)));
  const HorosphereInvariance a = horosphere_invariance_check(parabola(), par, shear(0.8), rng);
  CHECK(a.leaf_preserving);
  CHECK(a.leaf_deviation < 1e-6);

  const ConvexDomain tri = projective_triangle();
  const HorosphereSpec spec = make_horosphere_spec(tri, Hyperplane(v3(0, 1, 0)), ProjPoint(v3(1, 0, 0)));
  // Leaves for (y = 0, [1:0:0]) are the rays x / y = s, which diag(2, 2, 1/4) fixes.
  CHECK(horosphere_invariance_check(tri, spec, diag(2, 2, 0.25), rng).leaf_preserving);
  // For (x = 0, origin) they are the lines x = 1 / s, moved by x -> 8x.
  const HorosphereSpec origin = make_horosphere_spec(tri, Hyperplane(v3(1, 0, 0)), ProjPoint(v3(0, 0, 1)));
  const HorosphereInvariance b = horosphere_invariance_check(tri, origin, diag(2, 2, 0.25), rng);
  CHECK(b.foliation_preserving);
  CHECK_FALSE(b.leaf_preserving);
  CHECK(b.leaf_deviation > 0.1);

  const HorosphereInvariance c = horosphere_invariance_check(tri, spec, normalize(Mat::Identity(3, 3)), rng);
  CHECK(c.leaf_preserving);
  CHECK(c.leaf_deviation < 1e-9);

  Mat swap = Mat::Zero(3, 3);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = 1.0;
  CHECK_THROWS_AS(horosphere_invariance_check(tri, spec, normalize(swap), rng), Error);
}

TEST_CASE("make_horosphere_spec rejects non-supporting data") {
  CHECK_THROWS_AS(make_horosphere_spec(disk(), Hyperplane(v3(1, 0, -0.5)), ProjPoint(v3(0.5, 0, 1))), Error);
  CHECK_THROWS_AS(make_horosphere_spec(disk(), Hyperplane(v3(1, 0, -1)), ProjPoint(v3(0, 1, 1))), Error);
}

TEST_CASE("one-parameter group from a hyperbolic sequence") {
  std::vector<ProjMap> gs;
  std::vector<double> ts;
  for (int n = 1; n <= 12; ++n) {
    gs.push_back(diag(std::pow(2.0, n), 1.0, std::pow(2.0, -n)));
    ts.push_back(n);
  }
  const OneParameterGroup g = one_param_from_sequence(gs, ts);
  Mat want = Mat::Zero(3, 3);
  want(0, 0) = 1.0 / std::sqrt(2.0);
  want(2, 2) = -1.0 / std::sqrt(2.0);
  CHECK(std::min((g.eta - want).norm(), (g.eta + want).norm()) < 1e-9);

  Rng rng(1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const double t = u(rng), s = u(rng);
    CHECK((g.at(t) * g.at(s) - g.at(t + s)).norm() < 1e-9);
  }
}

TEST_CASE("one-parameter group from unipotent shears is nilpotent") {
  std::vector<ProjMap> gs;
  std::vector<double> ts;
  for (int n = 1; n <= 16; ++n) {
    gs.push_back(shear(8.0 * n));
    ts.push_back(8.0 * n);
  }
  const OneParameterGroup g = one_param_from_sequence(gs, ts);
  CHECK(g.eta.norm() == doctest::Approx(1.0));
  CHECK((g.eta * g.eta * g.eta).norm() < 1e-6);
}

TEST_CASE("one-parameter group of the identity sequence is an error") {
  std::vector<ProjMap> gs(8, normalize(Mat::Identity(3, 3)));
  std::vector<double> ts{1, 2, 3, 4, 5, 6, 7, 8};
  CHECK_THROWS_AS(one_param_from_sequence(gs, ts), Error);
}

TEST_CASE("osculating ellipsoids") {
  const OsculationReport d = osculating_ellipsoid_check(disk(), v2(0, -1));
  CHECK(d.osculating);
  CHECK(d.limit == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(osculating_ellipsoid_check(parabola(), v2(0, 0)).osculating);
  const OsculationReport t = osculating_ellipsoid_check(affine_triangle(), v2(0.5, 0));
  CHECK_FALSE(t.osculating);
}
