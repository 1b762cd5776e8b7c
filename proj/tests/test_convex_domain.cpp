#include "doctest.h"

#include <cmath>

#include "qhd/convex_domain.hpp"
#include "qhd/domains.hpp"

using namespace qhd;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

ConvexDomain disk() { return ball(Vec::Zero(2), 1.0); }

}  // namespace

TEST_CASE("boundary_ray examples") {
  RayHit h = boundary_ray(disk(), v2(0, 0), v2(1, 0));
  REQUIRE_FALSE(h.at_infinity);
  CHECK((h.point - v2(1, 0)).norm() < 1e-12);

  h = boundary_ray(orthant(2), v2(1, 1), v2(1, 0));
  CHECK(h.at_infinity);

  h = boundary_ray(parabola(), v2(0, 1), v2(0, -1));
  REQUIRE_FALSE(h.at_infinity);
  CHECK(h.point.norm() < 1e-12);

  CHECK_THROWS_AS(boundary_ray(disk(), v2(2, 0), v2(1, 0)), Error);
}

TEST_CASE("boundary_ray precision on a ball of radius 3") {
  const ConvexDomain b = ball(Vec::Zero(2), 3.0);
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Vec u = random_unit(rng, 2);
    const RayHit h = boundary_ray(b, Vec::Zero(2), u);
    CHECK(std::abs(h.t - 3.0) < 1e-12 * 4.0);
  }
}

TEST_CASE("face_of and is_extreme") {
  const ConvexDomain tri = affine_triangle();
  const FaceDescriptor edge = face_of(tri, v2(0.5, 0));
  CHECK(edge.dim == 1);
  REQUIRE(edge.directions.size() == 1);
  CHECK(std::abs(edge.directions[0](1)) < 1e-6);
  CHECK(face_of(tri, v2(0, 0)).dim == 0);
  CHECK(is_extreme(tri, v2(0, 0)));
  CHECK_FALSE(is_extreme(tri, v2(0.5, 0)));

  CHECK(face_of(disk(), v2(1, 0)).dim == 0);
  CHECK(face_of(disk(), v2(std::sqrt(0.5), -std::sqrt(0.5))).dim == 0);
  CHECK(face_of(orthant(2), v2(1, 0)).dim == 1);
  for (double t : {-2.0, 0.0, 0.7, 5.0}) CHECK(is_extreme(parabola(), v2(t, t * t)));

  CHECK_THROWS_AS(face_of(disk(), v2(0.5, 0)), Error);
}

TEST_CASE("face_of is consistent across points of a face") {
  const ConvexDomain tri = affine_triangle();
  const FaceDescriptor a = face_of(tri, v2(0.3, 0.7));
  const FaceDescriptor b = face_of(tri, v2(0.8, 0.2));
  CHECK(a.dim == 1);
  CHECK(b.dim == 1);
  CHECK(std::abs(std::abs(a.directions[0].dot(b.directions[0])) - 1.0) < 1e-6);
  // The second point lies on the affine span of the first face.
  const Vec d = v2(0.8, 0.2) - v2(0.3, 0.7);
  CHECK((d - d.dot(a.directions[0]) * a.directions[0]).norm() < 1e-6);
}

TEST_CASE("supporting_hyperplane examples and separation") {
  const Hyperplane hd = supporting_hyperplane(disk(), v2(1, 0));
  // x = 1. Covectors carry the canonical sign, so only the zero set and the
  // one-sidedness are fixed.
  CHECK(std::abs(hd.evaluate_affine(v2(1, 0.3))) < 1e-9);
  CHECK(std::abs(hd.evaluate_affine(v2(0, 0))) > 0.5);

  const Hyperplane hp = supporting_hyperplane(parabola(), v2(0, 0));
  CHECK(std::abs(hp.evaluate_affine(v2(5, 0))) < 1e-9);

  const Hyperplane hq = supporting_hyperplane(orthant(2), v2(1, 0));
  CHECK(std::abs(hq.evaluate_affine(v2(7, 0))) < 1e-9);

  Rng rng(9);
  for (const ConvexDomain& d : {disk(), parabola(), orthant(2), affine_triangle()}) {
    for (const Vec& p : sample_boundary(d, rng, 5)) {
      const Hyperplane h = supporting_hyperplane(d, p);
      const double scale = h.covector().head(2).norm();
      CHECK(std::abs(h.evaluate_affine(p)) < 1e-7 * scale);
      const double side = h.evaluate_affine(d.basepoint()) > 0.0 ? 1.0 : -1.0;
      int bad = 0;
      for (const Vec& x : sample_interior(d, rng, 1000, 6.0))
        if (!(side * h.evaluate_affine(x) > 0.0)) ++bad;
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("is_conic_face") {
  const ConvexDomain tri = affine_triangle();
  const ConicFaceResult vertex = is_conic_face(tri, face_of(tri, v2(0, 0)));
  CHECK(vertex.conic);
  CHECK(vertex.chain.size() == 2);
  CHECK(is_conic_face(tri, face_of(tri, v2(0.5, 0))).conic);
  CHECK(is_conic_face(orthant(2), face_of(orthant(2), v2(2, 0))).conic);
  const ConicFaceResult round = is_conic_face(disk(), face_of(disk(), v2(1, 0)));
  CHECK_FALSE(round.conic);
  CHECK_FALSE(round.reason.empty());
}

TEST_CASE("convex_sum: segment and point give a triangle") {
  Mat basis = Mat::Zero(3, 2);
  basis(0, 0) = 1.0;
  basis(2, 1) = 1.0;
  const ConvexDomain unit = polytope({v2(1, 0), v2(-1, 1)}, "segment");
  const EmbeddedDomain segment{basis, unit};
  const EmbeddedDomain apex = EmbeddedDomain::point(v3(0, 1, 1));
  const ConvexDomain sum = convex_sum(segment, apex);
  const ConvexDomain tri = affine_triangle();
  Rng rng(2);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec x = v2(u(rng), u(rng));
    if (std::abs(x(0)) < 1e-9 || std::abs(x(1)) < 1e-9 || std::abs(x.sum() - 1) < 1e-9) continue;
    if (sum.contains(x) != tri.contains(x)) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("convex_sum: parabola and a point at infinity") {
  Mat basis = Mat::Zero(4, 3);
  basis(0, 0) = 1.0;
  basis(1, 1) = 1.0;
  basis(3, 2) = 1.0;
  const EmbeddedDomain par{basis, parabola()};
  const EmbeddedDomain c = EmbeddedDomain::point((Vec(4) << 0, 0, 1, 0).finished());
  const ConvexDomain sum = convex_sum(par, c);
  // Brute-force oracle: points (1-s) a + s c in the chart x4 = 1 are a + (0,0,t).
  Rng rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec x = v3(u(rng), u(rng) + 2.0, u(rng));
    const bool oracle = x(1) > x(0) * x(0) && x(2) > 0.0;
    if (std::abs(x(1) - x(0) * x(0)) < 1e-9 || std::abs(x(2)) < 1e-9) continue;
    if (sum.contains(x) != oracle) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("convex_sum rejects overlapping supports") {
  Mat basis = Mat::Zero(3, 2);
  basis(0, 0) = 1.0;
  basis(2, 1) = 1.0;
  const EmbeddedDomain segment{basis, polytope({v2(1, 0), v2(-1, 1)})};
  CHECK_THROWS_AS(convex_sum(segment, EmbeddedDomain::point(v3(0.5, 0, 1))), Error);
}

TEST_CASE("is_properly_convex") {
  Rng rng(1);
  CHECK(is_properly_convex(orthant(2), 200, rng));
  CHECK_FALSE(is_properly_convex(slab(), 200, rng));
  CHECK(is_properly_convex(parabola(), 200, rng));
  CHECK(is_properly_convex(disk(), 200, rng));
}

TEST_CASE("segment convexity on 1000 pairs") {
  Rng rng(12);
  for (const ConvexDomain& d : {disk(), parabola(), orthant(3), affine_triangle()}) {
    const std::vector<Vec> pts = sample_interior(d, rng, 2000, 8.0);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const Vec& a = pts[2 * i];
      const Vec& b = pts[2 * i + 1];
      for (int k = 1; k <= 50; ++k) {
        const double s = k / 51.0;
        if (!d.contains((1 - s) * a + s * b)) ++bad;
      }
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("domains are open at the basepoint") {
  Rng rng(3);
  for (const ConvexDomain& d : {disk(), parabola(), orthant(2), affine_triangle(), slab()}) {
    for (int i = 0; i < 100; ++i) CHECK(d.contains(d.basepoint() + 1e-6 * random_unit(rng, d.dim())));
  }
}

TEST_CASE("bounded chart round trip") {
  const ConvexDomain q = projective_triangle();
  Rng rng(8);
  for (const Vec& x : sample_interior(q, rng, 50, 5.0)) {
    const Vec y = to_bounded_chart(q, ProjPoint::from_affine(x));
    CHECK((from_bounded_chart(q, y).affine() - x).norm() < 1e-9 * std::max(1.0, x.norm()));
    CHECK(bounded_realization(q).contains(y));
  }
}
