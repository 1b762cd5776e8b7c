#include "doctest.h"

#include <cmath>

#include "qhd/asymptotic.hpp"
#include "qhd/catalog.hpp"
#include "qhd/domains.hpp"

using namespace qhd;

namespace {

Vec v2(double a, double b) { return (Vec(2) << a, b).finished(); }
Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

Mat linear_part(const ProjMap& g) {
  const int n = g.size() - 1;
  return g.matrix().topLeftCorner(n, n) / g.matrix()(n, n);
}

}  // namespace

TEST_CASE("asymptotic cone of the quadrant and the parabola") {
  const AsymptoticCone q = asymptotic_cone(orthant(2));
  CHECK(q.intrinsic_dim == 2);
  CHECK(q.contains(v2(1, 1)));
  CHECK(q.contains(v2(1, 0)));
  CHECK(q.contains(v2(0, 3)));
  CHECK_FALSE(q.contains(v2(-1, 0.1)));
  CHECK_FALSE(q.contains(v2(0.2, -1)));

  const AsymptoticCone p = asymptotic_cone(parabola());
  CHECK(p.intrinsic_dim == 1);
  CHECK(std::abs(std::abs(p.span(1, 0)) - 1.0) < 1e-6);
  CHECK(p.contains(v2(0, 1)));
  CHECK_FALSE(p.contains(v2(0.01, 1)));
  CHECK_FALSE(p.contains(v2(0, -1)));
}

TEST_CASE("asymptotic cone of type (xi) matches x2 x3 >= x4^2") {
  const CatalogEntry e = catalog_get("xi");
  const AsymptoticCone ac = asymptotic_cone(e.domain);
  CHECK(ac.intrinsic_dim == 3);
  Rng rng(4);
  int checked = 0, bad = 0;
  for (int i = 0; i < 400; ++i) {
    Vec u = random_unit(rng, 4);
    u(0) = 0.0;
    u.normalize();
    const double margin = u(1) * u(2) - u(3) * u(3);
    if (std::abs(margin) < 1e-2 || std::abs(u(1)) < 1e-2 || std::abs(u(2)) < 1e-2) continue;
    const bool oracle = margin > 0.0 && u(1) > 0.0 && u(2) > 0.0;
    ++checked;
    if (ac.contains(u) != oracle) ++bad;
  }
  CHECK(checked > 100);
  CHECK(bad == 0);
  // Any horizontal component leaves the cone.
  CHECK_FALSE(ac.contains((Vec(4) << 0.05, 1, 1, 0).finished().normalized()));
}

TEST_CASE("leaf_and_cone_point examples") {
  const ConvexDomain par = parabola();
  const Leaf a = leaf_and_cone_point(par, asymptotic_cone(par), v2(0, 1));
  CHECK(a.cone_point.norm() < 1e-6);
  CHECK(a.certified);
  CHECK((a.offset - v2(0, 1)).norm() < 1e-6);

  const ConvexDomain quad = orthant(2);
  const Leaf b = leaf_and_cone_point(quad, asymptotic_cone(quad), v2(1, 1));
  CHECK(b.cone_point.norm() < 1e-6);

  const CatalogEntry iv = catalog_get("iv");
  const Leaf c = leaf_and_cone_point(iv.domain, asymptotic_cone(iv.domain), v3(0, 0, 1));
  CHECK(c.cone_point.norm() < 1e-6);

  CHECK_THROWS_AS(leaf_and_cone_point(ball(Vec::Zero(2), 1.0), asymptotic_cone(ball(Vec::Zero(2), 1.0)),
                                      v2(0, 0)),
                  Error);
}

TEST_CASE("extreme points are cone points") {
  Rng rng(6);
  for (const char* id : {"iii", "ii", "v"}) {
    const CatalogEntry e = catalog_get(id);
    const ExtremeConeReport r = extreme_equals_conepoints(e.domain, asymptotic_cone(e.domain), 200, rng);
    CHECK_MESSAGE(r.disagreements.empty(), std::string(id));
    CHECK(r.samples > 0);
    CHECK(r.extreme == r.cone_points);
  }
}

TEST_CASE("parabola: the open vertical ray above an extreme point is interior") {
  Rng rng(2);
  const ConvexDomain par = parabola();
  const AcFaceReport r = corollary_acface_checks(par, asymptotic_cone(par), rng);
  CHECK(r.applicable);
  CHECK(r.interior_failures == 0);
  CHECK_FALSE(corollary_acface_checks(orthant(2), asymptotic_cone(orthant(2)), rng).applicable);
}

TEST_CASE("AC membership does not depend on the basepoint") {
  Rng rng(8);
  for (const char* id : {"iii", "v", "xi"}) {
    const CatalogEntry e = catalog_get(id);
    const AsymptoticCone ref = asymptotic_cone(e.domain);
    std::vector<Vec> grid;
    for (int i = 0; i < 60; ++i) grid.push_back(random_unit(rng, e.dim));
    for (int i = 0; i < 20; ++i) grid.push_back(ref.sample_interior_direction(rng));
    const std::vector<Vec> bases = sample_interior(e.domain, rng, 5, 3.0);
    for (const Vec& b : bases) {
      const AsymptoticCone other = asymptotic_cone(e.domain.with_basepoint(b));
      CHECK(other.intrinsic_dim == ref.intrinsic_dim);
      int bad = 0;
      for (const Vec& u : grid)
        if (other.contains(u) != ref.contains(u)) ++bad;
      CHECK_MESSAGE(bad == 0, std::string(id));
    }
  }
}

TEST_CASE("AC is invariant under linear parts of generators") {
  Rng rng(10);
  for (const char* id : {"ii", "iii", "iv", "xi", "xiii"}) {
    const CatalogEntry e = catalog_get(id);
    const AsymptoticCone ac = asymptotic_cone(e.domain);
    for (const ProjMap& g : e.generators.gens) {
      const Mat l = linear_part(g);
      for (int i = 0; i < 5; ++i) {
        const Vec u = ac.sample_interior_direction(rng);
        CHECK_MESSAGE(ac.contains((l * u).normalized()), std::string(id));
      }
      CHECK_FALSE(ac.contains(-(l * ac.central).normalized()));
    }
  }
}

TEST_CASE("leaves are parallel and end at extreme points") {
  Rng rng(12);
  for (const char* id : {"iii", "iv", "v"}) {
    const CatalogEntry e = catalog_get(id);
    const AsymptoticCone ac = asymptotic_cone(e.domain);
    for (const Vec& x : sample_interior(e.domain, rng, 6, 2.0)) {
      const Leaf leaf = leaf_and_cone_point(e.domain, ac, x);
      CHECK(leaf.certified);
      CHECK((leaf.cone_point + leaf.offset - x).norm() < 1e-9 * std::max(1.0, x.norm()));
      CHECK(ac.contains(leaf.offset.normalized()));
      CHECK_MESSAGE(is_extreme(e.domain, leaf.cone_point), std::string(id));
    }
  }
}
