#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "qhd/projective.hpp"

using namespace qhd;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

Mat diag3(double a, double b, double c) { return v3(a, b, c).asDiagonal(); }

// Points of the line through e1 and e2 at affine parameter t: [1 : t : 0].
ProjPoint on_line(double t) { return ProjPoint(v3(1.0, t, 0.0)); }

}  // namespace

TEST_CASE("ProjPoint canonical representative") {
  const ProjPoint p(v3(-2.0, 4.0, 0.0));
  CHECK(p.coords().norm() == doctest::Approx(1.0));
  CHECK(p.coords()(0) > 0.0);
  CHECK(p.distance(ProjPoint(v3(1.0, -2.0, 0.0))) < 1e-15);
  CHECK_THROWS_AS(ProjPoint(Vec::Zero(3)), Error);
}

TEST_CASE("normalize: identity, projection, diag(2,2,1/4)") {
  const ProjMap id = normalize(Mat::Identity(3, 3));
  CHECK((id.matrix() - Mat::Identity(3, 3) / std::sqrt(3.0)).norm() < 1e-15);
  CHECK(id.rank() == 3);
  CHECK(id.kernel_basis().empty());

  const ProjMap pr = normalize(diag3(1, 0, 0));
  CHECK(pr.rank() == 1);
  REQUIRE(pr.kernel_basis().size() == 2);
  REQUIRE(pr.range_basis().size() == 1);
  CHECK(pr.range_basis()[0].distance(ProjPoint(v3(1, 0, 0))) < 1e-12);
  for (const ProjPoint& k : pr.kernel_basis()) CHECK(std::abs(k.coords()(0)) < 1e-12);

  const ProjMap g = normalize(diag3(2, 2, 0.25));
  CHECK(g.rank() == 3);
  CHECK(g.kernel_basis().empty());
  CHECK(g.matrix().norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(normalize(Mat::Zero(3, 3)), Error);
}

TEST_CASE("normalize: sign canonicalization") {
  const ProjMap a = normalize(-diag3(3, 1, 2));
  const ProjMap b = normalize(diag3(3, 1, 2));
  CHECK((a.matrix() - b.matrix()).norm() < 1e-15);
  CHECK(a.matrix()(0, 0) > 0.0);
}

TEST_CASE("apply") {
  const ProjMap id = normalize(Mat::Identity(3, 3));
  const ProjPoint p(v3(1, 2, 3));
  CHECK(apply(id, p).distance(p) < 1e-15);

  const ProjMap pr = normalize(diag3(1, 0, 0));
  CHECK_THROWS_AS(apply(pr, ProjPoint(v3(0, 1, 0))), Error);
  CHECK(apply(pr, ProjPoint(v3(1, 1, 0))).distance(ProjPoint(v3(1, 0, 0))) < 1e-15);
  try {
    apply(pr, ProjPoint(v3(0, 1, 0)));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kKernelHit);
  }
}

TEST_CASE("limit_of_sequence") {
  SUBCASE("scaling to a projection") {
    std::vector<ProjMap> seq;
    for (int i = 1; i <= 40; ++i) seq.push_back(normalize(diag3(1, std::pow(2.0, -i), std::pow(2.0, -i))));
    const SequenceLimit lim = limit_of_sequence(seq);
    CHECK(lim.limit.rank() == 1);
    CHECK(lim.limit.range_basis()[0].distance(ProjPoint(v3(1, 0, 0))) < 1e-9);
  }
  SUBCASE("constant sequence") {
    const ProjMap g = normalize(diag3(2, 1, 0.5));
    std::vector<ProjMap> seq(12, g);
    CHECK(limit_of_sequence(seq).limit.distance(g) < 1e-12);
  }
  SUBCASE("triangle automorphisms diag(2^i, 1, 2^-i)") {
    std::vector<ProjMap> seq;
    for (int i = 1; i <= 40; ++i) seq.push_back(normalize(diag3(std::pow(2.0, i), 1, std::pow(2.0, -i))));
    const SequenceLimit lim = limit_of_sequence(seq);
    CHECK(lim.limit.rank() == 1);
    CHECK(lim.limit.range_basis()[0].distance(ProjPoint(v3(1, 0, 0))) < 1e-9);
    // Hand limit: the normalized matrices tend to diag(1, 0, 0).
    CHECK((lim.limit.matrix() - diag3(1, 0, 0)).norm() < 1e-9);
    for (const ProjPoint& k : lim.limit.kernel_basis()) CHECK(std::abs(k.coords()(0)) < 1e-9);
  }
  SUBCASE("oscillating tail has no limit") {
    std::vector<ProjMap> seq;
    for (int i = 0; i < 40; ++i) seq.push_back(normalize(i % 2 ? diag3(1, 2, 3) : diag3(3, 2, 1)));
    CHECK_THROWS_AS(limit_of_sequence(seq), Error);
  }
}

TEST_CASE("embed_affine and is_affine") {
  const Mat rot = (Mat(2, 2) << 0, -1, 1, 0).finished();
  const AffineMap translation(Mat::Identity(2, 2), (Vec(2) << 1, 0).finished());
  const Hyperplane inf = Hyperplane::at_infinity(2);
  CHECK(is_affine(embed_affine(translation), inf));
  CHECK(is_affine(embed_affine(AffineMap(rot, Vec::Zero(2))), inf));
  CHECK(is_affine(normalize(diag3(2, 2, 0.25)), inf));
  Mat proj = Mat::Identity(3, 3);
  proj(2, 0) = 1.0;
  CHECK_FALSE(is_affine(normalize(proj), inf));
}

TEST_CASE("embed_affine is a homomorphism up to scale") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    Mat la(3, 3), lb(3, 3);
    Vec ta(3), tb(3);
    for (int i = 0; i < 9; ++i) {
      la(i / 3, i % 3) = n01(rng) + (i % 4 == 0 ? 3.0 : 0.0);
      lb(i / 3, i % 3) = n01(rng) + (i % 4 == 0 ? 3.0 : 0.0);
    }
    for (int i = 0; i < 3; ++i) {
      ta(i) = n01(rng);
      tb(i) = n01(rng);
    }
    const AffineMap a(la, ta), b(lb, tb);
    const ProjMap lhs = embed_affine(a.compose(b));
    const ProjMap rhs = normalize(embed_affine(a).matrix() * embed_affine(b).matrix());
    CHECK(lhs.distance(rhs) < 1e-10);
  }
}

TEST_CASE("AffineMap rejects singular linear parts") {
  CHECK_THROWS_AS(AffineMap(Mat::Zero(2, 2), Vec::Zero(2)), Error);
}

TEST_CASE("cross ratio examples") {
  // Oracle: the quotient with signed parameters along the line.
  auto quotient = [](double s1, double p1, double p2, double s2) {
    return std::abs((p2 - s1) * (s2 - p1) / ((p1 - s1) * (s2 - p2)));
  };
  CHECK(cross_ratio(on_line(0), on_line(1.0 / 3), on_line(2.0 / 3), on_line(1)) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(quotient(0, 1.0 / 3, 2.0 / 3, 1) == doctest::Approx(4.0));
  CHECK(cross_ratio(on_line(-1), on_line(0.3), on_line(0.3), on_line(1)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  for (double r : {0.1, 0.5, 0.9}) {
    CHECK(cross_ratio(on_line(-1), on_line(0), on_line(r), on_line(1)) ==
          doctest::Approx((1 + r) / (1 - r)).epsilon(1e-12));
  }
}

TEST_CASE("cross ratio errors") {
  CHECK_THROWS_AS(cross_ratio(ProjPoint(v3(1, 0, 0)), ProjPoint(v3(0, 1, 0)),
                              ProjPoint(v3(0, 0, 1)), ProjPoint(v3(1, 1, 1))),
                  Error);
  CHECK_THROWS_AS(cross_ratio(on_line(0), on_line(0), on_line(0.5), on_line(1)), Error);
}

TEST_CASE("cross ratio is projectively invariant") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    Mat g(3, 3);
    for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = n01(rng);
    if (std::abs(g.determinant()) < 0.1) continue;
    std::vector<double> t{u(rng), u(rng), u(rng), u(rng)};
    std::sort(t.begin(), t.end());
    if (t[1] - t[0] < 1e-2 || t[3] - t[2] < 1e-2) continue;
    const ProjMap gp = normalize(g);
    const double before = cross_ratio(on_line(t[0]), on_line(t[1]), on_line(t[2]), on_line(t[3]));
    const double after = cross_ratio(apply(gp, on_line(t[0])), apply(gp, on_line(t[1])),
                                     apply(gp, on_line(t[2])), apply(gp, on_line(t[3])));
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("rank plus kernel dimension is n+1") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int rank = 1; rank <= 4; ++rank) {
    Mat a(4, rank), b(rank, 4);
    for (int i = 0; i < a.size(); ++i) a(i % 4, i / 4) = n01(rng);
    for (int i = 0; i < b.size(); ++i) b(i % rank, i / rank) = n01(rng);
    const ProjMap g = normalize(a * b);
    CHECK(g.rank() == rank);
    CHECK(g.rank() + static_cast<int>(g.kernel_basis().size()) == 4);
    CHECK(static_cast<int>(g.range_basis().size()) == rank);
  }
}
