#include "qhd/domains.hpp"

#include <cmath>

#include "qhd/lp.hpp"

namespace qhd {

Constraint linear_constraint(const Vec& normal, double offset) {
  return {[normal, offset](const Vec& x) { return normal.dot(x) + offset; },
          [normal](const Vec&) { return normal; }};
}

ConvexDomain constraint_domain(int dim, Vec basepoint, std::vector<Constraint> constraints,
                               std::string tag) {
  auto membership = [constraints](const Vec& x) {
    for (const Constraint& c : constraints) {
      if (!(c.value(x) < 0.0)) return false;
    }
    return true;
  };
  ConvexDomain d(dim, std::move(basepoint), membership, std::move(tag));
  d.set_outward_normal([constraints, dim](const Vec& p) {
    const double scale = std::max(1.0, p.norm());
    Vec sum = Vec::Zero(dim);
    double closest = std::numeric_limits<double>::infinity();
    Vec closest_normal = Vec::Zero(dim);
    for (const Constraint& c : constraints) {
      const Vec grad = c.gradient(p);
      const double gnorm = grad.norm();
      if (!(gnorm > 0.0)) continue;
      // First-order distance from p to the zero set of this constraint.
      const double dist = std::abs(c.value(p)) / gnorm;
      if (dist <= 1e-7 * scale) sum += grad / gnorm;
      if (dist < closest) {
        closest = dist;
        closest_normal = grad / gnorm;
      }
    }
    if (sum.norm() < 1e-12) return Vec(closest_normal);
    return Vec(sum.normalized());
  });
  return d;
}

ProjMap chart_from_covector(const Vec& a, const Vec& c) {
  const Eigen::Index n = a.size();
  Mat m = Mat::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = Mat::Identity(n, n);
  m.topRightCorner(n, 1) = -c;
  m.bottomLeftCorner(1, n) = a.transpose();
  m(n, n) = 1.0 - a.dot(c);
  return normalize(m);
}

ConvexDomain ball(const Vec& center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::kInvalidInput, "ball radius must be positive");
  const int n = static_cast<int>(center.size());
  Constraint c{[center, radius](const Vec& x) { return (x - center).squaredNorm() - radius * radius; },
               [center](const Vec& x) { return Vec(2.0 * (x - center)); }};
  return constraint_domain(n, center, {c}, "ball");
}

ConvexDomain polytope(const std::vector<Vec>& covectors, std::string tag) {
  if (covectors.empty()) throw Error(ErrorKind::kInvalidInput, "polytope needs inequalities");
  const int n = static_cast<int>(covectors.front().size()) - 1;
  if (n < 1) throw Error(ErrorKind::kInvalidInput, "covector too short");
  std::vector<Constraint> cs;
  // Chebyshev center: maximize r with h.(x,1) >= r |h_head|, 0 <= r <= 1,
  // x = x+ - x-.
  const int m = static_cast<int>(covectors.size());
  Mat g = Mat::Zero(m + 1, 2 * n + 1);
  Vec rhs = Vec::Zero(m + 1);
  for (int i = 0; i < m; ++i) {
    const Vec& h = covectors[static_cast<std::size_t>(i)];
    if (h.size() != n + 1) throw Error(ErrorKind::kInvalidInput, "covector size mismatch");
    const Vec head = h.head(n);
    const double norm = head.norm();
    if (!(norm > 0.0)) throw Error(ErrorKind::kInvalidInput, "degenerate inequality");
    g.block(i, 0, 1, n) = -head.transpose();
    g.block(i, n, 1, n) = head.transpose();
    g(i, 2 * n) = norm;
    rhs[i] = h[n];
    cs.push_back(linear_constraint(-head, -h[n]));
  }
  g(m, 2 * n) = 1.0;
  rhs[m] = 1.0;
  Vec obj = Vec::Zero(2 * n + 1);
  obj[2 * n] = 1.0;
  const lp::Result fit = lp::maximize_inequalities(g, rhs, obj);
  if (fit.status != lp::Status::kOptimal || fit.objective <= 1e-12) {
    throw Error(ErrorKind::kInvalidInput, "polytope has empty interior");
  }
  const Vec center = fit.x.head(n) - fit.x.segment(n, n);
  return constraint_domain(n, center, std::move(cs), std::move(tag));
}

ConvexDomain orthant(int n) {
  std::vector<Constraint> cs;
  for (int i = 0; i < n; ++i) cs.push_back(linear_constraint(-Vec::Unit(n, i), 0.0));
  ConvexDomain d = constraint_domain(n, Vec::Ones(n), std::move(cs), "orthant");
  d.set_bounded_chart(chart_from_covector(Vec::Ones(n), Vec::Zero(n)));
  return d;
}

ConvexDomain projective_triangle() {
  ConvexDomain d = orthant(2);
  return d.with_basepoint(Vec::Ones(2));
}

ConvexDomain affine_triangle() {
  Vec h1(3), h2(3), h3(3);
  h1 << 1, 0, 0;
  h2 << 0, 1, 0;
  h3 << -1, -1, 1;
  return polytope({h1, h2, h3}, "triangle");
}

ConvexDomain parabola() {
  Constraint c{[](const Vec& x) { return x[0] * x[0] - x[1]; },
               [](const Vec& x) {
                 Vec g(2);
                 g << 2.0 * x[0], -1.0;
                 return g;
               }};
  Vec base(2);
  base << 0.0, 1.0;
  ConvexDomain d = constraint_domain(2, base, {c}, "parabola");
  d.set_bounded_chart(chart_from_covector(Vec::Unit(2, 1), Vec::Zero(2)));
  return d;
}

ConvexDomain slab() {
  Vec base(2);
  base << 0.0, 0.5;
  return constraint_domain(2, base,
                           {linear_constraint(-Vec::Unit(2, 1), 0.0),
                            linear_constraint(Vec::Unit(2, 1), -1.0)},
                           "slab");
}

ConvexDomain intersection(const std::vector<ConvexDomain>& parts, std::string tag) {
  if (parts.empty()) throw Error(ErrorKind::kInvalidInput, "empty intersection");
  const int n = parts.front().dim();
  for (const ConvexDomain& p : parts) {
    if (p.dim() != n) throw Error(ErrorKind::kInvalidInput, "intersection dimension mismatch");
  }
  auto membership = [parts](const Vec& x) {
    for (const ConvexDomain& p : parts) {
      if (!p.contains(x)) return false;
    }
    return true;
  };
  // The first basepoint that all parts accept.
  for (const ConvexDomain& p : parts) {
    if (membership(p.basepoint())) return ConvexDomain(n, p.basepoint(), membership, std::move(tag));
  }
  throw Error(ErrorKind::kNotInterior, "no part basepoint lies in the intersection");
}

ConvexDomain product(const ConvexDomain& a, const ConvexDomain& b, std::string tag) {
  const int na = a.dim();
  const int nb = b.dim();
  auto membership = [a, b, na, nb](const Vec& x) {
    return a.contains(x.head(na)) && b.contains(x.segment(na, nb));
  };
  Vec base(na + nb);
  base << a.basepoint(), b.basepoint();
  ConvexDomain d(na + nb, base, membership, std::move(tag));
  if (a.has_outward_normal() && b.has_outward_normal()) {
    d.set_outward_normal([a, b, na, nb](const Vec& p) {
      const Vec pa = p.head(na);
      const Vec pb = p.segment(na, nb);
      const bool on_a = on_boundary(a, pa);
      const bool on_b = on_boundary(b, pb);
      Vec out = Vec::Zero(na + nb);
      if (on_a || !on_b) out.head(na) = a.outward_normal(pa);
      if (on_b || !on_a) out.segment(na, nb) = b.outward_normal(pb);
      return Vec(out.normalized());
    });
  }
  return d;
}

}  // namespace qhd
