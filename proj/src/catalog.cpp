#include "qhd/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qhd/domains.hpp"
#include "qhd/hilbert.hpp"
#include "qhd/parallel.hpp"
#include "qhd/search.hpp"

namespace qhd {

namespace {

constexpr double kConeTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();

Vec unit(int n, int i) { return Vec::Unit(n, i); }

Vec ones_at(int n, std::initializer_list<int> idx) {
  Vec v = Vec::Zero(n);
  for (int i : idx) v[i] = 1.0;
  return v;
}

// ---- one-parameter families ------------------------------------------------

// diag(2^(t w_i / 8)). The rate keeps the sampled maps at t = 64 well
// conditioned.
AffineFamily dilation(int n, std::vector<double> weights, std::string name) {
  return {std::move(name), [n, weights](double t) {
            Vec diag(n);
            for (int i = 0; i < n; ++i) diag[i] = std::exp2(t * weights[static_cast<std::size_t>(i)] / 8.0);
            return AffineMap(diag.asDiagonal().toDenseMatrix(), Vec::Zero(n));
          }};
}

std::vector<double> weight(int n, std::initializer_list<std::pair<int, double>> w) {
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (auto [i, v] : w) out[static_cast<std::size_t>(i)] = v;
  return out;
}

// x_i -> x_i + t, x_j -> x_j + 2 t x_i + t^2.
AffineFamily parabolic_shear(int n, int i, int j, std::string name) {
  return {std::move(name), [n, i, j](double t) {
            Mat l = Mat::Identity(n, n);
            l(j, i) = 2.0 * t;
            Vec b = Vec::Zero(n);
            b[i] = t;
            b[j] = t * t;
            return AffineMap(l, b);
          }};
}

AffineFamily rotation(int n, int i, int j, std::string name) {
  return {std::move(name), [n, i, j](double t) {
            Mat l = Mat::Identity(n, n);
            l(i, i) = std::cos(t);
            l(i, j) = -std::sin(t);
            l(j, i) = std::sin(t);
            l(j, j) = std::cos(t);
            return AffineMap(l, Vec::Zero(n));
          }};
}

// Lorentz boost in the (i, k) plane with rapidity t / 8, k the cone axis.
AffineFamily boost(int n, int i, int k, std::string name) {
  return {std::move(name), [n, i, k](double t) {
            const double s = t / 8.0;
            Mat l = Mat::Identity(n, n);
            l(i, i) = std::cosh(s);
            l(i, k) = std::sinh(s);
            l(k, i) = std::sinh(s);
            l(k, k) = std::cosh(s);
            return AffineMap(l, Vec::Zero(n));
          }};
}

// x2 -> x2 + 2 t x4 + t^2 x3, x4 -> x4 + t x3 (zero-based 1, 3, 2).
AffineFamily cone_shear_4(std::string name) {
  return {std::move(name), [](double t) {
            Mat l = Mat::Identity(4, 4);
            l(1, 3) = 2.0 * t;
            l(1, 2) = t * t;
            l(3, 2) = t;
            return AffineMap(l, Vec::Zero(4));
          }};
}

// ---- constraints ------------------------------------------------------------

Constraint positive(int n, int i) { return linear_constraint(-unit(n, i), 0.0); }

// sum_{i in is} x_i^2 - x_j.
Constraint paraboloid(int n, std::vector<int> is, int j) {
  return {[is, j](const Vec& x) {
            double s = -x[j];
            for (int i : is) s += x[i] * x[i];
            return s;
          },
          [n, is, j](const Vec& x) {
            Vec g = Vec::Zero(n);
            for (int i : is) g[i] = 2.0 * x[i];
            g[j] = -1.0;
            return g;
          }};
}

// ||x_is||_p - x_k.
Constraint round_cone(int n, std::vector<int> is, int k, double p) {
  auto norm = [is, p](const Vec& x) {
    double s = 0.0;
    for (int i : is) s += std::pow(std::abs(x[i]), p);
    return std::pow(s, 1.0 / p);
  };
  return {[norm, k](const Vec& x) { return norm(x) - x[k]; },
          [n, norm, is, k, p](const Vec& x) {
            Vec g = Vec::Zero(n);
            const double r = norm(x);
            if (r > 0.0) {
              for (int i : is) {
                g[i] = std::copysign(std::pow(std::abs(x[i]) / r, p - 1.0), x[i]);
              }
            }
            g[k] = -1.0;
            return g;
          }};
}

// x1^2 + x4^2 / x3 - x2, on x3 > 0.
Constraint quadratic_over_linear() {
  return {[](const Vec& x) {
            if (!(x[2] > 0.0)) return 1.0;
            return x[0] * x[0] + x[3] * x[3] / x[2] - x[1];
          },
          [](const Vec& x) {
            Vec g(4);
            const double x3 = std::max(x[2], 1e-300);
            g << 2.0 * x[0], -1.0, -x[3] * x[3] / (x3 * x3), 2.0 * x[3] / x3;
            return g;
          }};
}

// ---- known asymptotic cones -------------------------------------------------

Mat coordinate_span(int n, const std::vector<int>& idx) {
  Mat s = Mat::Zero(n, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) s(idx[c], static_cast<Eigen::Index>(c)) = 1.0;
  return s;
}

bool off_span_zero(const Vec& u, const std::vector<int>& idx) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end() &&
        std::abs(u[i]) > kConeTol) {
      return false;
    }
  }
  return true;
}

double half_normal(Rng& rng) {
  std::normal_distribution<double> g;
  return std::abs(g(rng)) + 0.05;
}

// {u : u_i >= 0 for i in idx, u_j = 0 otherwise}.
KnownCone orthant_cone(int n, std::vector<int> idx) {
  KnownCone k;
  k.dim = static_cast<int>(idx.size());
  k.span = coordinate_span(n, idx);
  k.contains = [idx](const Vec& u) {
    for (int i : idx) {
      if (u[i] < -kConeTol) return false;
    }
    return off_span_zero(u, idx);
  };
  k.sample = [n, idx](Rng& rng) {
    Vec u = Vec::Zero(n);
    for (int i : idx) u[i] = half_normal(rng);
    return Vec(u.normalized());
  };
  return k;
}

// {u : u_axis >= ||u_base||_p, u_i >= 0 for i in extra, u_j = 0 otherwise}.
KnownCone round_known(int n, std::vector<int> base, int axis, std::vector<int> extra, double p) {
  std::vector<int> idx = base;
  idx.push_back(axis);
  idx.insert(idx.end(), extra.begin(), extra.end());
  std::sort(idx.begin(), idx.end());
  auto norm = [base, p](const Vec& u) {
    double s = 0.0;
    for (int i : base) s += std::pow(std::abs(u[i]), p);
    return std::pow(s, 1.0 / p);
  };
  KnownCone k;
  k.dim = static_cast<int>(idx.size());
  k.span = coordinate_span(n, idx);
  k.contains = [norm, axis, extra, idx](const Vec& u) {
    if (u[axis] < norm(u) - kConeTol) return false;
    for (int i : extra) {
      if (u[i] < -kConeTol) return false;
    }
    return off_span_zero(u, idx);
  };
  k.sample = [n, base, axis, extra, norm](Rng& rng) {
    std::uniform_real_distribution<double> box(-1.0, 1.0);
    Vec u = Vec::Zero(n);
    do {
      for (int i : base) u[i] = box(rng);
    } while (norm(u) > 0.9);
    u[axis] = 1.0;
    for (int i : extra) u[i] = half_normal(rng);
    return Vec(u.normalized());
  };
  return k;
}

// {u : u1 = 0, u2 u3 >= u4^2, u2, u3 >= 0}.
KnownCone xi_known() {
  KnownCone k;
  k.dim = 3;
  k.span = coordinate_span(4, {1, 2, 3});
  k.contains = [](const Vec& u) {
    return std::abs(u[0]) <= kConeTol && u[1] >= -kConeTol && u[2] >= -kConeTol &&
           u[1] * u[2] >= u[3] * u[3] - kConeTol;
  };
  k.sample = [](Rng& rng) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vec u = Vec::Zero(4);
    u[1] = half_normal(rng);
    u[2] = half_normal(rng);
    u[3] = 0.9 * unif(rng) * std::sqrt(u[1] * u[2]);
    return Vec(u.normalized());
  };
  return k;
}

// A cone with apex at the origin is its own asymptotic cone.
KnownCone self_cone(const ConvexDomain& cone) {
  KnownCone k;
  k.dim = cone.dim();
  k.span = Mat::Identity(cone.dim(), cone.dim());
  k.contains = [cone](const Vec& u) { return cone.contains(u) || in_closure(cone, u, kConeTol); };
  k.sample = [cone](Rng& rng) {
    const Vec x = sample_interior(cone, rng, 1, 2.0).front();
    return Vec(x.normalized());
  };
  return k;
}

// ---- entry assembly ---------------------------------------------------------

GeneratorSet discretize(const std::vector<AffineFamily>& families) {
  GeneratorSet g;
  for (const AffineFamily& f : families) {
    g.add_family([f](double t) { return embed_affine(f.at(t)); }, f.name);
  }
  return g;
}

struct Spec {
  std::string id;
  std::string description;
  int n;
  Vec base;
  std::vector<Constraint> constraints;
  Vec chart;  // covector a of the bounded chart
  std::vector<AffineFamily> families;
  CatalogFlags flags;
  KnownCone known;
  std::vector<double> contraction;  // diagonal of the witness step
};

CatalogEntry assemble(Spec s) {
  ConvexDomain d = constraint_domain(s.n, s.base, std::move(s.constraints), "(" + s.id + ")");
  d.set_bounded_chart(chart_from_covector(s.chart, Vec::Zero(s.n)));
  Vec diag = Eigen::Map<const Vec>(s.contraction.data(), s.n);
  LimitWitness w{Vec::Zero(s.n), AffineMap(diag.asDiagonal().toDenseMatrix(), Vec::Zero(s.n)), 60};
  std::optional<Vec> cp;
  if (s.flags.cone) cp = Vec::Zero(s.n);
  GeneratorSet gens = discretize(s.families);
  return CatalogEntry{s.id, s.description, s.n, std::move(d), std::move(s.families),
                      std::move(gens), s.flags, std::move(s.known), std::move(w), cp};
}

std::vector<double> halves(int n) { return std::vector<double>(static_cast<std::size_t>(n), 0.5); }

ConvexDomain cone_over(const ConvexDomain& base, const std::string& tag) {
  const int m = base.dim();
  const int n = m + 1;
  auto membership = [base, m](const Vec& x) {
    const double t = x[m];
    return t > 0.0 && base.contains(x.head(m) / t);
  };
  Vec bp(n);
  bp << base.basepoint(), 1.0;
  ConvexDomain d(n, bp, membership, tag);
  if (base.has_outward_normal()) {
    d.set_outward_normal([base, m, n](const Vec& x) {
      const double t = x[m];
      Vec out = Vec::Zero(n);
      if (!(t > 1e-12 * std::max(1.0, x.norm()))) {
        out[m] = -1.0;
        return out;
      }
      const Vec b = x.head(m) / t;
      const Vec nu = base.outward_normal(b);
      out.head(m) = nu;
      out[m] = -nu.dot(b);
      return Vec(out.normalized());
    });
  }
  d.set_bounded_chart(chart_from_covector(unit(n, m), Vec::Zero(n)));
  return d;
}

ConvexDomain l4_ball(int m) {
  Constraint c{[](const Vec& x) { return x.array().pow(4).sum() - 1.0; },
               [](const Vec& x) { return Vec(4.0 * x.array().pow(3)); }};
  return constraint_domain(m, Vec::Zero(m), {c}, "l4-ball");
}

// Unit ball cut by |x3| < 1/2.
ConvexDomain truncated_ball() {
  Constraint ball_c{[](const Vec& x) { return x.squaredNorm() - 1.0; },
                    [](const Vec& x) { return Vec(2.0 * x); }};
  return constraint_domain(3, Vec::Zero(3),
                           {ball_c, linear_constraint(unit(3, 2), -0.5),
                            linear_constraint(-unit(3, 2), -0.5)},
                           "truncated-ball");
}

const std::vector<std::string>& ids() {
  static const std::vector<std::string> v{"i",   "ii",  "iii", "iv",  "v",    "vi",  "vii",
                                          "viii", "ix", "x",   "xi",  "xii",  "xiii", "xiv",
                                          "xv",  "xvi", "xvii", "xviii", "xix"};
  return v;
}

CatalogEntry build(const std::string& id) {
  const CatalogFlags homogeneous_cone{true, true, false, true, false};
  if (id == "i") {
    return assemble({id, "{x in R | x > 0}", 1, Vec::Ones(1), {positive(1, 0)}, Vec::Ones(1),
                     {dilation(1, {1.0}, "dil")}, {true, true, true, false, false},
                     orthant_cone(1, {0}), halves(1)});
  }
  if (id == "ii") {
    return assemble({id, "{(x,y) in R^2 | x > 0, y > 0}", 2, Vec::Ones(2),
                     {positive(2, 0), positive(2, 1)}, Vec::Ones(2),
                     {dilation(2, weight(2, {{0, 1.0}}), "dil_x"),
                      dilation(2, weight(2, {{1, 1.0}}), "dil_y")},
                     homogeneous_cone, orthant_cone(2, {0, 1}), halves(2)});
  }
  if (id == "iii") {
    Vec b(2);
    b << 0.0, 1.0;
    return assemble({id, "{(x,y) in R^2 | y > x^2}", 2, b, {paraboloid(2, {0}, 1)}, unit(2, 1),
                     {parabolic_shear(2, 0, 1, "shear"), dilation(2, {1.0, 2.0}, "dil")},
                     {true, false, true, false, false}, orthant_cone(2, {1}), {0.5, 0.25}});
  }
  if (id == "iv") {
    return assemble({id, "{(x,y,z) in R^3 | z > x^2 + y^2}", 3, unit(3, 2),
                     {paraboloid(3, {0, 1}, 2)}, unit(3, 2),
                     {parabolic_shear(3, 0, 2, "shear_x"), parabolic_shear(3, 1, 2, "shear_y"),
                      rotation(3, 0, 1, "rot_xy"), dilation(3, {1.0, 1.0, 2.0}, "dil")},
                     {true, false, true, false, false}, orthant_cone(3, {2}), {0.5, 0.5, 0.25}});
  }
  if (id == "v") {
    return assemble({id, "{(x,y,z) in R^3 | y > x^2, z > 0}", 3, ones_at(3, {1, 2}),
                     {paraboloid(3, {0}, 1), positive(3, 2)}, ones_at(3, {1, 2}),
                     {parabolic_shear(3, 0, 1, "shear"), dilation(3, {1.0, 2.0, 0.0}, "dil_xy"),
                      dilation(3, weight(3, {{2, 1.0}}), "dil_z")},
                     {true, false, false, true, false}, orthant_cone(3, {1, 2}), {0.5, 0.25, 0.5}});
  }
  if (id == "vi") {
    return assemble({id, "{(x,y,z) in R^3 | x > 0, y > 0, z > 0}", 3, Vec::Ones(3),
                     {positive(3, 0), positive(3, 1), positive(3, 2)}, Vec::Ones(3),
                     {dilation(3, weight(3, {{0, 1.0}}), "dil_x"),
                      dilation(3, weight(3, {{1, 1.0}}), "dil_y"),
                      dilation(3, weight(3, {{2, 1.0}}), "dil_z")},
                     homogeneous_cone, orthant_cone(3, {0, 1, 2}), halves(3)});
  }
  if (id == "vii") {
    return assemble({id, "a 3-dimensional elliptic cone, {(x,y,z) in R^3 | z > sqrt(x^2 + y^2)}", 3,
                     unit(3, 2), {round_cone(3, {0, 1}, 2, 2.0)}, unit(3, 2),
                     {dilation(3, {1.0, 1.0, 1.0}, "dil"), rotation(3, 0, 1, "rot_xy"),
                      boost(3, 0, 2, "boost_xz"), boost(3, 1, 2, "boost_yz")},
                     homogeneous_cone, round_known(3, {0, 1}, 2, {}, 2.0), halves(3)});
  }
  if (id == "ix") {
    return assemble({id, "{x in R^4 | x4 > x1^2 + x2^2 + x3^2}", 4, unit(4, 3),
                     {paraboloid(4, {0, 1, 2}, 3)}, unit(4, 3),
                     {parabolic_shear(4, 0, 3, "shear_1"), parabolic_shear(4, 1, 3, "shear_2"),
                      parabolic_shear(4, 2, 3, "shear_3"), rotation(4, 0, 1, "rot_12"),
                      rotation(4, 1, 2, "rot_23"), dilation(4, {1.0, 1.0, 1.0, 2.0}, "dil")},
                     {true, false, true, false, false}, orthant_cone(4, {3}),
                     {0.5, 0.5, 0.5, 0.25}});
  }
  if (id == "x") {
    return assemble({id, "{x in R^4 | x2 > x1^2, x3 > 0, x4 > 0}", 4, ones_at(4, {1, 2, 3}),
                     {paraboloid(4, {0}, 1), positive(4, 2), positive(4, 3)},
                     ones_at(4, {1, 2, 3}),
                     {parabolic_shear(4, 0, 1, "shear"), dilation(4, {1.0, 2.0, 0.0, 0.0}, "dil_12"),
                      dilation(4, weight(4, {{2, 1.0}}), "dil_3"),
                      dilation(4, weight(4, {{3, 1.0}}), "dil_4")},
                     {true, false, false, true, false}, orthant_cone(4, {1, 2, 3}),
                     {0.5, 0.25, 0.5, 0.5}});
  }
  if (id == "xi") {
    Vec b(4);
    b << 0.0, 1.0, 1.0, 0.0;
    return assemble({id, "{x in R^4 | (x2 - x1^2) x3 > x4^2}, the component with x3 > 0", 4, b,
                     {positive(4, 2), quadratic_over_linear()}, ones_at(4, {1, 2}),
                     {parabolic_shear(4, 0, 1, "shear_1"), cone_shear_4("shear_4"),
                      dilation(4, {1.0, 2.0, 0.0, 1.0}, "dil_a"),
                      dilation(4, {0.0, 0.0, 2.0, 1.0}, "dil_b")},
                     {true, false, false, false, false}, xi_known(), {0.5, 0.25, 0.25, 0.25}});
  }
  if (id == "xii") {
    return assemble({id, "{x in R^4 | x3 > x1^2 + x2^2, x4 > 0}", 4, ones_at(4, {2, 3}),
                     {paraboloid(4, {0, 1}, 2), positive(4, 3)}, ones_at(4, {2, 3}),
                     {parabolic_shear(4, 0, 2, "shear_1"), parabolic_shear(4, 1, 2, "shear_2"),
                      rotation(4, 0, 1, "rot_12"), dilation(4, {1.0, 1.0, 2.0, 0.0}, "dil_123"),
                      dilation(4, weight(4, {{3, 1.0}}), "dil_4")},
                     {true, false, false, true, false}, orthant_cone(4, {2, 3}),
                     {0.5, 0.5, 0.25, 0.5}});
  }
  if (id == "xiii") {
    return assemble({id, "{x in R^4 | x2 > x1^2, x4 > x3^2}", 4, ones_at(4, {1, 3}),
                     {paraboloid(4, {0}, 1), paraboloid(4, {2}, 3)}, ones_at(4, {1, 3}),
                     {parabolic_shear(4, 0, 1, "shear_12"), parabolic_shear(4, 2, 3, "shear_34"),
                      dilation(4, {1.0, 2.0, 0.0, 0.0}, "dil_12"),
                      dilation(4, {0.0, 0.0, 1.0, 2.0}, "dil_34")},
                     {true, false, false, false, false}, orthant_cone(4, {1, 3}),
                     {0.5, 0.25, 0.5, 0.25}});
  }
  if (id == "xiv") {
    return assemble({id, "a 4-dimensional elliptic cone, {x in R^4 | x4 > |(x1,x2,x3)|}", 4,
                     unit(4, 3), {round_cone(4, {0, 1, 2}, 3, 2.0)}, unit(4, 3),
                     {dilation(4, {1.0, 1.0, 1.0, 1.0}, "dil"), rotation(4, 0, 1, "rot_12"),
                      rotation(4, 1, 2, "rot_23"), boost(4, 0, 3, "boost_14"),
                      boost(4, 1, 3, "boost_24"), boost(4, 2, 3, "boost_34")},
                     homogeneous_cone, round_known(4, {0, 1, 2}, 3, {}, 2.0), halves(4)});
  }
  if (id == "xvi") {
    return assemble({id, "a double cone over a triangle, {x in R^4 | x_i > 0 for i = 1,2,3,4}", 4,
                     Vec::Ones(4),
                     {positive(4, 0), positive(4, 1), positive(4, 2), positive(4, 3)},
                     Vec::Ones(4),
                     {dilation(4, weight(4, {{0, 1.0}}), "dil_1"),
                      dilation(4, weight(4, {{1, 1.0}}), "dil_2"),
                      dilation(4, weight(4, {{2, 1.0}}), "dil_3"),
                      dilation(4, weight(4, {{3, 1.0}}), "dil_4")},
                     homogeneous_cone, orthant_cone(4, {0, 1, 2, 3}), halves(4)});
  }
  if (id == "xvii") {
    return assemble({id, "a double cone over an ellipse, {x in R^4 | x3 > |(x1,x2)|, x4 > 0}", 4,
                     ones_at(4, {2, 3}), {round_cone(4, {0, 1}, 2, 2.0), positive(4, 3)},
                     ones_at(4, {2, 3}),
                     {dilation(4, {1.0, 1.0, 1.0, 0.0}, "dil_123"), rotation(4, 0, 1, "rot_12"),
                      boost(4, 0, 2, "boost_13"), boost(4, 1, 2, "boost_23"),
                      dilation(4, weight(4, {{3, 1.0}}), "dil_4")},
                     homogeneous_cone, round_known(4, {0, 1}, 2, {3}, 2.0), halves(4)});
  }
  if (id == "viii") return catalog_placeholder(id, l4_ball(2));
  if (id == "xv") return catalog_placeholder(id, l4_ball(3));
  if (id == "xviii") return catalog_placeholder(id, l4_ball(2));
  if (id == "xix") return catalog_placeholder(id, truncated_ball());
  throw Error(ErrorKind::kUnknownId, "catalog id '" + id + "'");
}

}  // namespace

std::vector<std::string> catalog_ids() { return ids(); }

CatalogEntry catalog_get(const std::string& id) { return build(id); }

std::vector<CatalogEntry> catalog_list() {
  std::vector<CatalogEntry> out;
  for (const std::string& id : ids()) out.push_back(build(id));
  return out;
}

CatalogEntry catalog_placeholder(const std::string& id, const ConvexDomain& base) {
  const int m = base.dim();
  std::string description;
  ConvexDomain d = cone_over(base, "(" + id + ")");
  std::vector<AffineFamily> families;
  if (id == "viii" || id == "xv" || id == "xix") {
    const int want = id == "viii" ? 2 : 3;
    if (m != want) throw Error(ErrorKind::kInvalidInput, "base body dimension for (" + id + ")");
    description = id == "viii"   ? "a 3-dimensional non-elliptic strictly convex cone"
                  : id == "xv" ? "a 4-dimensional non-elliptic strictly convex cone"
                               : "a cone over a 3-dimensional non-strictly convex indecomposable "
                                 "projective domain";
    families.push_back(dilation(m + 1, std::vector<double>(static_cast<std::size_t>(m + 1), 1.0), "dil"));
  } else if (id == "xviii") {
    if (m != 2) throw Error(ErrorKind::kInvalidInput, "base body dimension for (xviii)");
    description = "a double cone over a non-elliptic strictly convex domain";
    d = product(d, orthant(1), "(xviii)");
    d.set_bounded_chart(chart_from_covector(ones_at(4, {2, 3}), Vec::Zero(4)));
    families.push_back(dilation(4, {1.0, 1.0, 1.0, 0.0}, "dil_123"));
    families.push_back(dilation(4, weight(4, {{3, 1.0}}), "dil_4"));
  } else {
    throw Error(ErrorKind::kUnknownId, "no placeholder type '" + id + "'");
  }
  const int n = d.dim();
  KnownCone known = self_cone(d);
  GeneratorSet gens = discretize(families);
  Vec half = Vec::Constant(n, 0.5);
  LimitWitness w{Vec::Zero(n), AffineMap(half.asDiagonal().toDenseMatrix(), Vec::Zero(n)), 60};
  return CatalogEntry{id, description, n, std::move(d), std::move(families), std::move(gens),
                      {false, true, false, true, true}, std::move(known), std::move(w),
                      Vec(Vec::Zero(n))};
}

ProjMap family_map(const AffineFamily& f, double t) { return embed_affine(f.at(t)); }

GeneratorSet coarse_generators(const CatalogEntry& entry, double max_condition) {
  std::vector<ProjMap> maps;
  std::vector<std::string> labels;
  for (const AffineFamily& f : entry.families) {
    int k = 6;
    for (; k > -3; --k) {
      Eigen::JacobiSVD<Mat> svd(family_map(f, std::ldexp(1.0, k)).matrix());
      const Vec& s = svd.singularValues();
      if (s[0] <= max_condition * s[s.size() - 1]) break;
    }
    maps.push_back(family_map(f, std::ldexp(1.0, k)));
    labels.push_back(f.name + "(2^" + std::to_string(k) + ")");
  }
  return GeneratorSet::with_inverses(maps, labels);
}

// ---- checks -------------------------------------------------------------------

AcComparison compare_ac(const AsymptoticCone& computed, const KnownCone& known, int directions,
                        Rng& rng) {
  AcComparison out;
  out.computed_dim = computed.intrinsic_dim;
  out.known_dim = known.dim;
  const int n = computed.ambient_dim;
  std::vector<Vec> tests;
  for (int i = 0; i < directions; ++i) {
    tests.push_back(i % 2 == 0 ? random_unit(rng, n) : known.sample(rng));
  }
  std::vector<char> agree(tests.size());
  parallel_for(static_cast<int>(tests.size()), [&](int i) {
    const Vec& u = tests[static_cast<std::size_t>(i)];
    agree[static_cast<std::size_t>(i)] = computed.contains(u) == known.contains(u);
  });
  out.agreement = tests.empty() ? 1.0
                                : static_cast<double>(std::count(agree.begin(), agree.end(), 1)) /
                                      static_cast<double>(tests.size());
  if (out.computed_dim == out.known_dim && out.known_dim > 0) {
    const Mat residual = known.span - computed.span * (computed.span.transpose() * known.span);
    out.span_angle = Eigen::JacobiSVD<Mat>(residual).singularValues()[0];
  } else if (out.computed_dim != out.known_dim) {
    out.span_angle = 1.0;
  }
  out.match = out.computed_dim == out.known_dim && out.agreement >= 0.999 && out.span_angle <= 1e-3;
  return out;
}

EntryReport check_entry(const CatalogEntry& entry, int budget, Rng& rng) {
  EntryReport r;
  r.id = entry.id;
  r.reduced = entry.flags.placeholder;
  const ConvexDomain& d = entry.domain;
  const std::vector<Vec> samples = sample_interior(d, rng, budget, 6.0);

  r.invariance = true;
  for (std::size_t i = 0; i < entry.generators.gens.size(); ++i) {
    if (!preserves(d, entry.generators.gens[i], samples)) {
      r.invariance = false;
      r.failures.push_back("generator " + entry.generators.labels[i] + " leaves the domain");
    }
  }

  r.convexity = true;
  std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
  for (int k = 0; k < 500 && r.convexity; ++k) {
    const Vec& a = samples[pick(rng)];
    const Vec& b = samples[pick(rng)];
    for (double s : {0.25, 0.5, 0.75}) {
      if (!d.contains((1.0 - s) * a + s * b)) r.convexity = false;
    }
  }
  if (!r.convexity) r.failures.push_back("sampled segment leaves the domain");

  r.proper_convexity = is_properly_convex(d, 200, rng);
  if (!r.proper_convexity) r.failures.push_back("complete line found");

  // Witness: iterate the contraction from the basepoint.
  {
    const ConvexDomain& dom = d;
    const Vec target = to_bounded_chart(dom, ProjPoint::from_affine(entry.witness.point));
    Vec x = dom.basepoint();
    r.witness_distance = kInf;
    for (int k = 1; k <= entry.witness.max_iterations; ++k) {
      x = entry.witness.step(x);
      r.witness_iterations = k;
      r.witness_distance = (to_bounded_chart(dom, ProjPoint::from_affine(x)) - target).norm();
      if (r.witness_distance < 1e-6) break;
    }
    r.limit_witness_verified = r.witness_distance < 1e-6 && on_boundary(dom, entry.witness.point);
    if (!r.limit_witness_verified) r.failures.push_back("limit witness not verified");
  }

  if (entry.flags.cone && entry.cone_point) {
    const ProjPoint cp = ProjPoint::from_affine(*entry.cone_point);
    for (std::size_t i = 0; i < entry.generators.gens.size(); ++i) {
      if (apply(entry.generators.gens[i], cp).distance(cp) > 1e-9) r.cone_point_fixed = false;
    }
    if (!r.cone_point_fixed) r.failures.push_back("cone point not fixed");
    for (std::size_t i = 0; i < 50 && i < samples.size(); ++i) {
      for (int k = 1; k <= 100; ++k) {
        const double t = 0.1 * k;
        if (!d.contains(*entry.cone_point + t * (samples[i] - *entry.cone_point))) {
          r.dilation_invariant = false;
        }
      }
    }
    if (!r.dilation_invariant) r.failures.push_back("not invariant under dilation about the cone point");
  }

  if (!entry.flags.placeholder) {
    const AsymptoticCone ac = asymptotic_cone(d);
    const AcComparison cmp = compare_ac(ac, entry.known_ac, 1000, rng);
    r.ac_dim = cmp.computed_dim;
    r.ac_agreement = cmp.agreement;
    r.ac_match = cmp.match;
    if (!r.ac_match) r.failures.push_back("asymptotic cone mismatch");
  }
  return r;
}

SyndeticReport syndetic_probe(const ConvexDomain& d, const GeneratorSet& gens, double radius,
                              int word_len, int sample_budget, Rng& rng) {
  SyndeticReport out;
  const std::vector<Vec> samples = sample_interior(d, rng, sample_budget, 30.0);
  out.samples = static_cast<int>(samples.size());
  const Vec& base = d.basepoint();
  // Descent potential: distances to the basepoint and to 2n reference points
  // around it. The distance to the basepoint alone has flat directions (the
  // simplex metric is polyhedral) where no single letter decreases it.
  std::vector<Vec> anchors{base};
  {
    Rng anchor_rng(0x5a5a + static_cast<std::uint64_t>(d.dim()));
    for (int j = 0; j < 2 * d.dim(); ++j) {
      const Vec u = random_unit(anchor_rng, d.dim());
      const RayHit fwd = boundary_ray(d, base, u);
      // Halfway to the boundary, or a unit step when the ray escapes.
      const double t = fwd.at_infinity ? 1.0 : 0.5 * fwd.t;
      const Vec a = base + t * u;
      if (d.contains(a)) anchors.push_back(a);
    }
  }
  auto potential = [&](const Vec& y) {
    double s = 0.0;
    for (const Vec& a : anchors) s += hilbert_distance(d, y, a);
    return s;
  };
  std::vector<int> steps(samples.size(), -1);
  parallel_for(out.samples, [&](int i) {
    Vec x = samples[static_cast<std::size_t>(i)];
    double phi = potential(x);
    double dist = hilbert_distance(d, x, base);
    int k = 0;
    while (dist > radius && k < word_len) {
      double best = phi;
      Vec best_x;
      for (const ProjMap& g : gens.gens) {
        Vec y;
        try {
          y = apply_affine_chart(g, x);
        } catch (const Error&) {
          continue;
        }
        if (!d.contains(y)) continue;
        const double py = potential(y);
        if (py < best) {
          best = py;
          best_x = std::move(y);
        }
      }
      if (best_x.size() == 0) break;
      x = std::move(best_x);
      phi = best;
      dist = hilbert_distance(d, x, base);
      ++k;
    }
    if (dist <= radius) steps[static_cast<std::size_t>(i)] = k;
  });
  for (int s : steps) {
    if (s >= 0) {
      ++out.covered;
      out.longest_word = std::max(out.longest_word, s);
    }
  }
  out.coverage = out.samples > 0 ? static_cast<double>(out.covered) / out.samples : 0.0;
  return out;
}

SyndeticReport syndetic_probe(const CatalogEntry& entry, double radius, int word_len,
                              int sample_budget, Rng& rng) {
  return syndetic_probe(entry.domain, entry.generators, radius, word_len, sample_budget, rng);
}

TransitivityReport transitivity_probe(const CatalogEntry& entry, int targets, double tol,
                                      Rng& rng) {
  TransitivityReport out;
  const ConvexDomain& d = entry.domain;
  const std::vector<Vec> goal = sample_interior(d, rng, targets, 3.0);
  out.targets = static_cast<int>(goal.size());
  const int k = static_cast<int>(entry.families.size());
  std::vector<double> final(goal.size(), kInf);
  parallel_for(out.targets, [&](int i) {
    const Vec& target = goal[static_cast<std::size_t>(i)];
    auto image = [&](const Vec& t) {
      Vec x = d.basepoint();
      for (int j = k - 1; j >= 0; --j) x = entry.families[static_cast<std::size_t>(j)].at(t[j])(x);
      return x;
    };
    auto objective = [&](const Vec& t) {
      const Vec x = image(t);
      if (!d.contains(x)) return kInf;
      return hilbert_distance(d, x, target);
    };
    SphereSearchOptions opt;
    opt.initial_step = 1.0;
    opt.min_step = 1e-9;
    opt.stop_below = 0.1 * tol;
    opt.max_evaluations = 20000;
    auto best = compass_search(objective, Vec::Zero(k), opt);
    // Periodic families (rotations) can trap the search; restart nearby.
    Rng local(0x7a + static_cast<std::uint64_t>(i));
    std::normal_distribution<double> n01;
    for (int restart = 0; restart < 4 && best.value > tol; ++restart) {
      Vec start = best.best;
      for (int j = 0; j < k; ++j) start[j] += n01(local);
      auto again = compass_search(objective, start, opt);
      if (again.value < best.value) best = again;
    }
    final[static_cast<std::size_t>(i)] = best.value;
  });
  for (double f : final) {
    if (f <= tol) ++out.reached;
    out.worst = std::max(out.worst, f);
  }
  return out;
}

namespace {

// sigma_min / sigma_max of the quadratic monomials of the points; small when
// they lie on a quadric cone through the origin.
double quadric_cone_residual(const std::vector<Vec>& pts) {
  const int n = static_cast<int>(pts.front().size());
  const int m = n * (n + 1) / 2;
  Mat a(static_cast<Eigen::Index>(pts.size()), m);
  for (std::size_t r = 0; r < pts.size(); ++r) {
    const Vec v = pts[r].normalized();
    int c = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) a(static_cast<Eigen::Index>(r), c++) = v[i] * v[j];
    }
  }
  const Vec s = Eigen::JacobiSVD<Mat>(a).singularValues();
  return s[s.size() - 1] / s[0];
}

}  // namespace

ClassificationEvidence classify_against_catalog(const ConvexDomain& d, Rng& rng,
                                                int boundary_samples) {
  ClassificationEvidence ev;
  ev.dim = d.dim();
  const AsymptoticCone ac = asymptotic_cone(d);
  ev.ac_dim = ac.intrinsic_dim;
  ev.cone = ev.ac_dim == ev.dim;
  const std::vector<Vec> boundary = sample_boundary(d, rng, boundary_samples);
  std::vector<int> dims(boundary.size(), -1);
  parallel_for(static_cast<int>(boundary.size()), [&](int i) {
    try {
      dims[static_cast<std::size_t>(i)] = face_of(d, boundary[static_cast<std::size_t>(i)]).dim;
    } catch (const Error&) {
    }
  });
  ev.face_census.assign(static_cast<std::size_t>(ev.dim), 0);
  for (int f : dims) {
    if (f >= 0 && f < ev.dim) ++ev.face_census[static_cast<std::size_t>(f)];
  }
  auto has = [&](int f) { return f < ev.dim && ev.face_census[static_cast<std::size_t>(f)] > 0; };
  int max_face = -1;
  int min_face = ev.dim;
  for (int f = 0; f < ev.dim; ++f) {
    if (has(f)) {
      max_face = f;
      min_face = std::min(min_face, f);
    }
  }
  ev.strictly_convex = max_face == 0;

  // Elliptic test for cones: the boundary points of smallest face dimension
  // lie on a quadric cone about the cone point.
  auto elliptic = [&]() {
    if (!ev.cone) return false;
    Vec apex;
    try {
      apex = leaf_and_cone_point(d, ac, d.basepoint()).cone_point;
    } catch (const Error&) {
      return false;
    }
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      if (dims[i] == min_face) pts.push_back(boundary[i] - apex);
    }
    if (static_cast<int>(pts.size()) < ev.dim * (ev.dim + 1) / 2 + 2) return false;
    ev.quadric_residual = quadric_cone_residual(pts);
    return *ev.quadric_residual < 1e-6;
  };

  std::vector<std::string>& c = ev.candidates;
  const int n = ev.dim;
  const int k = ev.ac_dim;
  if (k == 0) return ev;
  if (n == 1) {
    c = {"i"};
  } else if (n == 2) {
    c = {k == 2 ? "ii" : "iii"};
  } else if (n == 3) {
    if (k == 1) {
      c = {"iv"};
    } else if (k == 2) {
      c = {"v"};
    } else if (max_face == 2) {
      c = {"vi"};
    } else {
      c = {elliptic() ? "vii" : "viii"};
    }
  } else if (n == 4) {
    if (k == 1) {
      c = {"ix"};
    } else if (k == 2) {
      c = {max_face >= 3 ? "xii" : "xiii"};
    } else if (k == 3) {
      c = {max_face >= 3 ? "x" : "xi"};
    } else if (has(3)) {
      if (has(1)) {
        c = {"xix"};
      } else if (has(2)) {
        c = {elliptic() ? "xvii" : "xviii"};
      } else {
        c = {"xvi"};
      }
    } else {
      c = {elliptic() ? "xiv" : "xv"};
    }
  }
  return ev;
}

}  // namespace qhd
