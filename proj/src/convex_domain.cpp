#include "qhd/convex_domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhd/lp.hpp"
#include "qhd/search.hpp"

namespace qhd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Face probing: a direction e is flat at p when the boundary height over the
// tangent plane at p +- h e stays below kFlat * h.
constexpr double kFlat = 1e-7;
constexpr double kProbeScales[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};

double point_scale(const Vec& p) { return std::max(1.0, p.norm()); }

}  // namespace

double normal_height(const ConvexDomain& d, const Vec& z, const Vec& nu, double hmax) {
  if (d.contains(z)) return 0.0;
  double lo = 0.0;
  double hi = 1e-14 * point_scale(z);
  while (!d.contains(z + hi * nu)) {
    lo = hi;
    hi *= 4.0;
    if (hi > hmax) return kInf;
  }
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (d.contains(z + mid * nu)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

// Height of z over the boundary along nu: positive outside, negative inside.
double signed_height(const ConvexDomain& d, const Vec& z, const Vec& nu, double hmax) {
  if (!d.contains(z)) return normal_height(d, z, nu, hmax);
  double lo = 0.0;
  double hi = 1e-14 * point_scale(z);
  while (d.contains(z - hi * nu)) {
    lo = hi;
    hi *= 4.0;
    if (hi > hmax) return -kInf;
  }
  for (int i = 0; i < 64; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (d.contains(z - mid * nu)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return -lo;
}

// Second differences of the boundary height are blind to a tilt of nu, which
// matters when nu is only fitted (oracle domains).
struct TangentProbe {
  const ConvexDomain& d;
  Vec p;
  Vec nu;       // inward unit normal
  Mat tangent;  // n x (n-1) orthonormal
  double scale;
  double g0 = 0.0;

  TangentProbe(const ConvexDomain& dom, Vec at, Vec normal, Mat tan, double s)
      : d(dom), p(std::move(at)), nu(std::move(normal)), tangent(std::move(tan)), scale(s) {
    g0 = g(Vec::Zero(p.size()));
  }

  double g(const Vec& y) const { return signed_height(d, p + y, nu, 1e3 * scale); }

  // |g(he) + g(-he) - 2 g(0)| / h.
  double bend(const Vec& e, double h) const {
    const double v = (g(h * e) + g(-h * e) - 2.0 * g0) / h;
    return std::isfinite(v) ? std::abs(v) : kInf;
  }

  // One-sided |g(2he) - 2 g(he) + g(0)| / h on the better side.
  double one_sided_bend(const Vec& e, double h) const {
    double best = kInf;
    for (double s : {1.0, -1.0}) {
      const double v = (g(2.0 * s * h * e) - 2.0 * g(s * h * e) + g0) / h;
      if (std::isfinite(v)) best = std::min(best, std::abs(v));
    }
    return best;
  }
};

std::vector<Vec> direction_grid(int k, int count, Rng& rng) {
  std::vector<Vec> grid;
  for (int i = 0; i < k; ++i) grid.push_back(Vec::Unit(k, i));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      grid.push_back((Vec::Unit(k, i) + Vec::Unit(k, j)).normalized());
      grid.push_back((Vec::Unit(k, i) - Vec::Unit(k, j)).normalized());
    }
  }
  while (static_cast<int>(grid.size()) < count) grid.push_back(random_unit(rng, k));
  return grid;
}

// Searches the unit sphere of span(basis) (ambient coordinates) for a flat
// direction of the boundary at the probe point.
std::optional<Vec> find_flat_direction(const TangentProbe& probe, const Mat& basis, int grid_size,
                                       Rng& rng) {
  const int k = static_cast<int>(basis.cols());
  if (k == 0) return std::nullopt;
  const double h1 = kProbeScales[0] * probe.scale;
  auto ambient = [&](const Vec& c) -> Vec { return basis * c; };
  auto two_sided = [&](const Vec& c) { return probe.bend(ambient(c), h1); };
  auto one_sided = [&](const Vec& c) { return probe.one_sided_bend(ambient(c), 0.5 * h1); };
  const std::vector<Vec> grid = direction_grid(k, grid_size, rng);
  auto best_of = [&](const auto& f) {
    Vec best = grid.front();
    double best_value = kInf;
    for (const Vec& c : grid) {
      const double v = f(c);
      if (v < best_value) {
        best_value = v;
        best = c;
      }
    }
    return best;
  };
  SphereSearchOptions options;
  options.min_step = 1e-9;
  options.stop_below = kFlat * 1e-5;
  options.max_evaluations = 4000;

  const SphereSearch both = compass_search_sphere(two_sided, best_of(two_sided), options);
  if (both.value <= kFlat) return ambient(both.best).normalized();

  // p may sit near the end of its face, so a flat direction is only flat on
  // one side at the coarse scale; confirm it two-sidedly at finer scales.
  const SphereSearch one = compass_search_sphere(one_sided, best_of(one_sided), options);
  if (one.value > kFlat) return std::nullopt;
  const Vec e = ambient(one.best).normalized();
  for (double s : kProbeScales) {
    if (probe.bend(e, s * probe.scale) <= kFlat) return e;
  }
  return std::nullopt;
}

double log_exit(const ConvexDomain& d, const Vec& x, const Vec& u) {
  const RayHit hit = boundary_ray(d, x, u);
  return hit.at_infinity ? 50.0 : std::log(std::max(hit.t, 1e-300));
}

}  // namespace

ConvexDomain::ConvexDomain(int dim, Vec basepoint, Membership membership, std::string tag)
    : dim_(dim), basepoint_(std::move(basepoint)), membership_(std::move(membership)),
      tag_(std::move(tag)) {
  if (dim_ < 1 || basepoint_.size() != dim_) {
    throw Error(ErrorKind::kInvalidInput, "basepoint dimension mismatch");
  }
  if (!membership_(basepoint_)) throw Error(ErrorKind::kNotInterior, "basepoint not in domain");
}

ConvexDomain& ConvexDomain::set_outward_normal(NormalField field) {
  normal_ = std::move(field);
  return *this;
}

ConvexDomain& ConvexDomain::set_bounded_chart(ProjMap chart) {
  bounded_chart_ = std::move(chart);
  return *this;
}

ConvexDomain ConvexDomain::with_basepoint(const Vec& basepoint) const {
  ConvexDomain out(dim_, basepoint, membership_, tag_);
  out.normal_ = normal_;
  out.bounded_chart_ = bounded_chart_;
  return out;
}

RayHit boundary_ray(const ConvexDomain& d, const Vec& x, const Vec& u) {
  if (!d.contains(x)) throw Error(ErrorKind::kNotInterior, "ray origin not interior");
  const double norm = u.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::kInvalidInput, "zero direction");
  const Vec dir = u / norm;
  const double bound = kEscapeBound * point_scale(x);
  double lo = 0.0;
  double hi = 1.0;
  while (d.contains(x + hi * dir)) {
    lo = hi;
    if (lo > bound) return {true, kInf, Vec()};
    hi *= 2.0;
  }
  for (int i = 0; i < 2200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (d.contains(x + mid * dir)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {false, lo, x + lo * dir};
}

bool ray_escapes(const ConvexDomain& d, const Vec& x, const Vec& u) {
  const Vec dir = u.normalized();
  for (double t = 1.0;; t *= 2.0) {
    if (!d.contains(x + t * dir)) return false;
    if (t > kEscapeBound) return true;
  }
}

bool on_boundary(const ConvexDomain& d, const Vec& p) {
  const Vec toward = d.basepoint() - p;
  if (toward.norm() == 0.0) return false;
  const Vec dir = toward.normalized();
  const double delta = kBoundaryTolerance * point_scale(p);
  return d.contains(p + delta * dir) && !d.contains(p - delta * dir);
}

double radial_gap(const ConvexDomain& d, const Vec& z) {
  const Vec r = z - d.basepoint();
  const double len = r.norm();
  if (len == 0.0) return kInf;
  const RayHit hit = boundary_ray(d, d.basepoint(), r);
  if (hit.at_infinity) return kInf;
  return hit.t - len;
}

bool in_closure(const ConvexDomain& d, const Vec& z, double slack) {
  if (d.contains(z)) return true;
  const Vec toward = d.basepoint() - z;
  if (toward.norm() == 0.0) return false;
  return d.contains(z + slack * point_scale(z) * toward.normalized());
}

namespace {

// Inward unit affine normal at the boundary point p, from the normal field or
// a hard-margin fit: a.(q - p) >= 0 on nearby boundary points q and
// a.(x - p) >= m on interior samples, maximizing m with |a|_inf <= 1.
Vec inward_normal(const ConvexDomain& d, const Vec& p, const std::vector<Vec>& interior) {
  const int n = d.dim();
  if (d.has_outward_normal()) {
    const Vec a = -d.outward_normal(p);
    if (!(a.norm() > 0.0)) throw Error(ErrorKind::kUncertified, "zero normal");
    return a.normalized();
  }
  Rng rng(0x5eed + static_cast<std::uint64_t>(n));
  const double scale = point_scale(p);
  std::vector<Vec> near;
  for (double r : {1e-4, 1e-3, 1e-2}) {
    for (int i = 0; i < 4 * n * n + 4; ++i) {
      const Vec target = p + r * scale * random_unit(rng, n);
      const RayHit hit = boundary_ray(d, d.basepoint(), target - d.basepoint());
      if (!hit.at_infinity) near.push_back(hit.point);
    }
  }
  // Variables a+ (n), a- (n), m (1), all >= 0.
  const int rows = static_cast<int>(near.size() + interior.size()) + 2 * n;
  Mat g = Mat::Zero(rows, 2 * n + 1);
  Vec h = Vec::Zero(rows);
  int r = 0;
  for (const Vec& q : near) {
    const Vec diff = (q - p) / scale;
    g.block(r, 0, 1, n) = -diff.transpose();
    g.block(r, n, 1, n) = diff.transpose();
    h[r++] = 1e-9;
  }
  for (const Vec& x : interior) {
    const Vec diff = (x - p) / std::max(scale, (x - p).norm());
    g.block(r, 0, 1, n) = -diff.transpose();
    g.block(r, n, 1, n) = diff.transpose();
    g(r, 2 * n) = 1.0;
    h[r++] = 0.0;
  }
  for (int i = 0; i < n; ++i) {
    g(r, i) = 1.0;
    h[r++] = 1.0;
    g(r, n + i) = 1.0;
    h[r++] = 1.0;
  }
  Vec c = Vec::Zero(2 * n + 1);
  c[2 * n] = 1.0;
  const lp::Result fit = lp::maximize_inequalities(g, h, c);
  if (fit.status != lp::Status::kOptimal || fit.objective <= 1e-9) {
    throw Error(ErrorKind::kUncertified, "separation fit found no margin");
  }
  const Vec a = fit.x.head(n) - fit.x.segment(n, n);
  if (!(a.norm() > 0.0)) throw Error(ErrorKind::kUncertified, "zero normal");
  return a.normalized();
}

std::vector<Vec> fit_samples(const ConvexDomain& d, int count) {
  Rng rng(0xf17 + static_cast<std::uint64_t>(d.dim()));
  std::vector<Vec> out = sample_interior(d, rng, count, 6.0);
  out.push_back(d.basepoint());
  return out;
}

Vec inward_covector(const ConvexDomain& d, const Vec& p) {
  const std::vector<Vec> interior =
      d.has_outward_normal() ? std::vector<Vec>{} : fit_samples(d, 2 * d.dim() + 8);
  const Vec a = inward_normal(d, p, interior);
  Vec c(d.dim() + 1);
  c << a, -a.dot(p);
  return c;
}

}  // namespace

Vec inward_normal_at(const ConvexDomain& d, const Vec& p) {
  return inward_covector(d, p).head(d.dim());
}

Hyperplane supporting_hyperplane(const ConvexDomain& d, const Vec& p) {
  const std::vector<Vec> interior = fit_samples(d, 200);
  const Vec a = inward_normal(d, p, interior);
  for (const Vec& x : interior) {
    if (a.dot(x - p) <= 0.0) {
      throw Error(ErrorKind::kUncertified, "interior sample on the wrong side");
    }
  }
  return Hyperplane::from_affine(a, -a.dot(p));
}

FaceDescriptor face_of(const ConvexDomain& d, const Vec& p) {
  if (!on_boundary(d, p)) throw Error(ErrorKind::kNotBoundary, "point not on boundary");
  const int n = d.dim();
  const Vec cov = inward_covector(d, p);
  const Vec nu = cov.head(n).normalized();
  TangentProbe probe{d, p, nu, orthogonal_complement(nu, n), point_scale(p)};
  Rng rng(0xface);
  std::vector<Vec> found;
  while (static_cast<int>(found.size()) < n - 1) {
    Mat used(n, static_cast<Eigen::Index>(found.size() + 1));
    used.col(0) = nu;
    for (std::size_t i = 0; i < found.size(); ++i) used.col(static_cast<Eigen::Index>(i + 1)) = found[i];
    const Mat free_basis = orthogonal_complement(used, n);
    const auto e = find_flat_direction(probe, free_basis, 2 * n * n, rng);
    if (!e) break;
    // Re-orthogonalize against earlier directions.
    Vec v = *e;
    for (const Vec& f : found) v -= v.dot(f) * f;
    found.push_back(v.normalized());
  }
  FaceDescriptor out{ProjPoint::from_affine(p), {ProjPoint::from_affine(p)}, found,
                     static_cast<int>(found.size())};
  for (const Vec& e : found) out.span_basis.push_back(ProjPoint::from_affine(p + e));
  return out;
}

bool is_extreme(const ConvexDomain& d, const Vec& p) { return face_of(d, p).dim == 0; }

ConicFaceResult is_conic_face(const ConvexDomain& d, const FaceDescriptor& face, int budget) {
  ConicFaceResult out;
  const int n = d.dim();
  const int needed = n - face.dim;
  if (needed <= 0) {
    out.reason = "face is the whole domain";
    return out;
  }
  const Vec p = face.representative.affine();
  const double scale = point_scale(p);
  Vec base(n + 1);
  base << d.basepoint(), 1.0;

  std::vector<Vec> chain;
  auto try_candidate = [&](const Vec& cov) {
    ++out.candidates_examined;
    Vec c = cov.normalized();
    Vec ph(n + 1);
    ph << p, 1.0;
    if (std::abs(c.dot(ph)) > 1e-9 * scale) return;
    for (const Vec& e : face.directions) {
      if (std::abs(c.head(n).dot(e)) > 1e-7) return;
    }
    // Independence from the chain so far, with a loose relative tolerance so
    // that nearly parallel tangents of a curved boundary do not count.
    Vec residual = c;
    for (const Vec& h : chain) residual -= residual.dot(h) * h;
    if (residual.norm() < 1e-3) return;
    chain.push_back(residual.normalized());
    out.chain.emplace_back(c);
  };

  try {
    try_candidate(inward_covector(d, p));
  } catch (const Error&) {
  }
  Rng rng(0xc0c1c);
  const double radii[] = {1e-6, 1e-5, 1e-4, 1e-3};
  int round = 0;
  while (static_cast<int>(chain.size()) < needed && out.candidates_examined < budget) {
    const double r = radii[round++ % 4] * scale;
    const Vec target = p + r * random_unit(rng, n);
    const RayHit hit = boundary_ray(d, d.basepoint(), target - d.basepoint());
    if (hit.at_infinity) {
      ++out.candidates_examined;
      continue;
    }
    try {
      try_candidate(inward_covector(d, hit.point));
    } catch (const Error&) {
      ++out.candidates_examined;
    }
  }
  out.conic = static_cast<int>(chain.size()) >= needed;
  if (!out.conic) {
    out.reason = "found " + std::to_string(chain.size()) + " of " + std::to_string(needed) +
                 " independent supporting hyperplanes within budget";
    out.chain.clear();
  }
  return out;
}

EmbeddedDomain EmbeddedDomain::point(const Vec& homogeneous) {
  EmbeddedDomain e;
  e.basis = homogeneous;
  return e;
}

bool EmbeddedDomain::contains(const Vec& y) const {
  if (k() == 0) return true;
  return domain->contains(y);
}

Vec EmbeddedDomain::basepoint() const {
  if (k() == 0) return Vec();
  return domain->basepoint();
}

ConvexDomain convex_sum(const EmbeddedDomain& first, const EmbeddedDomain& second,
                        std::string tag) {
  const Eigen::Index rows = first.basis.rows();
  if (second.basis.rows() != rows) throw Error(ErrorKind::kInvalidInput, "ambient mismatch");
  for (const EmbeddedDomain* e : {&first, &second}) {
    if (e->k() > 0 && (!e->domain || e->domain->dim() != e->k())) {
      throw Error(ErrorKind::kInvalidInput, "summand dimension does not match its basis");
    }
  }
  const Eigen::Index k1 = first.basis.cols();
  const Eigen::Index k2 = second.basis.cols();
  Mat joint(rows, k1 + k2);
  joint << first.basis, second.basis;
  Eigen::FullPivLU<Mat> lu(joint);
  lu.setThreshold(1e-9);
  if (lu.rank() < k1 + k2) {
    throw Error(ErrorKind::kOverlappingSupports, "projective supports intersect");
  }
  if (k1 + k2 != rows) {
    throw Error(ErrorKind::kInvalidInput, "summands must span the ambient space");
  }
  const Mat inverse = joint.inverse();
  auto membership = [first, second, inverse, k1, k2](const Vec& x) {
    Vec xh(x.size() + 1);
    xh << x, 1.0;
    const Vec c = inverse * xh;
    const double lambda = c[k1 - 1];
    const double mu = c[k1 + k2 - 1];
    if (!(lambda * mu > 0.0)) return false;
    const Vec a = c.head(k1 - 1) / lambda;
    const Vec b = c.segment(k1, k2 - 1) / mu;
    return first.contains(a) && second.contains(b);
  };
  Vec a0(k1);
  a0 << first.basepoint(), 1.0;
  Vec b0(k2);
  b0 << second.basepoint(), 1.0;
  const Vec xh = first.basis * a0 + second.basis * b0;
  if (std::abs(xh[rows - 1]) < 1e-12 * xh.norm()) {
    throw Error(ErrorKind::kInvalidInput, "default basepoint at infinity");
  }
  const Vec x = xh.head(rows - 1) / xh[rows - 1];
  return ConvexDomain(static_cast<int>(rows - 1), x, membership, std::move(tag));
}

bool is_properly_convex(const ConvexDomain& d, int direction_budget, Rng& rng) {
  const int n = d.dim();
  const Vec& x = d.basepoint();
  auto objective = [&](const Vec& u) {
    return -std::min(log_exit(d, x, u), log_exit(d, x, -u));
  };
  std::vector<std::pair<double, Vec>> scored;
  for (const Vec& u : direction_grid(n, std::max(direction_budget, n), rng)) {
    const double v = objective(u);
    if (v <= -50.0) return false;
    scored.emplace_back(v, u);
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SphereSearchOptions options;
  options.min_step = 1e-6;
  options.stop_below = -49.0;
  options.max_evaluations = 400;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, scored.size()); ++i) {
    if (compass_search_sphere(objective, scored[i].second, options).value <= -50.0) return false;
  }
  return true;
}

ConvexDomain projective_image(const ConvexDomain& d, const ProjMap& g) {
  if (!g.invertible()) throw Error(ErrorKind::kSingularMap, "image under a singular map");
  const Mat forward = g.matrix();
  const Mat back = forward.inverse();
  const int n = d.dim();
  auto membership = [d, back, n](const Vec& y) {
    Vec yh(n + 1);
    yh << y, 1.0;
    const Vec xh = back * yh;
    if (!(std::abs(xh[n]) > 1e-14 * xh.norm())) return false;
    return d.contains(xh.head(n) / xh[n]);
  };
  const Vec base = apply_affine_chart(g, d.basepoint());
  ConvexDomain out(n, base, membership, d.tag());
  if (d.has_outward_normal()) {
    const Mat back_t = back.transpose();
    out.set_outward_normal([d, back, back_t, base, n](const Vec& y) {
      Vec yh(n + 1);
      yh << y, 1.0;
      const Vec xh = back * yh;
      const Vec x = xh.head(n) / xh[n];
      const Vec nu = d.outward_normal(x);
      Vec c(n + 1);
      c << nu, -nu.dot(x);
      Vec image = back_t * c;
      Vec bh(n + 1);
      bh << base, 1.0;
      if (image.dot(bh) > 0.0) image = -image;
      return Vec(image.head(n).normalized());
    });
  }
  if (d.bounded_chart()) out.set_bounded_chart(d.bounded_chart()->compose(g.inverse()));
  return out;
}

ConvexDomain affine_image(const ConvexDomain& d, const AffineMap& a) {
  return projective_image(d, embed_affine(a));
}

Vec random_unit(Rng& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  } while (v.norm() < 1e-12);
  return v.normalized();
}

std::vector<Vec> sample_interior(const ConvexDomain& d, Rng& rng, int count, double max_radius) {
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(count));
  std::uniform_real_distribution<double> radius(0.0, max_radius);
  const Vec& x = d.basepoint();
  for (int attempts = 0; static_cast<int>(out.size()) < count && attempts < 20 * count + 100;
       ++attempts) {
    const Vec u = random_unit(rng, d.dim());
    const double r = radius(rng);
    const RayHit fwd = boundary_ray(d, x, u);
    const RayHit back = boundary_ray(d, x, -u);
    const double er = std::exp(r);
    double t;
    if (fwd.at_infinity && back.at_infinity) {
      t = std::expm1(r);
    } else if (back.at_infinity) {
      t = -fwd.t * std::expm1(-r);
    } else if (fwd.at_infinity) {
      t = back.t * std::expm1(r);
    } else {
      t = back.t * fwd.t * std::expm1(r) / (fwd.t + er * back.t);
    }
    const Vec y = x + t * u;
    if (d.contains(y)) out.push_back(y);
  }
  return out;
}

std::vector<Vec> sample_boundary(const ConvexDomain& d, Rng& rng, int count) {
  std::vector<Vec> out;
  for (int attempts = 0; static_cast<int>(out.size()) < count && attempts < 100 * count + 100;
       ++attempts) {
    const RayHit hit = boundary_ray(d, d.basepoint(), random_unit(rng, d.dim()));
    if (!hit.at_infinity) out.push_back(hit.point);
  }
  return out;
}

Vec to_bounded_chart(const ConvexDomain& d, const ProjPoint& p) {
  if (!d.bounded_chart()) return p.affine();
  return apply(*d.bounded_chart(), p).affine();
}

ProjPoint from_bounded_chart(const ConvexDomain& d, const Vec& y) {
  const ProjPoint py = ProjPoint::from_affine(y);
  if (!d.bounded_chart()) return py;
  return apply(d.bounded_chart()->inverse(), py);
}

ConvexDomain bounded_realization(const ConvexDomain& d) {
  if (!d.bounded_chart()) return d;
  return projective_image(d, *d.bounded_chart());
}

Vec apply_affine_chart(const ProjMap& g, const Vec& x) {
  Vec xh(x.size() + 1);
  xh << x, 1.0;
  const Vec y = g.matrix() * xh;
  const Eigen::Index n = x.size();
  // Zero up to the cancellation error of the last row.
  const double scale = (g.matrix().row(n).cwiseAbs() * xh.cwiseAbs()).value();
  if (!(std::abs(y[n]) > 1e-14 * scale)) {
    throw Error(ErrorKind::kInvalidInput, "image point at infinity");
  }
  return y.head(n) / y[n];
}

bool preserves(const ConvexDomain& d, const ProjMap& g, const std::vector<Vec>& samples) {
  for (const Vec& x : samples) {
    Vec y;
    try {
      y = apply_affine_chart(g, x);
    } catch (const Error&) {
      return false;
    }
    if (!d.contains(y)) return false;
  }
  return true;
}

}  // namespace qhd
