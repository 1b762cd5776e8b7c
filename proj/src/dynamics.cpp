#include "qhd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhd/hilbert.hpp"
#include "qhd/search.hpp"

namespace qhd {

namespace {

constexpr double kFixTolerance = 1e-6;

Vec homogeneous(const Vec& x) {
  Vec h(x.size() + 1);
  h << x, 1.0;
  return h;
}

std::optional<Vec> chart_point(const Vec& h) {
  const Eigen::Index n = h.size() - 1;
  if (!(std::abs(h[n]) > 1e-12 * h.norm())) return std::nullopt;
  return Vec(h.head(n) / h[n]);
}

std::vector<Vec> preservation_samples(const ConvexDomain& d) {
  Rng rng(0x150);
  std::vector<Vec> s = sample_interior(d, rng, 100, 6.0);
  s.push_back(d.basepoint());
  return s;
}

}  // namespace

const char* to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::kElliptic: return "elliptic";
    case IsometryKind::kParabolic: return "parabolic";
    case IsometryKind::kHyperbolic: return "hyperbolic";
  }
  return "unknown";
}

double IsometryClass::translation_length() const { return std::log(lambda_max / lambda_min); }

IsometryClass classify_isometry(const ConvexDomain& d, const ProjMap& g) {
  if (!g.invertible()) throw Error(ErrorKind::kSingularMap, "isometries are invertible");
  if (g.size() != d.dim() + 1) throw Error(ErrorKind::kInvalidInput, "map size mismatch");
  const std::vector<Vec> samples = preservation_samples(d);
  if (!preserves(d, g, samples) || !preserves(d, g.inverse(), samples)) {
    throw Error(ErrorKind::kNotPreserved, "map does not preserve the domain");
  }
  const Mat& m = g.matrix();
  const int size = g.size();
  Eigen::EigenSolver<Mat> es(m, false);
  const Eigen::VectorXcd values = es.eigenvalues();
  IsometryClass out;

  // Elliptic: a real eigenvector (or a point of a repeated eigenspace) inside.
  Rng rng(0xe11);
  for (Eigen::Index i = 0; i < values.size() && !out.fixed_interior_point; ++i) {
    const auto lambda = values[i];
    if (std::abs(lambda.imag()) > 1e-6 * std::abs(lambda)) continue;
    const Mat shifted = m - lambda.real() * Mat::Identity(size, size);
    Eigen::JacobiSVD<Mat> svd(shifted, Eigen::ComputeFullV);
    const Vec& s = svd.singularValues();
    int dim = 1;
    while (dim < size && s[size - 1 - dim] <= 1e-7) ++dim;
    const Mat space = svd.matrixV().rightCols(dim);
    std::vector<Vec> candidates;
    for (int j = 0; j < dim; ++j) candidates.push_back(space.col(j));
    if (dim > 1) {
      for (int j = 0; j < 200; ++j) candidates.push_back(space * random_unit(rng, dim));
    }
    for (const Vec& v : candidates) {
      const auto y = chart_point(v);
      if (!y || !d.contains(*y)) continue;
      // Jordan blocks blur eigenvectors; keep only points that are really fixed.
      double moved = std::numeric_limits<double>::infinity();
      try {
        moved = hilbert_distance(d, *y, apply_affine_chart(g, *y));
      } catch (const Error&) {
      }
      if (moved <= 1e-7) {
        out.fixed_interior_point = *y;
        break;
      }
    }
  }

  // Moduli: log-scale clusters (spread by Jordan blocks) replaced by their
  // means, then normalized to product one.
  std::vector<double> logs;
  for (Eigen::Index i = 0; i < values.size(); ++i) logs.push_back(std::log(std::abs(values[i])));
  std::sort(logs.begin(), logs.end());
  std::vector<double> smoothed(logs.size());
  for (std::size_t start = 0; start < logs.size();) {
    std::size_t end = start + 1;
    while (end < logs.size() && logs[end] - logs[end - 1] <= 1e-4) ++end;
    double mean = 0.0;
    for (std::size_t j = start; j < end; ++j) mean += logs[j];
    mean /= static_cast<double>(end - start);
    for (std::size_t j = start; j < end; ++j) smoothed[j] = mean;
    start = end;
  }
  double center = 0.0;
  for (double l : smoothed) center += l;
  center /= static_cast<double>(smoothed.size());
  const double hi = smoothed.back() - center;
  const double lo = smoothed.front() - center;
  out.lambda_max = std::exp(hi);
  out.lambda_min = std::exp(lo);
  if (out.fixed_interior_point) {
    out.kind = IsometryKind::kElliptic;
  } else if (hi - lo <= 1e-8) {
    out.kind = IsometryKind::kParabolic;
    out.lambda_max = out.lambda_min = 1.0;
  } else {
    out.kind = IsometryKind::kHyperbolic;
  }
  return out;
}

HorosphereSpec make_horosphere_spec(const ConvexDomain& d, const Hyperplane& h, const ProjPoint& p) {
  const int n = d.dim();
  if (h.covector().size() != n + 1 || p.coords().size() != n + 1) {
    throw Error(ErrorKind::kInvalidInput, "horosphere data dimension mismatch");
  }
  Vec cov = h.covector();
  if (cov.dot(homogeneous(d.basepoint())) < 0) cov = -cov;
  if (std::abs(cov.dot(p.coords())) > 1e-9) throw Error(ErrorKind::kInvalidInput, "p is not on H");
  for (const Vec& x : preservation_samples(d)) {
    if (!(cov.dot(homogeneous(x)) > 0.0)) {
      throw Error(ErrorKind::kInvalidInput, "H does not support the domain");
    }
  }
  const ConvexDomain bounded = bounded_realization(d);
  if (!in_closure(bounded, to_bounded_chart(d, p))) {
    throw Error(ErrorKind::kInvalidInput, "p is not in the closure of the domain");
  }
  Mat covm = cov;
  const Mat q = orthogonal_complement(covm, n + 1);
  Mat chart(n + 1, n + 1);
  chart.topRows(n) = q.transpose();
  chart.row(n) = cov.transpose();
  HorosphereSpec spec{h, p, Vec(q.transpose() * p.coords()), chart};
  spec.v.normalize();
  const ConvexDomain moved = horosphere_chart_domain(d, spec);
  if (!ray_escapes(moved, moved.basepoint(), spec.v)) {
    spec.v = -spec.v;
    if (!ray_escapes(moved, moved.basepoint(), spec.v)) {
      throw Error(ErrorKind::kInvalidInput, "no translation direction toward p");
    }
  }
  return spec;
}

ConvexDomain horosphere_chart_domain(const ConvexDomain& d, const HorosphereSpec& spec) {
  return projective_image(d, normalize(spec.chart));
}

double horosphere_parameter(const ConvexDomain& chart_domain, const HorosphereSpec& spec,
                            const Vec& y_chart) {
  const RayHit hit = boundary_ray(chart_domain, y_chart, -spec.v);
  if (hit.at_infinity) throw Error(ErrorKind::kGraphFailed, "ray toward -v never exits");
  return hit.t;
}

namespace {

// Leaf through y (horosphere chart): boundary points q' hit by shooting -v at
// transverse offsets, minus segments parallel to v, translated by s v.
std::vector<Vec> leaf_in_chart(const ConvexDomain& moved, const HorosphereSpec& spec, const Vec& y,
                               double s, int samples) {
  const int n = moved.dim();
  std::vector<Vec> out{y};
  if (n == 1) return out;
  Mat vm = spec.v;
  const Mat w = orthogonal_complement(vm, n);
  Rng rng(0x4040);
  for (int k = 0; k < samples; ++k) {
    Vec offset;
    if (n == 2) {
      const double u = samples > 1 ? static_cast<double>(k) / (samples - 1) : 0.5;
      offset = w.col(0) * std::sinh(8.0 * (u - 0.5));
    } else {
      const double r = std::sinh(8.0 * (k + 0.5) / samples) - 1.0 + 1e-3;
      offset = w * random_unit(rng, n - 1) * r;
    }
    const Vec z = y + offset;
    std::optional<Vec> inside;
    for (double t = 0.0; t < 1e7; t = (t == 0.0 ? 1.0 : 2.0 * t)) {
      if (moved.contains(z + t * spec.v)) {
        inside = z + t * spec.v;
        break;
      }
    }
    if (!inside) continue;
    const RayHit hit = boundary_ray(moved, *inside, -spec.v);
    if (hit.at_infinity) continue;
    const Vec& q = hit.point;
    const double eps = 1e-6 * std::max(1.0, q.norm());
    if (!moved.contains(q + eps * spec.v)) continue;  // segment ending at p
    out.push_back(q + s * spec.v);
  }
  return out;
}

}  // namespace

HorosphereLeaf horosphere_through(const ConvexDomain& d, const HorosphereSpec& spec, const Vec& x,
                                  int samples) {
  if (!d.contains(x)) throw Error(ErrorKind::kNotInterior, "horosphere through a non-interior point");
  const ConvexDomain moved = horosphere_chart_domain(d, spec);
  const ProjMap chart = normalize(spec.chart);
  const Vec y = apply_affine_chart(chart, x);
  HorosphereLeaf leaf;
  leaf.s = horosphere_parameter(moved, spec, y);
  leaf.chart_points = leaf_in_chart(moved, spec, y, leaf.s, samples);
  const Mat back = spec.chart.inverse();
  for (const Vec& c : leaf.chart_points) {
    if (auto pt = chart_point(back * homogeneous(c))) leaf.points.push_back(*pt);
  }
  return leaf;
}

HorosphereInvariance horosphere_invariance_check(const ConvexDomain& d, const HorosphereSpec& spec,
                                                 const ProjMap& g, Rng& rng) {
  if (!g.invertible()) throw Error(ErrorKind::kSingularMap, "isometries are invertible");
  const ProjPoint gp(g.matrix() * spec.p.coords());
  const Hyperplane gh(g.matrix().transpose().inverse() * spec.h.covector());
  const double hdist = std::min((gh.covector() - spec.h.covector()).norm(),
                                (gh.covector() + spec.h.covector()).norm());
  if (gp.distance(spec.p) > kFixTolerance || hdist > kFixTolerance) {
    throw Error(ErrorKind::kNotFixed, "map does not fix (H, p)");
  }
  const ConvexDomain moved = horosphere_chart_domain(d, spec);
  const ProjMap conj = normalize(spec.chart * g.matrix() * spec.chart.inverse());
  HorosphereInvariance out;
  const std::vector<Vec> ys = sample_interior(moved, rng, 200, 4.0);
  for (const Vec& y : ys) {
    const Vec gy = apply_affine_chart(conj, y);
    if (!moved.contains(gy)) throw Error(ErrorKind::kNotPreserved, "map leaves the domain");
    const double s0 = horosphere_parameter(moved, spec, y);
    const double s1 = horosphere_parameter(moved, spec, gy);
    out.leaf_deviation = std::max(out.leaf_deviation, std::abs(s1 - s0));
  }
  for (std::size_t i = 0; i < std::min<std::size_t>(5, ys.size()); ++i) {
    const double s = horosphere_parameter(moved, spec, ys[i]);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Vec& q : leaf_in_chart(moved, spec, ys[i], s, 40)) {
      const double sq = horosphere_parameter(moved, spec, apply_affine_chart(conj, q));
      lo = std::min(lo, sq);
      hi = std::max(hi, sq);
    }
    out.foliation_spread = std::max(out.foliation_spread, (hi - lo) / (1.0 + std::abs(hi)));
  }
  out.samples = static_cast<int>(ys.size());
  out.leaf_preserving = out.leaf_deviation < 1e-6;
  out.foliation_preserving = out.foliation_spread < 1e-6;
  return out;
}

OneParameterGroup one_param_from_sequence(std::span<const ProjMap> gs, std::span<const double> ts) {
  if (gs.empty()) throw Error(ErrorKind::kInvalidInput, "empty sequence");
  if (!ts.empty() && ts.size() != gs.size()) {
    throw Error(ErrorKind::kInvalidInput, "parameters do not match the sequence");
  }
  OneParameterGroup out;
  std::vector<Mat> unit;
  for (const ProjMap& g : gs) {
    if (!g.invertible()) throw Error(ErrorKind::kSingularMap, "singular sequence element");
    Mat a = unimodular(g.matrix());
    if (a.determinant() < 0.0) {
      if (a.rows() % 2 == 0) throw Error(ErrorKind::kNoLogarithm, "orientation reversing element");
      a = -a;
    }
    const MatrixLog log = matrix_log(a);
    const double norm = log.log.norm();
    if (norm < 1e-12) throw Error(ErrorKind::kNoLogarithm, "zero logarithm");
    out.methods.push_back(log.method);
    unit.push_back(log.log / norm);
  }
  const int tail = std::max<int>(1, static_cast<int>(gs.size()) / 4);
  const std::size_t start = gs.size() - static_cast<std::size_t>(tail);
  double deviation = 0.0;
  for (std::size_t i = start; i < unit.size(); ++i) {
    for (std::size_t j = i + 1; j < unit.size(); ++j) {
      deviation = std::max(deviation, (unit[i] - unit[j]).norm());
    }
  }
  if (deviation >= kCauchyTolerance) {
    throw Error(ErrorKind::kNonConvergent, "normalized logarithms do not converge");
  }
  out.eta = unit.back();
  out.cauchy_deviation = deviation;
  out.tail_length = tail;
  return out;
}

OsculationReport osculating_ellipsoid_check(const ConvexDomain& d, const Vec& p) {
  if (!on_boundary(d, p)) throw Error(ErrorKind::kNotBoundary, "point not on boundary");
  const int n = d.dim();
  const Vec nu = inward_normal_at(d, p);
  Mat num = nu;
  const Mat t = orthogonal_complement(num, n);
  const int k = n - 1;
  const double hmax = 1e3 * std::max(1.0, p.norm());
  auto f = [&](const Vec& y) {
    const double h = normal_height(d, p + t * y, nu, hmax);
    if (!std::isfinite(h)) throw Error(ErrorKind::kGraphFailed, "boundary is not a graph near p");
    return h;
  };
  OsculationReport out;
  out.radii = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  if (k == 0) {
    out.ratios.assign(out.radii.size(), 0.0);
    return out;
  }
  const double r = 1e-2;
  Mat hess(k, k);
  for (int i = 0; i < k; ++i) {
    hess(i, i) = (f(r * Vec::Unit(k, i)) + f(-r * Vec::Unit(k, i))) / (r * r);
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const Vec e = Vec::Unit(k, i) + Vec::Unit(k, j);
      const double both = (f(r * e) + f(-r * e)) / (r * r);
      hess(i, j) = hess(j, i) = 0.5 * (both - hess(i, i) - hess(j, j));
    }
  }
  out.hessian = hess;
  Eigen::SelfAdjointEigenSolver<Mat> es(hess);
  const Vec ev = es.eigenvalues();
  std::vector<Vec> dirs;
  for (int i = 0; i < k; ++i) {
    dirs.push_back(Vec::Unit(k, i));
    dirs.push_back(-Vec::Unit(k, i));
  }
  Rng rng(0x05c);
  for (int i = 0; i < 4 * k; ++i) dirs.push_back(random_unit(rng, k));
  const bool definite = ev.minCoeff() > 1e-6 * std::max(1.0, ev.maxCoeff());
  // y = A z with A = (H/2)^{-1/2}, so f(y) ~ |z|^2 when H is definite.
  Mat a = Mat::Identity(k, k);
  if (definite) {
    a = es.eigenvectors() * (0.5 * ev).cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();
  }
  for (double rho : out.radii) {
    double sum = 0.0;
    for (const Vec& e : dirs) sum += f(rho * (a * e)) / (rho * rho);
    out.ratios.push_back(sum / static_cast<double>(dirs.size()));
  }
  out.limit = out.ratios.back();
  out.osculating = definite && std::abs(out.ratios[out.ratios.size() - 2] - 1.0) <= 1e-2 &&
                   std::abs(out.ratios.back() - 1.0) <= 1e-2;
  return out;
}

SingularLimitReport check_singular_limit(const ConvexDomain& d, std::span<const ProjMap> seq,
                                         Rng& rng) {
  const SequenceLimit lim = limit_of_sequence(seq);
  SingularLimitReport out{lim.limit};
  const ConvexDomain bounded = bounded_realization(d);
  const Mat chart = d.bounded_chart() ? d.bounded_chart()->matrix()
                                      : Mat(Mat::Identity(d.dim() + 1, d.dim() + 1));
  auto misses = [&](const std::vector<ProjPoint>& basis) {
    if (basis.empty()) return true;
    const int k = static_cast<int>(basis.size());
    for (int trial = 0; trial < 200; ++trial) {
      const Vec c = trial < k ? Vec(Vec::Unit(k, trial)) : random_unit(rng, k);
      Vec x = Vec::Zero(d.dim() + 1);
      for (int j = 0; j < k; ++j) x += c[j] * basis[static_cast<std::size_t>(j)].coords();
      const auto y = chart_point(chart * x);
      if (y && bounded.contains(*y)) return false;
    }
    return true;
  };
  out.kernel_misses_domain = misses(lim.limit.kernel_basis());
  out.range_misses_domain = misses(lim.limit.range_basis());
  std::vector<Vec> xs = sample_interior(d, rng, 10, 3.0);
  xs.insert(xs.begin(), d.basepoint());
  out.range_meets_boundary = true;
  for (const Vec& x : xs) {
    const auto y = chart_point(chart * (lim.limit.matrix() * homogeneous(x)));
    if (!y || bounded.contains(*y) || !in_closure(bounded, *y)) out.range_meets_boundary = false;
  }
  const Vec x0 = homogeneous(d.basepoint());
  const auto last = chart_point(chart * (seq.back().matrix() * x0));
  const auto target = chart_point(chart * (lim.limit.matrix() * x0));
  out.orbit_deviation = (last && target) ? (*last - *target).norm()
                                         : std::numeric_limits<double>::infinity();
  out.orbit_converges = out.orbit_deviation < 1e-6;
  return out;
}

}  // namespace qhd
