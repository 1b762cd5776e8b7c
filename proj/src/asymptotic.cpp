#include "qhd/asymptotic.hpp"

#include <algorithm>
#include <cmath>

#include "qhd/parallel.hpp"
#include "qhd/search.hpp"

namespace qhd {

namespace {

constexpr double kSpanTolerance = 1e-3;
constexpr double kConePointTolerance = 1e-6;

double log_exit(const ConvexDomain& d, const Vec& x, const Vec& u) {
  const RayHit hit = boundary_ray(d, x, u);
  return hit.at_infinity ? 50.0 : std::log(std::max(hit.t, 1e-300));
}

Mat span_of(const std::vector<Vec>& vs, int n) {
  if (vs.empty()) return Mat(n, 0);
  Mat m(n, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  int rank = 0;
  while (rank < s.size() && s[rank] > kSpanTolerance * s[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

bool AsymptoticCone::contains(const Vec& u) const {
  if (u.norm() == 0.0) return true;
  return ray_escapes(*domain, basepoint, u);
}

bool AsymptoticCone::interior(const Vec& u) const {
  if (intrinsic_dim == 0 || u.norm() == 0.0) return false;
  const Vec unit = u.normalized();
  if ((unit - span * (span.transpose() * unit)).norm() > kSpanTolerance) return false;
  if (!contains(unit)) return false;
  if (intrinsic_dim == 1) return true;
  const Mat local = orthogonal_complement(Mat(span.transpose() * unit), intrinsic_dim);
  Rng rng(0x1a7);
  const int k = static_cast<int>(local.cols());
  for (int i = 0; i < 4 * k + 8; ++i) {
    Vec w;
    if (i < 2 * k) {
      w = (i % 2 == 0 ? 1.0 : -1.0) * local.col(i / 2);
    } else {
      w = local * random_unit(rng, k);
    }
    if (!contains(unit + kSpanTolerance * (span * w))) return false;
  }
  return true;
}

Vec AsymptoticCone::sample_interior_direction(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  Vec u = 0.25 * central;
  for (int j = 0; j < 3; ++j) u += weight(rng) * members[pick(rng)];
  return u.normalized();
}

AsymptoticCone asymptotic_cone(const ConvexDomain& d) {
  const int n = d.dim();
  AsymptoticCone ac;
  ac.ambient_dim = n;
  ac.basepoint = d.basepoint();
  ac.domain = d;
  Rng rng(0xac0 + static_cast<std::uint64_t>(n));
  const Vec& x = d.basepoint();

  std::vector<Vec> grid;
  for (int i = 0; i < n; ++i) {
    grid.push_back(Vec::Unit(n, i));
    grid.push_back(-Vec::Unit(n, i));
  }
  if (n <= 6) {
    // Remaining nonzero vectors of {-1, 0, 1}^n.
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      Vec v(n);
      int c = code;
      int nonzero = 0;
      for (int i = 0; i < n; ++i) {
        v[i] = static_cast<double>(c % 3) - 1.0;
        c /= 3;
        if (v[i] != 0.0) ++nonzero;
      }
      if (nonzero >= 2) grid.push_back(v.normalized());
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (double s : {1.0, -1.0}) {
          grid.push_back((Vec::Unit(n, i) + s * Vec::Unit(n, j)).normalized());
          grid.push_back((-Vec::Unit(n, i) + s * Vec::Unit(n, j)).normalized());
        }
      }
    }
  }
  while (static_cast<int>(grid.size()) < 64 * n) grid.push_back(random_unit(rng, n));

  std::vector<double> score(grid.size());
  parallel_for(static_cast<int>(grid.size()),
               [&](int i) { score[static_cast<std::size_t>(i)] = log_exit(d, x, grid[static_cast<std::size_t>(i)]); });
  std::vector<Vec> raw;
  std::vector<Vec> lattice;  // grid members, exact directions
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (score[i] >= 50.0) {
      raw.push_back(grid[i]);
      lattice.push_back(grid[i]);
    } else {
      order.push_back(i);
    }
  }
  // Climb log t(u) from the most promising directions and the axes.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  std::vector<Vec> starts;
  for (std::size_t i = 0; i < std::min<std::size_t>(order.size(), static_cast<std::size_t>(8 * n)); ++i) {
    starts.push_back(grid[order[i]]);
  }
  for (int i = 0; i < 2 * n; ++i) starts.push_back(grid[static_cast<std::size_t>(i)]);
  SphereSearchOptions options;
  options.initial_step = 0.25;
  options.min_step = 1e-10;
  options.stop_below = -49.0;
  options.max_evaluations = 800;
  std::vector<std::optional<Vec>> climbed(starts.size());
  parallel_for(static_cast<int>(starts.size()), [&](int i) {
    const auto r = compass_search_sphere([&](const Vec& u) { return -log_exit(d, x, u); },
                                         starts[static_cast<std::size_t>(i)], options);
    if (r.value <= -50.0) climbed[static_cast<std::size_t>(i)] = r.best;
  });
  for (const auto& c : climbed) {
    if (c) raw.push_back(*c);
  }
  if (raw.empty()) {
    ac.span = Mat(n, 0);
    return ac;
  }
  // Climbed members sit on the cone boundary only up to the escape test's
  // resolution, so the span is taken from the lattice when it suffices.
  Mat first_span = span_of(raw, n);
  if (!lattice.empty()) {
    const Mat lattice_span = span_of(lattice, n);
    if (lattice_span.cols() == first_span.cols()) first_span = lattice_span;
  }
  const int k = static_cast<int>(first_span.cols());
  // Clean members: project into the span, then add random in-span members.
  for (const Vec& u : raw) {
    const Vec v = (first_span * (first_span.transpose() * u)).normalized();
    if (ray_escapes(d, x, v)) ac.members.push_back(v);
  }
  Vec inspan_mean = Vec::Zero(n);
  for (int i = 0; i < 200; ++i) {
    const Vec v = first_span * random_unit(rng, k);
    if (ray_escapes(d, x, v)) {
      ac.members.push_back(v);
      inspan_mean += v;
    }
  }
  if (ac.members.empty()) ac.members = raw;
  ac.span = span_of(ac.members, n);
  ac.intrinsic_dim = static_cast<int>(ac.span.cols());
  Vec mean = Vec::Zero(n);
  for (const Vec& u : ac.members) mean += u;
  ac.central = mean.normalized();
  if (!ac.interior(ac.central)) {
    // Members crowd one side of the cone; average only the in-span samples.
    if (inspan_mean.norm() > 0.0 && ac.interior(inspan_mean)) ac.central = inspan_mean.normalized();
  }
  return ac;
}

bool cone_contained(const ConvexDomain& d, const AsymptoticCone& ac, const Vec& xi, Rng& rng,
                    int directions) {
  if (ac.intrinsic_dim == 0) return false;
  for (int i = 0; i < directions; ++i) {
    const Vec u = i == 0 ? ac.central : ac.sample_interior_direction(rng);
    for (double r : {1.0, 10.0, 100.0}) {
      if (!d.contains(xi + r * u)) return false;
    }
  }
  return true;
}

Leaf leaf_and_cone_point(const ConvexDomain& d, const AsymptoticCone& ac, const Vec& x) {
  if (ac.intrinsic_dim == 0) throw Error(ErrorKind::kEmptyCone, "asymptotic cone is {0}");
  if (!d.contains(x)) throw Error(ErrorKind::kNotInterior, "leaf through a non-interior point");
  const Vec& c = ac.central;
  const int k = ac.intrinsic_dim;
  const Mat t = ac.span * orthogonal_complement(Mat(ac.span.transpose() * c), k);
  auto direction = [&](const Vec& a) -> Vec { return (c + t * a).normalized(); };
  auto exit_point = [&](const Vec& w) -> std::optional<Vec> {
    const RayHit hit = boundary_ray(d, x, -w);
    if (hit.at_infinity) return std::nullopt;
    return hit.point;
  };
  Vec best = Vec::Zero(t.cols());
  if (t.cols() > 0) {
    auto objective = [&](const Vec& a) {
      const Vec w = direction(a);
      if (!ac.contains(w)) return 1e300;
      const auto p = exit_point(w);
      return p ? c.dot(*p) : 1e300;
    };
    SphereSearchOptions options;
    options.initial_step = 0.5;
    options.min_step = 1e-10;
    options.max_evaluations = 4000;
    options.random_directions = 4 * static_cast<int>(t.cols());
    options.seed = 0x1eaf;
    best = compass_search(objective, best, options).best;
  }
  const auto xi = exit_point(direction(best));
  if (!xi) throw Error(ErrorKind::kInvalidInput, "domain contains a line along the cone");
  Leaf leaf;
  leaf.cone_point = *xi;
  leaf.offset = x - *xi;
  Rng rng(0x1eaf);
  leaf.certified = cone_contained(d, ac, *xi, rng, 50);
  return leaf;
}

bool is_cone_point(const ConvexDomain& d, const AsymptoticCone& ac, const Vec& p) {
  if (ac.intrinsic_dim == 0) return false;
  const double scale = std::max(1.0, p.norm());
  const Vec x = p + 1e-4 * scale * ac.central;
  if (!d.contains(x)) return false;
  const Leaf leaf = leaf_and_cone_point(d, ac, x);
  if ((leaf.cone_point - p).norm() > kConePointTolerance * (1.0 + p.norm())) return false;
  Rng rng(0xc0e);
  return cone_contained(d, ac, p, rng, 50);
}

ExtremeConeReport extreme_equals_conepoints(const ConvexDomain& d, const AsymptoticCone& ac,
                                            int boundary_budget, Rng& rng) {
  const std::vector<Vec> ps = sample_boundary(d, rng, boundary_budget);
  std::vector<char> extreme(ps.size()), cone(ps.size());
  parallel_for(static_cast<int>(ps.size()), [&](int i) {
    const Vec& p = ps[static_cast<std::size_t>(i)];
    extreme[static_cast<std::size_t>(i)] = is_extreme(d, p);
    cone[static_cast<std::size_t>(i)] = is_cone_point(d, ac, p);
  });
  ExtremeConeReport out;
  out.samples = static_cast<int>(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out.extreme += extreme[i];
    out.cone_points += cone[i];
    if (extreme[i] != cone[i]) out.disagreements.push_back(ps[i]);
  }
  return out;
}

AcFaceReport corollary_acface_checks(const ConvexDomain& d, const AsymptoticCone& ac, Rng& rng,
                                     const EmbeddedDomain* first, const EmbeddedDomain* second) {
  AcFaceReport out;
  if (ac.intrinsic_dim == 0) {
    out.reason = "asymptotic cone is {0}";
    return out;
  }
  if (ac.intrinsic_dim == d.dim()) {
    out.reason = "domain is a cone";
    return out;
  }
  out.applicable = true;
  std::vector<Vec> extremes;
  for (const Vec& p : sample_boundary(d, rng, 100)) {
    if (extremes.size() >= 20) break;
    if (is_extreme(d, p)) extremes.push_back(p);
  }
  out.extreme_samples = static_cast<int>(extremes.size());
  std::optional<Mat> inverse;
  if (first && second) {
    Mat joint(first->basis.rows(), first->basis.cols() + second->basis.cols());
    joint << first->basis, second->basis;
    if (joint.rows() != joint.cols()) throw Error(ErrorKind::kInvalidInput, "summands must span");
    inverse = joint.inverse();
  }
  for (const Vec& xi : extremes) {
    if (!cone_contained(d, ac, xi, rng, 50)) ++out.interior_failures;
    if (!inverse) continue;
    Vec h(xi.size() + 1);
    h << xi, 1.0;
    const Vec c = *inverse * h;
    const Eigen::Index k1 = first->basis.cols();
    const Eigen::Index k2 = second->basis.cols();
    const double lambda = c[k1 - 1];
    const double mu = c[k1 + k2 - 1];
    auto in_summand = [&](const EmbeddedDomain& e, const Vec& coords, double own, double other) {
      if (std::abs(other) > 1e-9 * c.norm() || std::abs(own) < 1e-12) return false;
      if (e.k() == 0) return true;
      return in_closure(*e.domain, coords.head(e.k()) / own);
    };
    const bool ok = in_summand(*first, c.head(k1), lambda, mu) ||
                    in_summand(*second, c.segment(k1, k2), mu, lambda);
    if (!ok) ++out.summand_failures;
  }
  return out;
}

}  // namespace qhd
