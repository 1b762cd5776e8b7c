#include "qhd/hilbert.hpp"

#include <cmath>
#include <limits>

#include "qhd/parallel.hpp"

namespace qhd {

HilbertPointPair chord(const ConvexDomain& d, const Vec& p1, const Vec& p2) {
  HilbertPointPair out{p1, p2, std::nullopt, std::nullopt};
  if (!d.contains(p1) || !d.contains(p2)) {
    throw Error(ErrorKind::kNotInterior, "chord endpoints must be interior");
  }
  const Vec u = p2 - p1;
  if (u.norm() == 0.0) return out;
  const RayHit back = boundary_ray(d, p1, -u);
  const RayHit fwd = boundary_ray(d, p2, u);
  if (!back.at_infinity) out.s1 = back.point;
  if (!fwd.at_infinity) out.s2 = fwd.point;
  return out;
}

double hilbert_distance(const ConvexDomain& d, const Vec& p1, const Vec& p2) {
  if (!d.contains(p1) || !d.contains(p2)) {
    throw Error(ErrorKind::kNotInterior, "hilbert distance needs interior points");
  }
  const Vec u = p2 - p1;
  const double len = u.norm();
  if (len == 0.0) return 0.0;
  const RayHit back = boundary_ray(d, p1, -u);
  const RayHit fwd = boundary_ray(d, p2, u);
  // |s1 p2| / |s1 p1| = 1 + len / a and |p1 s2| / |p2 s2| = 1 + len / b.
  const double first = back.at_infinity ? 0.0 : std::log1p(len / back.t);
  const double second = fwd.at_infinity ? 0.0 : std::log1p(len / fwd.t);
  return first + second;
}

double translation_length_spectral(const ProjMap& g) {
  if (!g.invertible()) throw Error(ErrorKind::kSingularMap, "translation length of a singular map");
  Eigen::EigenSolver<Mat> es(g.matrix(), false);
  const Eigen::VectorXcd values = es.eigenvalues();
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    hi = std::max(hi, std::abs(values[i]));
    lo = std::min(lo, std::abs(values[i]));
  }
  return std::log(hi / lo);
}

EmpiricalTranslation translation_length_empirical(const ConvexDomain& d, const ProjMap& g,
                                                  int sample_budget, Rng& rng) {
  const double radii[] = {1, 2, 4, 8, 16, 32};
  const int per_radius = std::max(1, sample_budget / 6);
  std::vector<Vec> samples;
  for (double r : radii) {
    const std::vector<Vec> batch = sample_interior(d, rng, per_radius, r);
    samples.insert(samples.end(), batch.begin(), batch.end());
  }
  std::vector<double> values(samples.size(), std::numeric_limits<double>::infinity());
  std::vector<char> preserved(samples.size(), 1);
  parallel_for(static_cast<int>(samples.size()), [&](int i) {
    const Vec& x = samples[static_cast<std::size_t>(i)];
    Vec y;
    try {
      y = apply_affine_chart(g, x);
    } catch (const Error&) {
      preserved[static_cast<std::size_t>(i)] = 0;
      return;
    }
    if (!d.contains(y)) {
      preserved[static_cast<std::size_t>(i)] = 0;
      return;
    }
    values[static_cast<std::size_t>(i)] = hilbert_distance(d, x, y);
  });
  EmpiricalTranslation out;
  out.value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!preserved[i]) throw Error(ErrorKind::kNotPreserved, "map moves a sample out of the domain");
    if (values[i] < out.value) {
      out.value = values[i];
      out.argmin = samples[i];
    }
  }
  out.samples = static_cast<int>(samples.size());
  return out;
}

}  // namespace qhd
