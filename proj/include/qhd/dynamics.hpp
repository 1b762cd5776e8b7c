#pragma once

// Isometry classification, horospheres, one-parameter subgroups recovered from
// sequences, osculating ellipsoids and singular-limit behaviour.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhd/convex_domain.hpp"
#include "qhd/matrix_functions.hpp"

namespace qhd {

enum class IsometryKind { kElliptic, kParabolic, kHyperbolic };
const char* to_string(IsometryKind kind);

struct IsometryClass {
  IsometryKind kind = IsometryKind::kElliptic;
  double lambda_max = 1.0;  // largest eigenvalue modulus, product of moduli 1
  double lambda_min = 1.0;
  std::optional<Vec> fixed_interior_point;
  double translation_length() const;
};

// Throws kNotPreserved if g moves sampled interior points out of d.
IsometryClass classify_isometry(const ConvexDomain& d, const ProjMap& g);

struct HorosphereSpec {
  Hyperplane h;
  ProjPoint p;
  Vec v;     // unit direction toward p in the chart complementary to h
  Mat chart;  // homogeneous coordinates sending h to infinity
};

// Validates that h supports d at p and derives the translation direction.
HorosphereSpec make_horosphere_spec(const ConvexDomain& d, const Hyperplane& h, const ProjPoint& p);

// d seen in the chart complementary to spec.h.
ConvexDomain horosphere_chart_domain(const ConvexDomain& d, const HorosphereSpec& spec);

// Leaf parameter of an interior point: distance from y back to the boundary
// along -v in the horosphere chart.
double horosphere_parameter(const ConvexDomain& chart_domain, const HorosphereSpec& spec,
                            const Vec& y_chart);

struct HorosphereLeaf {
  double s = 0.0;
  std::vector<Vec> chart_points;  // horosphere chart, x's own point first
  std::vector<Vec> points;        // original chart; points at infinity dropped
};

HorosphereLeaf horosphere_through(const ConvexDomain& d, const HorosphereSpec& spec, const Vec& x,
                                  int samples);

struct HorosphereInvariance {
  double leaf_deviation = 0.0;    // max |s(g y) - s(y)|
  double foliation_spread = 0.0;  // max spread of s(g q) over q in one leaf
  bool leaf_preserving = false;
  bool foliation_preserving = false;
  int samples = 0;
};

// Throws kNotFixed unless g fixes p and h.
HorosphereInvariance horosphere_invariance_check(const ConvexDomain& d, const HorosphereSpec& spec,
                                                 const ProjMap& g, Rng& rng);

struct OneParameterGroup {
  Mat eta;  // unit Frobenius norm
  double cauchy_deviation = 0.0;
  int tail_length = 0;
  std::vector<LogMethod> methods;
  Mat at(double t) const { return matrix_exp(t * eta); }
};

// eta = lim log(g_n) / |log(g_n)| over det-normalized representatives.
OneParameterGroup one_param_from_sequence(std::span<const ProjMap> gs, std::span<const double> ts);

struct OsculationReport {
  bool osculating = false;
  double limit = 0.0;
  std::vector<double> radii;
  std::vector<double> ratios;  // mean of f / |x|^2 after normalization
  Mat hessian;
};

// Throws kGraphFailed if the boundary is not a graph over the tangent plane
// near p.
OsculationReport osculating_ellipsoid_check(const ConvexDomain& d, const Vec& p);

struct SingularLimitReport {
  ProjMap limit;
  bool kernel_misses_domain = false;
  bool range_misses_domain = false;
  bool range_meets_boundary = false;
  double orbit_deviation = 0.0;  // bounded-chart distance of g_i x to limit . x
  bool orbit_converges = false;
};

// Limit of the sequence and the incidence of K(g), R(g) with d, checked on
// samples in the bounded chart of d.
SingularLimitReport check_singular_limit(const ConvexDomain& d, std::span<const ProjMap> seq,
                                         Rng& rng);

}  // namespace qhd
