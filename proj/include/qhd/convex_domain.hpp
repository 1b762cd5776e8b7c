#pragma once

// Convex domains given by membership oracles in the affine chart
// x_{n+1} = 1 of RP^n, together with boundary probing: chord endpoints,
// faces, supporting hyperplanes, conic faces and convex sums.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qhd/projective.hpp"

namespace qhd {

using Rng = std::mt19937_64;
using Membership = std::function<bool(const Vec&)>;
using NormalField = std::function<Vec(const Vec&)>;

// Rays that stay inside beyond this parameter (times max(1, |x|) for the ray
// origin x) are recession directions.
inline constexpr double kEscapeBound = 1e9;
// p is on the boundary iff membership flips within this distance of p.
inline constexpr double kBoundaryTolerance = 1e-9;

class ConvexDomain {
 public:
  // Throws kNotInterior if the basepoint fails the membership test.
  ConvexDomain(int dim, Vec basepoint, Membership membership, std::string tag = {});

  int dim() const { return dim_; }
  const Vec& basepoint() const { return basepoint_; }
  const std::string& tag() const { return tag_; }
  bool contains(const Vec& x) const { return membership_(x); }
  const Membership& membership() const { return membership_; }

  // Outward normal at boundary points, when a closed form is known.
  ConvexDomain& set_outward_normal(NormalField field);
  bool has_outward_normal() const { return static_cast<bool>(normal_); }
  Vec outward_normal(const Vec& p) const { return normal_(p); }

  // Projective change of coordinates under which the closure is bounded.
  ConvexDomain& set_bounded_chart(ProjMap chart);
  const std::optional<ProjMap>& bounded_chart() const { return bounded_chart_; }

  ConvexDomain with_basepoint(const Vec& basepoint) const;

 private:
  int dim_;
  Vec basepoint_;
  Membership membership_;
  std::string tag_;
  NormalField normal_;
  std::optional<ProjMap> bounded_chart_;
};

struct RayHit {
  bool at_infinity = false;
  double t = 0.0;  // exit parameter along the unit direction
  Vec point;       // x + t u, empty when at infinity
};

// sup{t : x + t u in domain}, by doubling then bisection to full double
// precision. u is normalized internally.
RayHit boundary_ray(const ConvexDomain& d, const Vec& x, const Vec& u);

// Doubling-only test that the ray from x in direction u never exits.
bool ray_escapes(const ConvexDomain& d, const Vec& x, const Vec& u);

// Membership flips within kBoundaryTolerance (scaled by |p|) along the
// basepoint ray through p.
bool on_boundary(const ConvexDomain& d, const Vec& p);

// Signed gap along the ray from the basepoint through z: exit parameter minus
// |z - basepoint|. Positive inside, negative outside.
double radial_gap(const ConvexDomain& d, const Vec& z);

// Membership of the closure: z itself or an arbitrarily small push toward the
// basepoint lies inside.
bool in_closure(const ConvexDomain& d, const Vec& z, double slack = 1e-9);

// min{s >= 0 : z + s nu in d}, infinity beyond hmax. With nu an inward
// normal at a boundary point this is the boundary written as a graph over the
// tangent plane.
double normal_height(const ConvexDomain& d, const Vec& z, const Vec& nu, double hmax);

// Inward unit normal of a
// supporting hyperplane at p, without the sampled certification done by
// supporting_hyperplane.
Vec inward_normal_at(const ConvexDomain& d, const Vec& p);

struct FaceDescriptor {
  ProjPoint representative;
  std::vector<ProjPoint> span_basis;  // affine span: p and p + e_i
  std::vector<Vec> directions;        // orthonormal basis of the face directions
  int dim = 0;
};

// Face of the boundary point p, estimated by probing segments through p
// inside a supporting hyperplane.
FaceDescriptor face_of(const ConvexDomain& d, const Vec& p);
bool is_extreme(const ConvexDomain& d, const Vec& p);

// Hyperplane h through p with h > 0 on sampled interior points. Uses the
// outward normal field when present, else a hard-margin separation fit.
Hyperplane supporting_hyperplane(const ConvexDomain& d, const Vec& p);

struct ConicFaceResult {
  bool conic = false;
  std::vector<Hyperplane> chain;  // certificate when conic
  int candidates_examined = 0;
  std::string reason;
};

ConicFaceResult is_conic_face(const ConvexDomain& d, const FaceDescriptor& face,
                              int budget = 10000);

// A convex domain living in a projective subspace of RP^n. Chart point y of
// the summand corresponds to the homogeneous vector basis * (y, 1).
struct EmbeddedDomain {
  Mat basis;  // (n+1) x (k+1)
  std::optional<ConvexDomain> domain;  // absent for a single point (k = 0)

  static EmbeddedDomain point(const Vec& homogeneous);
  int k() const { return static_cast<int>(basis.cols()) - 1; }
  bool contains(const Vec& y) const;
  Vec basepoint() const;
};

// Omega_1 (+) Omega_2: union of open segments joining the two summands.
ConvexDomain convex_sum(const EmbeddedDomain& first, const EmbeddedDomain& second,
                        std::string tag = "convex-sum");

// Sampled test that no complete line lies inside.
bool is_properly_convex(const ConvexDomain& d, int direction_budget, Rng& rng);

// Pushforward of d under an affine map.
ConvexDomain affine_image(const ConvexDomain& d, const AffineMap& a);
// Image of d under a projective map whose image avoids the hyperplane at
// infinity. Membership pulls chart points back through g^{-1}.
ConvexDomain projective_image(const ConvexDomain& d, const ProjMap& g);

Vec random_unit(Rng& rng, int dim);

// Interior samples: uniform direction from the basepoint and Hilbert
// distance r uniform in [0, max_radius] along that chord.
std::vector<Vec> sample_interior(const ConvexDomain& d, Rng& rng, int count, double max_radius);
// Boundary points hit by rays from the basepoint in random directions.
std::vector<Vec> sample_boundary(const ConvexDomain& d, Rng& rng, int count);

// Chart image of a projective point under the bounded chart of d (or the
// identity chart if none is set).
Vec to_bounded_chart(const ConvexDomain& d, const ProjPoint& p);
ProjPoint from_bounded_chart(const ConvexDomain& d, const Vec& y);
// d transported to its bounded chart.
ConvexDomain bounded_realization(const ConvexDomain& d);

// Maps applied to chart points; throws kInvalidInput at infinity.
Vec apply_affine_chart(const ProjMap& g, const Vec& x);

// True if g maps every sample into d.
bool preserves(const ConvexDomain& d, const ProjMap& g, const std::vector<Vec>& samples);

}  // namespace qhd
