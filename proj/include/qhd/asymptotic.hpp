#pragma once

// Asymptotic cones AC(d) = {u : x + t u in d for all t >= 0}, the foliation of
// d by translates of AC°, and cone points.

#include <optional>
#include <string>
#include <vector>

#include "qhd/convex_domain.hpp"

namespace qhd {

struct AsymptoticCone {
  int ambient_dim = 0;
  int intrinsic_dim = 0;
  Mat span;                  // n x intrinsic_dim, orthonormal columns
  Vec central;               // unit vector of AC°, empty when the cone is {0}
  std::vector<Vec> members;  // unit member directions found by the search
  Vec basepoint;
  std::optional<ConvexDomain> domain;

  // Escape test of the ray from the basepoint.
  bool contains(const Vec& u) const;
  // Relative interior: a ball of relative radius 1e-3 inside the span stays in
  // the cone (sampled).
  bool interior(const Vec& u) const;
  // Unit direction of AC°, sampled from convex combinations of members pulled
  // toward the central direction.
  Vec sample_interior_direction(Rng& rng) const;
};

AsymptoticCone asymptotic_cone(const ConvexDomain& d);

// xi + AC° inside d, tested at radii 1, 10, 100 on sampled cone directions.
bool cone_contained(const ConvexDomain& d, const AsymptoticCone& ac, const Vec& xi, Rng& rng,
                    int directions = 200);

struct Leaf {
  Vec cone_point;  // xi_x
  Vec offset;      // x - xi_x, a vector of AC°
  bool certified = false;  // xi_x + AC° passed cone_contained
};

// Cone point of the leaf through the interior point x: the boundary point
// x - s(w) w reached backward along cone directions w that is lowest in the
// central direction. Throws kEmptyCone when AC = {0}.
Leaf leaf_and_cone_point(const ConvexDomain& d, const AsymptoticCone& ac, const Vec& x);

// p is a cone point iff the leaf through p + delta c ends at p and p + AC°
// lies in d.
bool is_cone_point(const ConvexDomain& d, const AsymptoticCone& ac, const Vec& p);

struct ExtremeConeReport {
  int samples = 0;
  int extreme = 0;
  int cone_points = 0;
  std::vector<Vec> disagreements;
};

ExtremeConeReport extreme_equals_conepoints(const ConvexDomain& d, const AsymptoticCone& ac,
                                            int boundary_budget, Rng& rng);

struct AcFaceReport {
  bool applicable = false;
  std::string reason;
  int extreme_samples = 0;
  int interior_failures = 0;  // extreme xi with xi + AC° not inside
  int summand_failures = 0;   // extreme points outside both summand closures
};

// Optional decomposition d = F1 (+) F2 by projective summands.
AcFaceReport corollary_acface_checks(const ConvexDomain& d, const AsymptoticCone& ac, Rng& rng,
                                     const EmbeddedDomain* first = nullptr,
                                     const EmbeddedDomain* second = nullptr);

}  // namespace qhd
