#pragma once

// Concrete convex domains: intersections of smooth convex constraints,
// polytopes, balls, and the standard models used across the toolkit.

#include <functional>
#include <string>
#include <vector>

#include "qhd/convex_domain.hpp"

namespace qhd {

// Convex function; the domain is where every constraint value is negative.
struct Constraint {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
};

Constraint linear_constraint(const Vec& normal, double offset);  // normal . x + offset

// Intersection of the open sublevel sets {value < 0}. The outward normal at a
// boundary point is the normalized sum of the unit gradients of the active
// constraints.
ConvexDomain constraint_domain(int dim, Vec basepoint, std::vector<Constraint> constraints,
                               std::string tag);

// Projective chart y = (x - c) / (1 + a.(x - c)). Bounded on the closure of a
// domain when a.u > 0 on its recession directions and the denominator stays
// positive.
ProjMap chart_from_covector(const Vec& a, const Vec& c);

ConvexDomain ball(const Vec& center, double radius);
// {x : h.(x, 1) > 0 for each covector h}. Basepoint is a Chebyshev center.
ConvexDomain polytope(const std::vector<Vec>& covectors, std::string tag = "polytope");
// Open positive orthant of R^n.
ConvexDomain orthant(int n);
// The projective triangle {X_i > 0} of RP^2 seen in the chart X_3 = 1 (the open
// quadrant), with the bounded chart (x, y) / (1 + x + y).
ConvexDomain projective_triangle();
// The affine triangle with vertices (0,0), (1,0), (0,1).
ConvexDomain affine_triangle();
ConvexDomain parabola();                  // {y > x^2}
ConvexDomain slab();                      // {0 < y < 1}, not properly convex
ConvexDomain intersection(const std::vector<ConvexDomain>& parts, std::string tag);
ConvexDomain product(const ConvexDomain& a, const ConvexDomain& b, std::string tag);

}  // namespace qhd
