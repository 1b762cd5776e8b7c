#pragma once

// Small dense linear programming used for convex-hull membership and
// hard-margin separation. Problem sizes here are tens of variables.

#include "qhd/projective.hpp"

namespace qhd::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Result {
  Status status = Status::kInfeasible;
  Vec x;
  double objective = 0.0;
};

// maximize c.x subject to A x = b, x >= 0 (two-phase simplex, Bland's rule).
Result maximize(const Mat& a, const Vec& b, const Vec& c);

// maximize c.x subject to G x <= h, x >= 0.
Result maximize_inequalities(const Mat& g, const Vec& h, const Vec& c);

// True if y lies in the convex hull of the columns of points, allowing a
// residual of tol in each coordinate.
bool in_convex_hull(const Mat& points, const Vec& y, double tol = 1e-9);

}  // namespace qhd::lp
