#pragma once

// JSON input of domains, matrices, generator sets and points; JSON, CSV and
// SVG number formatting (9 significant digits).
//
// Domain spec: {"type": T, "params": {...}} with T one of
//   a catalog id ("iii" or "(iii)"); placeholders take params.base (a domain spec)
//   "polytope"   params.covectors: [[h_1..h_{n+1}], ...]
//   "ball"       params.center, params.radius (default radius 1)
//   "disk"       the unit disk; "orthant" params.n; "triangle" (projective,
//                quadrant chart); "affine_triangle"; "parabola"; "slab"
//   "quadratic"  params.basepoint and params.constraints: [{"Q","b","c"}],
//                region x.Qx + b.x + c < 0 for positive semidefinite Q
//   "oracle-composite" params.op "intersection" | "product", params.parts

#include <string>
#include <vector>

#include "json.hpp"

#include "qhd/convex_domain.hpp"
#include "qhd/orbit.hpp"

namespace qhd {

using Json = nlohmann::json;

// Inline JSON when the argument starts with '[' or '{', else a file path.
Json read_json_arg(const std::string& arg);

std::string normalize_catalog_id(std::string id);

ConvexDomain domain_from_json(const Json& spec);
Mat matrix_from_json(const Json& j);
// Square (n+1)x(n+1) projective matrices, or n x n linear parts embedded.
ProjMap map_from_json(const Json& j, int n);
// [m1, m2, ...] or {"generators": [{"matrix": m, "label": s}, ...]}.
// Inverses are added.
GeneratorSet generators_from_json(const Json& j, int n);
// n affine coordinates, or n+1 homogeneous ones (must not be at infinity).
Vec point_from_json(const Json& j, int n);

double round9(double x);
Json num(double x);  // rounded to 9 significant digits; non-finite as a string
Json vec_json(const Vec& v);
Json mat_json(const Mat& m);
std::string fmt9(double x);

}  // namespace qhd
