#pragma once

// Derivative-free minimization over the unit sphere of a subspace. Used for
// face probing, asymptotic-cone span refinement and leaf tracing, where the
// objectives come from membership oracles and are not differentiable.

#include <cstdint>
#include <functional>

#include "qhd/projective.hpp"

namespace qhd {

struct SphereSearch {
  Vec best;  // unit vector in the coordinates of the basis columns
  double value = 0.0;
  int evaluations = 0;
};

struct SphereSearchOptions {
  double initial_step = 0.25;
  double min_step = 1e-10;
  double stop_below = -1e300;  // early exit once the value drops below this
  int max_evaluations = 20000;
  // Extra random unit directions tried before each step halving (Euclidean
  // search only). They let the search leave ridges of nonsmooth objectives.
  int random_directions = 0;
  std::uint64_t seed = 0;
};

// Compass search on the unit sphere of R^k: trial points normalize(x +- s e_j),
// best move accepted, s halved when no move improves.
SphereSearch compass_search_sphere(const std::function<double(const Vec&)>& f, Vec start,
                                   const SphereSearchOptions& options = {});

// Compass search in R^k with step halving, first improving move accepted.
SphereSearch compass_search(const std::function<double(const Vec&)>& f, Vec start,
                            const SphereSearchOptions& options = {});

// Orthonormal basis (columns) of the orthogonal complement of the columns of a
// inside R^n. a may have zero columns.
Mat orthogonal_complement(const Mat& a, int n);

}  // namespace qhd
