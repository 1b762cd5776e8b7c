#pragma once

// Orbits of interior points under finitely generated groups of projective
// maps, boundary accumulation (limit set) estimates and their checks.

#include <string>
#include <vector>

#include "qhd/convex_domain.hpp"

namespace qhd {

struct GeneratorSet {
  std::vector<ProjMap> gens;
  std::vector<std::string> labels;
  std::vector<int> inverse;  // index of the inverse of each generator

  // Adds each map together with its inverse (labelled "name^-1").
  static GeneratorSet with_inverses(const std::vector<ProjMap>& maps,
                                    const std::vector<std::string>& labels);
  // One-parameter family t -> f(t) sampled at t = 2^k, k = -3..6, plus inverses.
  void add_family(const std::function<ProjMap(double)>& family, const std::string& label);
  int size() const { return static_cast<int>(gens.size()); }
  std::string word_label(const std::vector<int>& word) const;
};

using Word = std::vector<int>;  // generator indices in the order they are applied

struct OrbitPoint {
  ProjPoint point;
  Word word;
  bool outside_chart = false;  // at infinity of the affine chart of d
};

struct OrbitReport {
  std::vector<OrbitPoint> points;
  int violations = 0;  // images not in d
};

// All words of length <= word_len applied to x0, deduplicated at 1e-9.
OrbitReport orbit(const ConvexDomain& d, const GeneratorSet& gens, const Vec& x0, int word_len);

struct LimitCluster {
  ProjPoint representative;
  Vec chart;                     // bounded chart coordinates of the representative
  int multiplicity = 0;
  std::vector<Vec> members;      // bounded chart coordinates
  Word word;                     // word of the representative
  std::vector<Word> witness;     // prefixes approaching the representative
  std::vector<double> witness_distances;
};

struct LimitSetEstimate {
  std::vector<LimitCluster> clusters;
  double epsilon = 1e-6;
  int budget = 0;    // nodes explored
  int violations = 0;
  std::optional<ProjMap> chart;  // bounded chart used for the distances
};

// Breadth-first exploration up to budget distinct orbit points; points within
// epsilon of the boundary in the bounded chart are clustered by single
// linkage at 3 epsilon. Singleton clusters are dropped.
LimitSetEstimate limit_set_estimate(const ConvexDomain& d, const GeneratorSet& gens,
                                    const Vec& x0, int budget, double epsilon = 1e-6);

// max over representatives xi of the chart distance from g(xi) to the nearest
// cluster member.
double invariance_check(const LimitSetEstimate& estimate, const ProjMap& g);

struct HullReport {
  int samples = 0;
  int covered = 0;
  double fraction = 0.0;
};

// Fraction of sampled interior points inside the hull of the cluster
// representatives and the given recession directions, in the bounded chart.
HullReport hull_closure_check(const ConvexDomain& d, const LimitSetEstimate& estimate,
                              int sample_budget, Rng& rng,
                              const std::vector<Vec>& recession = {}, double tol = 1e-7);

}  // namespace qhd
