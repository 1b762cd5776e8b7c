#pragma once

// The nineteen types of properly convex quasi-homogeneous affine domains of
// dimension at most four, with automorphism generators, flags, known
// asymptotic cones and limit witnesses, plus checks run against them.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qhd/asymptotic.hpp"
#include "qhd/orbit.hpp"

namespace qhd {

struct AffineFamily {
  std::string name;
  std::function<AffineMap(double)> at;
};

struct CatalogFlags {
  bool homogeneous = false;
  bool cone = false;
  bool strictly_convex = false;
  bool decomposable = false;
  bool placeholder = false;
};

struct KnownCone {
  int dim = 0;
  Mat span;                                  // n x dim orthonormal
  std::function<bool(const Vec&)> contains;  // closed cone, unit directions
  std::function<Vec(Rng&)> sample;           // unit direction of the interior
};

struct LimitWitness {
  Vec point;        // boundary point in the chart of the entry
  AffineMap step;   // iterated from the basepoint
  int max_iterations = 60;
};

struct CatalogEntry {
  std::string id;  // roman numeral without parentheses
  std::string description;
  int dim = 0;
  ConvexDomain domain;
  std::vector<AffineFamily> families;
  GeneratorSet generators;  // families sampled at 2^k, k = -3..6, with inverses
  CatalogFlags flags;
  KnownCone known_ac;
  LimitWitness witness;
  std::optional<Vec> cone_point;
};

std::vector<std::string> catalog_ids();
CatalogEntry catalog_get(const std::string& id);  // throws kUnknownId
std::vector<CatalogEntry> catalog_list();

// Placeholder entries built over a user-supplied base body: (viii) and (xv)
// cone over a 2- or 3-dimensional body, (xviii) double cone over a
// 2-dimensional body, (xix) cone over a 3-dimensional body.
CatalogEntry catalog_placeholder(const std::string& id, const ConvexDomain& base);

// Projective map of an affine map of the entry's chart.
ProjMap family_map(const AffineFamily& f, double t);

// Each family at the largest dyadic time 2^k, k <= 6, whose map has condition
// number at most max_condition, with inverses. Breadth-first search over these
// reaches deep orbit points in a few levels, which the full dyadic sampling
// cannot do within a node budget.
GeneratorSet coarse_generators(const CatalogEntry& entry, double max_condition = 1e3);

struct EntryReport {
  std::string id;
  bool invariance = false;
  bool convexity = false;
  bool proper_convexity = false;
  bool ac_match = false;
  bool limit_witness_verified = false;
  bool cone_point_fixed = true;   // cone entries only
  bool dilation_invariant = true; // cone entries only
  bool reduced = false;           // placeholder report
  int ac_dim = 0;
  double ac_agreement = 0.0;
  double witness_distance = 0.0;
  int witness_iterations = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

EntryReport check_entry(const CatalogEntry& entry, int budget, Rng& rng);

struct AcComparison {
  int computed_dim = 0;
  int known_dim = 0;
  double agreement = 0.0;  // fraction of test directions classified alike
  double span_angle = 0.0; // largest principal angle sine between spans
  bool match = false;
};

AcComparison compare_ac(const AsymptoticCone& computed, const KnownCone& known, int directions,
                        Rng& rng);

struct SyndeticReport {
  int samples = 0;
  int covered = 0;
  double coverage = 0.0;
  int longest_word = 0;
};

// For sampled x up to Hilbert radius 30, greedy search for a word w with
// |w| <= word_len and d(w^-1 x, basepoint) <= radius.
SyndeticReport syndetic_probe(const ConvexDomain& d, const GeneratorSet& gens, double radius,
                              int word_len, int sample_budget, Rng& rng);
SyndeticReport syndetic_probe(const CatalogEntry& entry, double radius, int word_len,
                              int sample_budget, Rng& rng);

struct TransitivityReport {
  int targets = 0;
  int reached = 0;
  double worst = 0.0;  // largest final Hilbert distance
};

// Continuous family parameters t_1..t_k with f_1(t_1)...f_k(t_k) x0 close to
// each target, found by compass search on the Hilbert distance.
TransitivityReport transitivity_probe(const CatalogEntry& entry, int targets, double tol,
                                      Rng& rng);

struct ClassificationEvidence {
  int dim = 0;
  int ac_dim = 0;
  bool cone = false;
  bool strictly_convex = false;
  std::vector<int> face_census;  // count of sampled boundary points per face dimension
  std::optional<double> quadric_residual;
  std::vector<std::string> candidates;
};

ClassificationEvidence classify_against_catalog(const ConvexDomain& d, Rng& rng,
                                                int boundary_samples = 40);

}  // namespace qhd
