#pragma once

#include <optional>

#include "qhd/convex_domain.hpp"

namespace qhd {

// The chord through p1, p2 ordered s1, p1, p2, s2. Missing endpoints lie at
// infinity in the chart.
struct HilbertPointPair {
  Vec p1, p2;
  std::optional<Vec> s1, s2;
};

HilbertPointPair chord(const ConvexDomain& d, const Vec& p1, const Vec& p2);

// ln(|s1 p2| |p1 s2| / (|s1 p1| |p2 s2|)); a ratio with an endpoint at
// infinity is replaced by its limit 1.
double hilbert_distance(const ConvexDomain& d, const Vec& p1, const Vec& p2);

// ln(max modulus / min modulus) of the eigenvalues.
double translation_length_spectral(const ProjMap& g);

struct EmpiricalTranslation {
  double value = 0.0;
  Vec argmin;
  int samples = 0;
};

// min over sampled x of d(x, g x), samples spread over Hilbert balls of radius
// 1, 2, 4, ..., 32 about the basepoint.
EmpiricalTranslation translation_length_empirical(const ConvexDomain& d, const ProjMap& g,
                                                  int sample_budget, Rng& rng);

}  // namespace qhd
