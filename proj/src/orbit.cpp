#include "qhd/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "qhd/lp.hpp"
#include "qhd/parallel.hpp"

namespace qhd {

namespace {

constexpr double kDedupTolerance = 1e-9;
// Clusters with fewer orbit points are isolated near-boundary points, not
// accumulation.
constexpr std::size_t kMinMultiplicity = 2;

using Key = std::vector<long long>;

Key quantize(const ProjPoint& p) {
  Key k(static_cast<std::size_t>(p.coords().size()));
  for (Eigen::Index i = 0; i < p.coords().size(); ++i) {
    k[static_cast<std::size_t>(i)] = std::llround(p.coords()[i] / kDedupTolerance);
  }
  return k;
}

struct Node {
  ProjPoint point;
  int parent = -1;
  int generator = -1;
};

struct Exploration {
  std::vector<Node> nodes;
  int violations = 0;
};

Word word_of(const std::vector<Node>& nodes, int i) {
  Word w;
  for (int j = i; nodes[static_cast<std::size_t>(j)].parent >= 0;
       j = nodes[static_cast<std::size_t>(j)].parent) {
    w.push_back(nodes[static_cast<std::size_t>(j)].generator);
  }
  std::reverse(w.begin(), w.end());
  return w;
}

bool inside(const ConvexDomain& d, const ProjPoint& p) {
  // Deep orbit points have tiny but nonzero last coordinates.
  const Vec& c = p.coords();
  if (c(c.size() - 1) == 0.0) return false;
  const Vec x = p.affine();
  return x.allFinite() && d.contains(x);
}

// Breadth-first over distinct points. Stops after max_depth levels or once
// max_nodes points are known.
Exploration explore(const ConvexDomain& d, const GeneratorSet& gens, const Vec& x0,
                    int max_depth, int max_nodes) {
  Exploration out;
  std::map<Key, int> seen;
  out.nodes.push_back({ProjPoint::from_affine(x0), -1, -1});
  seen.emplace(quantize(out.nodes[0].point), 0);
  std::vector<int> frontier{0};
  const int g = gens.size();
  for (int depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    if (static_cast<int>(out.nodes.size()) >= max_nodes) break;
    const int count = static_cast<int>(frontier.size()) * g;
    std::vector<std::optional<ProjPoint>> images(static_cast<std::size_t>(count));
    parallel_for(count, [&](int k) {
      const Node& parent = out.nodes[static_cast<std::size_t>(frontier[static_cast<std::size_t>(k / g)])];
      try {
        images[static_cast<std::size_t>(k)] = apply(gens.gens[static_cast<std::size_t>(k % g)], parent.point);
      } catch (const Error&) {
      }
    });
    std::vector<int> next;
    for (int k = 0; k < count; ++k) {
      if (static_cast<int>(out.nodes.size()) >= max_nodes) break;
      const auto& img = images[static_cast<std::size_t>(k)];
      if (!img) continue;
      const Key key = quantize(*img);
      if (seen.count(key)) continue;
      const int index = static_cast<int>(out.nodes.size());
      seen.emplace(key, index);
      out.nodes.push_back({*img, frontier[static_cast<std::size_t>(k / g)], k % g});
      next.push_back(index);
    }
    frontier = std::move(next);
  }
  std::vector<char> ok(out.nodes.size());
  parallel_for(static_cast<int>(out.nodes.size()), [&](int i) {
    ok[static_cast<std::size_t>(i)] = inside(d, out.nodes[static_cast<std::size_t>(i)].point);
  });
  out.violations = static_cast<int>(std::count(ok.begin(), ok.end(), 0));
  return out;
}

Vec chart_of(const std::optional<ProjMap>& chart, const ProjPoint& p) {
  if (!chart) return p.affine();
  return apply(*chart, p).affine();
}

}  // namespace

GeneratorSet GeneratorSet::with_inverses(const std::vector<ProjMap>& maps,
                                         const std::vector<std::string>& labels) {
  if (maps.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidInput, "generator and label counts differ");
  }
  GeneratorSet out;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps[i].invertible()) throw Error(ErrorKind::kSingularMap, "generator " + labels[i]);
    const int a = out.size();
    out.gens.push_back(maps[i]);
    out.gens.push_back(maps[i].inverse());
    out.labels.push_back(labels[i]);
    out.labels.push_back(labels[i] + "^-1");
    out.inverse.push_back(a + 1);
    out.inverse.push_back(a);
  }
  return out;
}

void GeneratorSet::add_family(const std::function<ProjMap(double)>& family,
                              const std::string& label) {
  for (int k = -3; k <= 6; ++k) {
    const double t = std::ldexp(1.0, k);
    const ProjMap g = family(t);
    if (!g.invertible()) throw Error(ErrorKind::kSingularMap, "family " + label);
    const int a = size();
    gens.push_back(g);
    gens.push_back(g.inverse());
    labels.push_back(label + "(2^" + std::to_string(k) + ")");
    labels.push_back(label + "(2^" + std::to_string(k) + ")^-1");
    inverse.push_back(a + 1);
    inverse.push_back(a);
  }
}

std::string GeneratorSet::word_label(const std::vector<int>& word) const {
  if (word.empty()) return "id";
  std::string out;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (!out.empty()) out += ' ';
    out += labels[static_cast<std::size_t>(*it)];
  }
  return out;
}

OrbitReport orbit(const ConvexDomain& d, const GeneratorSet& gens, const Vec& x0, int word_len) {
  if (!d.contains(x0)) throw Error(ErrorKind::kNotInterior, "orbit basepoint");
  const Exploration e = explore(d, gens, x0, std::max(0, word_len),
                                std::numeric_limits<int>::max());
  OrbitReport out;
  out.violations = e.violations;
  for (std::size_t i = 0; i < e.nodes.size(); ++i) {
    out.points.push_back({e.nodes[i].point, word_of(e.nodes, static_cast<int>(i)),
                          e.nodes[i].point.at_infinity()});
  }
  return out;
}

LimitSetEstimate limit_set_estimate(const ConvexDomain& d, const GeneratorSet& gens,
                                    const Vec& x0, int budget, double epsilon) {
  if (!d.contains(x0)) throw Error(ErrorKind::kNotInterior, "orbit basepoint");
  LimitSetEstimate out;
  out.epsilon = epsilon;
  out.chart = d.bounded_chart();
  const Exploration e = explore(d, gens, x0, std::numeric_limits<int>::max(), budget);
  out.budget = static_cast<int>(e.nodes.size());
  out.violations = e.violations;

  const ConvexDomain bounded = bounded_realization(d);
  const int n = static_cast<int>(e.nodes.size());
  std::vector<Vec> chart(static_cast<std::size_t>(n));
  std::vector<char> near(static_cast<std::size_t>(n), 0);
  parallel_for(n, [&](int i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      chart[k] = chart_of(out.chart, e.nodes[k].point);
    } catch (const Error&) {
      return;
    }
    near[k] = std::abs(radial_gap(bounded, chart[k])) < epsilon;
  });

  std::vector<int> idx;
  for (int i = 0; i < n; ++i) {
    if (near[static_cast<std::size_t>(i)]) idx.push_back(i);
  }
  // Single linkage via union-find over pairs closer than 3 epsilon, scanning
  // along the first chart coordinate.
  const double link = 3.0 * epsilon;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double xa = chart[static_cast<std::size_t>(a)][0];
    const double xb = chart[static_cast<std::size_t>(b)][0];
    return xa < xb || (xa == xb && a < b);
  });
  std::vector<int> parent(idx.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const Vec& ya = chart[static_cast<std::size_t>(idx[a])];
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const Vec& yb = chart[static_cast<std::size_t>(idx[b])];
      if (yb[0] - ya[0] > link) break;
      if ((ya - yb).norm() <= link) {
        const int ra = find(static_cast<int>(a));
        const int rb = find(static_cast<int>(b));
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
      }
    }
  }
  std::map<int, std::vector<int>> groups;  // keyed by smallest node index
  std::map<int, int> root_to_key;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const int r = find(static_cast<int>(a));
    auto it = root_to_key.find(r);
    if (it == root_to_key.end()) it = root_to_key.emplace(r, idx[static_cast<std::size_t>(r)]).first;
    groups[it->second].push_back(idx[a]);
  }
  for (auto& [key, raw] : groups) {
    if (raw.size() < kMinMultiplicity) continue;
    std::vector<int> members = raw;
    std::sort(members.begin(), members.end());
    // Medoid over at most 2000 evenly spaced members.
    std::vector<int> pool;
    const std::size_t stride = std::max<std::size_t>(1, members.size() / 2000);
    for (std::size_t i = 0; i < members.size(); i += stride) pool.push_back(members[i]);
    int medoid = pool.front();
    double best = std::numeric_limits<double>::infinity();
    for (int a : pool) {
      double s = 0.0;
      for (int b : pool) s += (chart[static_cast<std::size_t>(a)] - chart[static_cast<std::size_t>(b)]).norm();
      if (s < best) {
        best = s;
        medoid = a;
      }
    }
    LimitCluster c{e.nodes[static_cast<std::size_t>(medoid)].point, chart[static_cast<std::size_t>(medoid)],
                   static_cast<int>(members.size()), {}, word_of(e.nodes, medoid), {}, {}};
    for (int m : members) c.members.push_back(chart[static_cast<std::size_t>(m)]);
    // Ancestors of the medoid whose distance to it sets a new record.
    std::vector<int> path;
    for (int j = medoid; j >= 0; j = e.nodes[static_cast<std::size_t>(j)].parent) path.push_back(j);
    std::reverse(path.begin(), path.end());
    double record = std::numeric_limits<double>::infinity();
    for (int j : path) {
      double dist;
      try {
        dist = (chart_of(out.chart, e.nodes[static_cast<std::size_t>(j)].point) - c.chart).norm();
      } catch (const Error&) {
        continue;
      }
      if (dist < record) {
        record = dist;
        c.witness.push_back(word_of(e.nodes, j));
        c.witness_distances.push_back(dist);
      }
    }
    out.clusters.push_back(std::move(c));
  }
  return out;
}

double invariance_check(const LimitSetEstimate& estimate, const ProjMap& g) {
  double worst = 0.0;
  for (const LimitCluster& c : estimate.clusters) {
    double nearest = std::numeric_limits<double>::infinity();
    try {
      const Vec y = chart_of(estimate.chart, apply(g, c.representative));
      for (const LimitCluster& other : estimate.clusters) {
        for (const Vec& m : other.members) nearest = std::min(nearest, (y - m).norm());
      }
    } catch (const Error&) {
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

HullReport hull_closure_check(const ConvexDomain& d, const LimitSetEstimate& estimate,
                              int sample_budget, Rng& rng, const std::vector<Vec>& recession,
                              double tol) {
  HullReport out;
  std::vector<Vec> vertices;
  for (const LimitCluster& c : estimate.clusters) vertices.push_back(c.chart);
  for (const Vec& u : recession) {
    Vec h(u.size() + 1);
    h << u.normalized(), 0.0;
    vertices.push_back(chart_of(estimate.chart, ProjPoint(h)));
  }
  const std::vector<Vec> samples = sample_interior(d, rng, sample_budget, 3.0);
  out.samples = static_cast<int>(samples.size());
  if (vertices.empty() || samples.empty()) return out;
  Mat pts(vertices.front().size(), static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) pts.col(static_cast<Eigen::Index>(i)) = vertices[i];
  std::vector<char> hit(samples.size(), 0);
  parallel_for(out.samples, [&](int i) {
    const Vec y = chart_of(estimate.chart, ProjPoint::from_affine(samples[static_cast<std::size_t>(i)]));
    hit[static_cast<std::size_t>(i)] = lp::in_convex_hull(pts, y, tol);
  });
  out.covered = static_cast<int>(std::count(hit.begin(), hit.end(), 1));
  out.fraction = static_cast<double>(out.covered) / out.samples;
  return out;
}

}  // namespace qhd
