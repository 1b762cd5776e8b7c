#include "qhd/search.hpp"

#include <random>

namespace qhd {

SphereSearch compass_search_sphere(const std::function<double(const Vec&)>& f, Vec start,
                                   const SphereSearchOptions& options) {
  SphereSearch out;
  out.best = start.normalized();
  out.value = f(out.best);
  out.evaluations = 1;
  const Eigen::Index k = out.best.size();
  double step = options.initial_step;
  while (step >= options.min_step && out.evaluations < options.max_evaluations &&
         out.value >= options.stop_below) {
    Vec candidate_best = out.best;
    double candidate_value = out.value;
    for (Eigen::Index j = 0; j < k; ++j) {
      for (double sign : {1.0, -1.0}) {
        Vec trial = out.best;
        trial[j] += sign * step;
        const double norm = trial.norm();
        if (norm == 0.0) continue;
        trial /= norm;
        const double v = f(trial);
        ++out.evaluations;
        if (v < candidate_value) {
          candidate_value = v;
          candidate_best = trial;
        }
      }
    }
    if (candidate_value < out.value) {
      out.value = candidate_value;
      out.best = candidate_best;
    } else {
      step *= 0.5;
    }
  }
  return out;
}

SphereSearch compass_search(const std::function<double(const Vec&)>& f, Vec start,
                            const SphereSearchOptions& options) {
  SphereSearch out;
  out.best = std::move(start);
  out.value = f(out.best);
  out.evaluations = 1;
  const Eigen::Index k = out.best.size();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  double step = options.initial_step;
  while (step >= options.min_step && out.evaluations < options.max_evaluations &&
         out.value >= options.stop_below) {
    bool moved = false;
    for (Eigen::Index j = 0; j < k && !moved; ++j) {
      for (double sign : {1.0, -1.0}) {
        Vec trial = out.best;
        trial[j] += sign * step;
        const double v = f(trial);
        ++out.evaluations;
        if (v < out.value) {
          out.value = v;
          out.best = trial;
          moved = true;
          break;
        }
      }
    }
    for (int r = 0; r < options.random_directions && !moved && k > 0; ++r) {
      Vec dir(k);
      for (Eigen::Index j = 0; j < k; ++j) dir[j] = normal(rng);
      const Vec trial = out.best + step * dir.normalized();
      const double v = f(trial);
      ++out.evaluations;
      if (v < out.value) {
        out.value = v;
        out.best = trial;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return out;
}

Mat orthogonal_complement(const Mat& a, int n) {
  if (a.cols() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU);
  const Vec& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > 1e-9 * s[0]) ++rank;
  }
  return svd.matrixU().rightCols(n - rank);
}

}  // namespace qhd
