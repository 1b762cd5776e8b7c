#include "qhd/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qhd::lp {

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau simplex on rows [A | b] with an explicit basis. Objective row holds
// reduced costs for maximization of obj . x.
struct Tableau {
  Mat t;  // m rows x (n + 1) columns, last column is rhs
  std::vector<int> basis;

  int rows() const { return static_cast<int>(t.rows()); }
  int cols() const { return static_cast<int>(t.cols()) - 1; }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i < rows(); ++i) {
      if (i != r && std::abs(t(i, c)) > 0.0) t.row(i) -= t(i, c) * t.row(r);
    }
    basis[r] = c;
  }

  // Runs the simplex loop for objective obj restricted to allowed columns.
  Status run(const Vec& obj, const std::vector<bool>& allowed) {
    for (int iter = 0; iter < 50000; ++iter) {
      // reduced cost: obj_j - obj_B . column_j
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (!allowed[j]) continue;
        double reduced = obj[j];
        for (int i = 0; i < rows(); ++i) reduced -= obj[basis[i]] * t(i, j);
        if (reduced > kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::kOptimal;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (t(i, enter) > kPivotEps) {
          const double ratio = t(i, cols()) / t(i, enter);
          if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && leave >= 0 &&
                                       basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return Status::kUnbounded;
      pivot(leave, enter);
    }
    return Status::kUnbounded;
  }
};

}  // namespace

Result maximize(const Mat& a, const Vec& b, const Vec& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Tableau tab;
  tab.t = Mat::Zero(m, n + m + 1);
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0 ? -1.0 : 1.0;
    tab.t.row(i).head(n) = sign * a.row(i);
    tab.t(i, n + i) = 1.0;
    tab.t(i, n + m) = sign * b[i];
    tab.basis[i] = n + i;
  }
  // Phase I: maximize -sum(artificials).
  Vec phase1 = Vec::Zero(n + m);
  phase1.tail(m).setConstant(-1.0);
  std::vector<bool> all(n + m, true);
  tab.run(phase1, all);
  double infeasibility = 0.0;
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) infeasibility += tab.t(i, n + m);
  }
  Result result;
  const double scale = 1.0 + b.cwiseAbs().sum();
  if (infeasibility > 1e-9 * scale) {
    result.status = Status::kInfeasible;
    return result;
  }
  // Drive remaining zero-level artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > kPivotEps) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  Vec phase2 = Vec::Zero(n + m);
  phase2.head(n) = c;
  std::vector<bool> allowed(n + m, false);
  for (int j = 0; j < n; ++j) allowed[j] = true;
  result.status = tab.run(phase2, allowed);
  result.x = Vec::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) result.x[tab.basis[i]] = tab.t(i, n + m);
  }
  result.objective = c.dot(result.x);
  return result;
}

Result maximize_inequalities(const Mat& g, const Vec& h, const Vec& c) {
  const Eigen::Index m = g.rows();
  const Eigen::Index n = g.cols();
  Mat a(m, n + m);
  a << g, Mat::Identity(m, m);
  Vec cc = Vec::Zero(n + m);
  cc.head(n) = c;
  Result r = maximize(a, h, cc);
  if (r.status == Status::kOptimal) r.x = Vec(r.x.head(n));
  return r;
}

bool in_convex_hull(const Mat& points, const Vec& y, double tol) {
  const int dim = static_cast<int>(points.rows());
  const int k = static_cast<int>(points.cols());
  if (k == 0) return false;
  // Variables: lambda (k), slack+ (dim), slack- (dim). Minimize total slack.
  Mat a = Mat::Zero(dim + 1, k + 2 * dim);
  Vec b(dim + 1);
  a.topLeftCorner(dim, k) = points;
  a.block(0, k, dim, dim) = Mat::Identity(dim, dim);
  a.block(0, k + dim, dim, dim) = -Mat::Identity(dim, dim);
  a.block(dim, 0, 1, k).setOnes();
  b.head(dim) = y;
  b[dim] = 1.0;
  Vec c = Vec::Zero(k + 2 * dim);
  c.tail(2 * dim).setConstant(-1.0);
  const Result r = maximize(a, b, c);
  if (r.status != Status::kOptimal) return false;
  const Vec fit = points * r.x.head(k);
  return (fit - y).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qhd::lp
