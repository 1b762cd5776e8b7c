#include "qhd/projective.hpp"

#include <algorithm>
#include <cmath>

namespace qhd {

Vec canonical_sign(Vec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kSignThreshold) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

Mat canonical_sign(Mat m) {
  // Row-major flattening order.
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) > kSignThreshold) {
        if (m(r, c) < 0) m = -m;
        return m;
      }
    }
  }
  return m;
}

ProjPoint::ProjPoint(const Vec& coords) {
  const double norm = coords.norm();
  if (coords.size() < 2 || !(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::kInvalidInput, "projective point needs a finite nonzero vector");
  }
  coords_ = canonical_sign(Vec(coords / norm));
}

ProjPoint ProjPoint::from_affine(const Vec& x) {
  Vec h(x.size() + 1);
  h.head(x.size()) = x;
  h[x.size()] = 1.0;
  return ProjPoint(h);
}

bool ProjPoint::at_infinity(double tol) const {
  return std::abs(coords_[coords_.size() - 1]) <= tol;
}

Vec ProjPoint::affine() const {
  const Eigen::Index n = coords_.size() - 1;
  const double w = coords_[n];
  if (std::abs(w) <= 1e-300) {
    throw Error(ErrorKind::kInvalidInput, "point at infinity has no affine coordinates");
  }
  return coords_.head(n) / w;
}

double ProjPoint::distance(const ProjPoint& other) const {
  return std::min((coords_ - other.coords_).norm(), (coords_ + other.coords_).norm());
}

Hyperplane::Hyperplane(const Vec& covector) {
  const double norm = covector.norm();
  if (covector.size() < 2 || !(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::kInvalidInput, "hyperplane needs a finite nonzero covector");
  }
  covector_ = canonical_sign(Vec(covector / norm));
}

Hyperplane Hyperplane::at_infinity(int n) {
  Vec h = Vec::Zero(n + 1);
  h[n] = 1.0;
  return Hyperplane(h);
}

Hyperplane Hyperplane::from_affine(const Vec& normal, double offset) {
  Vec h(normal.size() + 1);
  h.head(normal.size()) = normal;
  h[normal.size()] = offset;
  return Hyperplane(h);
}

double Hyperplane::evaluate_affine(const Vec& x) const {
  const Eigen::Index n = x.size();
  return covector_.head(n).dot(x) + covector_[n];
}

ProjMap normalize(const Mat& raw) {
  if (raw.rows() != raw.cols() || raw.rows() < 2) {
    throw Error(ErrorKind::kInvalidInput, "projective map must be square of size >= 2");
  }
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::kInvalidInput, "zero or non-finite matrix");
  }
  ProjMap g;
  g.matrix_ = canonical_sign(Mat(raw / norm));

  Eigen::JacobiSVD<Mat> svd(g.matrix_, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec& sigma = svd.singularValues();
  const int n1 = static_cast<int>(sigma.size());
  int rank = 0;
  for (int i = 0; i < n1; ++i) {
    if (sigma[i] >= kRankTolerance * sigma[0]) ++rank;
  }
  g.rank_ = rank;
  for (int i = 0; i < rank; ++i) g.range_.emplace_back(svd.matrixU().col(i));
  for (int i = rank; i < n1; ++i) g.kernel_.emplace_back(svd.matrixV().col(i));
  return g;
}

ProjMap ProjMap::compose(const ProjMap& inner) const {
  return normalize(matrix_ * inner.matrix_);
}

ProjMap ProjMap::inverse() const {
  if (!invertible()) throw Error(ErrorKind::kSingularMap, "cannot invert a singular map");
  return normalize(matrix_.inverse());
}

double ProjMap::distance(const ProjMap& other) const {
  return std::min((matrix_ - other.matrix_).norm(), (matrix_ + other.matrix_).norm());
}

double distance_to_span(const Vec& v, const std::vector<ProjPoint>& basis) {
  Vec residual = v;
  for (const auto& b : basis) residual -= b.coords().dot(v) * b.coords();
  return residual.norm();
}

ProjPoint apply(const ProjMap& g, const ProjPoint& p) {
  if (p.coords().size() != g.size()) {
    throw Error(ErrorKind::kInvalidInput, "dimension mismatch in apply");
  }
  if (!g.kernel_basis().empty() && distance_to_span(p.coords(), g.kernel_basis()) <= 1e-9) {
    throw Error(ErrorKind::kKernelHit, "point lies in K(g)");
  }
  return ProjPoint(g.matrix() * p.coords());
}

SequenceLimit limit_of_sequence(std::span<const ProjMap> seq) {
  if (seq.empty()) throw Error(ErrorKind::kInvalidInput, "empty sequence");
  const int n = static_cast<int>(seq.size());
  const int tail = std::max(1, (n + 3) / 4);
  double worst = 0.0;
  for (int i = n - tail; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) worst = std::max(worst, seq[i].distance(seq[j]));
  }
  if (worst >= kCauchyTolerance) {
    throw Error(ErrorKind::kNoLimit,
                "tail deviation " + std::to_string(worst) + " exceeds Cauchy tolerance");
  }
  return SequenceLimit{seq.back(), worst, tail};
}

AffineMap::AffineMap(Mat linear, Vec translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (linear_.rows() != linear_.cols() || linear_.rows() != translation_.size()) {
    throw Error(ErrorKind::kInvalidInput, "affine map dimension mismatch");
  }
  if (!(std::abs(linear_.determinant()) > 1e-12)) {
    throw Error(ErrorKind::kInvalidInput, "affine linear part is not invertible");
  }
}

AffineMap AffineMap::identity(int n) { return AffineMap(Mat::Identity(n, n), Vec::Zero(n)); }

AffineMap AffineMap::compose(const AffineMap& other) const {
  return AffineMap(linear_ * other.linear_, linear_ * other.translation_ + translation_);
}

AffineMap AffineMap::inverse() const {
  Mat inv = linear_.inverse();
  return AffineMap(inv, -inv * translation_);
}

Mat AffineMap::homogeneous() const {
  const int n = dim();
  Mat m = Mat::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = linear_;
  m.topRightCorner(n, 1) = translation_;
  m(n, n) = 1.0;
  return m;
}

ProjMap embed_affine(const AffineMap& a) { return normalize(a.homogeneous()); }

bool is_affine(const ProjMap& g, const Hyperplane& infinity, double tol) {
  const Vec& h = infinity.covector();
  if (h.size() != g.size()) throw Error(ErrorKind::kInvalidInput, "dimension mismatch");
  const Vec image = g.matrix().transpose() * h;
  const double norm = image.norm();
  if (norm <= tol) return false;
  const Vec residual = image - h.dot(image) * h;
  return residual.norm() <= tol * norm;
}

double cross_ratio(const ProjPoint& s1, const ProjPoint& p1, const ProjPoint& p2,
                   const ProjPoint& s2) {
  const Eigen::Index dim = s1.coords().size();
  Mat stacked(4, dim);
  stacked.row(0) = s1.coords().transpose();
  stacked.row(1) = p1.coords().transpose();
  stacked.row(2) = p2.coords().transpose();
  stacked.row(3) = s2.coords().transpose();
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const Vec& sigma = svd.singularValues();
  // Four points span at most a 2-plane exactly when the third singular value
  // vanishes.
  if (sigma.size() > 2 && sigma[2] >= kCollinearTolerance * sigma[0]) {
    throw Error(ErrorKind::kNotCollinear, "points do not lie on a common line");
  }
  const Vec a = svd.matrixV().col(0);
  const Vec b = svd.matrixV().col(1);
  auto coord = [&](const ProjPoint& p) {
    return Eigen::Vector2d(p.coords().dot(a), p.coords().dot(b));
  };
  auto det = [](const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
    return x[0] * y[1] - x[1] * y[0];
  };
  const auto cs1 = coord(s1), cp1 = coord(p1), cp2 = coord(p2), cs2 = coord(s2);
  const double d_s1p1 = det(cs1, cp1);
  const double d_p2s2 = det(cp2, cs2);
  if (std::abs(d_s1p1) < 1e-13 || std::abs(d_p2s2) < 1e-13) {
    throw Error(ErrorKind::kCoincidentPoints, "s1 = p1 or p2 = s2");
  }
  return det(cs1, cp2) * det(cp1, cs2) / (d_s1p1 * d_p2s2);
}

}  // namespace qhd
