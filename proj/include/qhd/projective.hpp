#pragma once

// Homogeneous-coordinate geometry: points and hyperplanes of RP^n, possibly
// singular projective maps (elements of PM(n+1, R)), affine maps and their
// embedding, singular limits of map sequences and the cross ratio.

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "qhd/error.hpp"

namespace qhd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Singular values below kRankTolerance * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-9;
// First entry above this magnitude decides the canonical sign.
inline constexpr double kSignThreshold = 1e-12;
// Tail pairwise distance bound for a sequence to count as convergent.
inline constexpr double kCauchyTolerance = 1e-6;
// sigma_3 / sigma_1 bound for four points to count as collinear.
inline constexpr double kCollinearTolerance = 1e-8;

// Flips the sign of v so that its first entry exceeding kSignThreshold in
// magnitude is positive. Returns v unchanged if no entry qualifies.
Vec canonical_sign(Vec v);
Mat canonical_sign(Mat m);

// A point of RP^n stored as its canonical unit representative.
class ProjPoint {
 public:
  explicit ProjPoint(const Vec& coords);

  // The point [x : 1] of the standard affine chart x_{n+1} = 1.
  static ProjPoint from_affine(const Vec& x);

  const Vec& coords() const { return coords_; }
  int ambient_dim() const { return static_cast<int>(coords_.size()) - 1; }
  bool at_infinity(double tol = 1e-12) const;
  // Affine chart coordinates; throws kInvalidInput for points at infinity.
  Vec affine() const;

  double distance(const ProjPoint& other) const;

 private:
  Vec coords_;
};

// A hyperplane of RP^n given by a covector, canonically normalized.
class Hyperplane {
 public:
  explicit Hyperplane(const Vec& covector);

  // The hyperplane x_{n+1} = 0.
  static Hyperplane at_infinity(int n);
  // Affine hyperplane {x : normal . x + offset = 0}.
  static Hyperplane from_affine(const Vec& normal, double offset);

  const Vec& covector() const { return covector_; }
  double evaluate(const ProjPoint& p) const { return covector_.dot(p.coords()); }
  // Value of the affine function normal . x + offset on a chart point.
  double evaluate_affine(const Vec& x) const;

 private:
  Vec covector_;
};

// An element of PM(n+1, R): matrix up to scale, possibly singular.
class ProjMap {
 public:
  const Mat& matrix() const { return matrix_; }
  int rank() const { return rank_; }
  int size() const { return static_cast<int>(matrix_.rows()); }
  bool invertible() const { return rank_ == size(); }
  const std::vector<ProjPoint>& kernel_basis() const { return kernel_; }
  const std::vector<ProjPoint>& range_basis() const { return range_; }

  ProjMap compose(const ProjMap& inner) const;
  ProjMap inverse() const;
  double distance(const ProjMap& other) const;

 private:
  friend ProjMap normalize(const Mat& raw);
  Mat matrix_;
  int rank_ = 0;
  std::vector<ProjPoint> kernel_;
  std::vector<ProjPoint> range_;
};

// Canonical representative: unit Frobenius norm and canonical sign, with rank,
// kernel and range read off a singular value decomposition.
ProjMap normalize(const Mat& raw);

// g . p; throws kKernelHit when p lies within tolerance of K(g).
ProjPoint apply(const ProjMap& g, const ProjPoint& p);

struct SequenceLimit {
  ProjMap limit;
  double cauchy_deviation = 0.0;  // max pairwise distance over the tail
  int tail_length = 0;
};

// Limit in PM(n+1, R) of a sequence whose last quarter is Cauchy.
SequenceLimit limit_of_sequence(std::span<const ProjMap> seq);

// Element of GL(n, R) x| R^n acting by x -> linear x + translation.
class AffineMap {
 public:
  AffineMap(Mat linear, Vec translation);
  static AffineMap identity(int n);

  const Mat& linear() const { return linear_; }
  const Vec& translation() const { return translation_; }
  int dim() const { return static_cast<int>(translation_.size()); }

  Vec operator()(const Vec& x) const { return linear_ * x + translation_; }
  // (*this)(other(x)).
  AffineMap compose(const AffineMap& other) const;
  AffineMap inverse() const;
  // Homogeneous (n+1)x(n+1) block matrix, not normalized.
  Mat homogeneous() const;

 private:
  Mat linear_;
  Vec translation_;
};

ProjMap embed_affine(const AffineMap& a);

// True iff g preserves the hyperplane, i.e. its covector is an eigenvector
// of g^T within tolerance.
bool is_affine(const ProjMap& g, const Hyperplane& infinity, double tol = 1e-9);

// Cross ratio d(s1,p2) d(p1,s2) / (d(s1,p1) d(p2,s2)) of four collinear
// points, computed from 2x2 determinants in a basis of the common line.
double cross_ratio(const ProjPoint& s1, const ProjPoint& p1,
                   const ProjPoint& p2, const ProjPoint& s2);

// Distance from a unit vector to the linear span of the given orthonormal
// basis.
double distance_to_span(const Vec& v, const std::vector<ProjPoint>& basis);

}  // namespace qhd
