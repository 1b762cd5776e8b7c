#include "qhd/matrix_functions.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>

namespace qhd {

namespace {

constexpr double kLogResidual = 1e-9;

double relative_residual(const Mat& log, const Mat& a) {
  return (matrix_exp(log) - a).norm() / a.norm();
}

bool eigen_log(const Mat& a, Mat& out) {
  Eigen::EigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) return false;
  const auto& values = es.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i].imag()) > 1e-12 * std::abs(values[i]) || values[i].real() <= 0.0) {
      return false;
    }
  }
  const Mat v = es.eigenvectors().real();
  Eigen::JacobiSVD<Mat> svd(v);
  const Vec& s = svd.singularValues();
  if (s[s.size() - 1] < 1e-8 * s[0]) return false;  // not diagonalizable in practice
  Vec logs(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) logs[i] = std::log(values[i].real());
  out = v * logs.asDiagonal() * v.inverse();
  return true;
}

}  // namespace

Mat matrix_exp(const Mat& a) { return a.exp(); }

Mat unimodular(const Mat& g) {
  const double det = g.determinant();
  if (!(std::abs(det) > 0.0)) throw Error(ErrorKind::kSingularMap, "singular matrix");
  return g / std::pow(std::abs(det), 1.0 / static_cast<double>(g.rows()));
}

MatrixLog matrix_log(const Mat& a) {
  Mat candidate;
  if (eigen_log(a, candidate)) {
    const double r = relative_residual(candidate, a);
    if (r < kLogResidual) return {candidate, LogMethod::kEigen, r};
  }
  // Negative real eigenvalues have no real logarithm.
  Eigen::EigenSolver<Mat> es(a, false);
  bool negative = false;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto lambda = es.eigenvalues()[i];
    if (std::abs(lambda.imag()) <= 1e-12 * std::abs(lambda) && lambda.real() < 0.0) negative = true;
    if (std::abs(lambda) == 0.0) throw Error(ErrorKind::kNoLogarithm, "singular matrix");
  }
  if (!negative) {
    candidate = a.log();
    if (candidate.allFinite()) {
      const double r = relative_residual(candidate, a);
      if (r < kLogResidual) return {candidate, LogMethod::kSchurParlett, r};
    }
  }
  const Mat squared = a * a;
  Eigen::EigenSolver<Mat> es2(squared, false);
  for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i) {
    const auto lambda = es2.eigenvalues()[i];
    if (std::abs(lambda.imag()) <= 1e-12 * std::abs(lambda) && lambda.real() < 0.0) {
      throw Error(ErrorKind::kNoLogarithm, "negative real spectrum persists in g^2");
    }
  }
  candidate = Mat(squared.log()) / 2.0;
  if (candidate.allFinite()) {
    const double r = relative_residual(2.0 * candidate, squared);
    if (r < kLogResidual) return {candidate, LogMethod::kSquareRoot, r};
  }
  throw Error(ErrorKind::kNoLogarithm, "no logarithm candidate reproduced the matrix");
}

}  // namespace qhd
