#pragma once

#include "qhd/projective.hpp"

namespace qhd {

Mat matrix_exp(const Mat& a);

enum class LogMethod { kEigen, kSchurParlett, kSquareRoot };

struct MatrixLog {
  Mat log;
  LogMethod method;
  double residual;  // ||exp(log) - a||_F / ||a||_F
};

// Real logarithm of a. Tries an eigendecomposition for diagonalizable input
// with positive real spectrum, then a Schur-Parlett / inverse scaling and
// squaring evaluation, then log(a^2)/2. Every candidate is checked against
// exp; throws kNoLogarithm if none reproduces a.
MatrixLog matrix_log(const Mat& a);

// Representative of g scaled to |det| = 1.
Mat unimodular(const Mat& g);

}  // namespace qhd
