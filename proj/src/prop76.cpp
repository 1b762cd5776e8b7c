#include "qhd/prop76.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qhd/matrix_functions.hpp"

namespace qhd {

namespace {

constexpr double kTol = 1e-10;

double rel_error(const Mat& a, const Mat& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::max(1.0, std::abs(b(i, j))));
  return worst;
}

Mat diag_power(const Prop76Params& p, int n) {
  Mat g = Mat::Identity(5, 5);
  g(0, 0) = std::pow(p.delta, n);
  g(1, 1) = std::pow(p.delta, 2 * n);
  g(2, 2) = std::pow(p.theta, 2 * n);
  g(3, 3) = std::pow(p.theta, n);
  return g;
}

}  // namespace

void Prop76Params::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); };
  if (!(d > 0.0)) bad("d must be positive");
  if (!(delta > 0.0)) bad("delta must be positive");
  if (!(theta > 0.0 && theta < 1.0)) bad("theta must lie in (0,1)");
  if (alpha1 == 0.0) bad("alpha1 must be nonzero");
  if (alpha2 == 0.0) bad("alpha2 must be nonzero");
  if (n < 0) bad("n must be nonnegative");
}

AffineMap prop76_f(const Prop76Params& p) {
  Mat l = Mat::Zero(4, 4);
  l(0, 0) = p.alpha1;
  l(1, 0) = p.beta1;
  l(1, 1) = p.alpha2 * p.alpha2;
  l(2, 0) = p.beta2;
  l(2, 2) = 1.0;
  l(2, 3) = 2.0 * p.d;
  l(3, 0) = p.beta3;
  l(3, 3) = 1.0;
  Vec t(4);
  t << 0.0, 0.0, p.d * p.d, p.d;
  return AffineMap(l, t);
}

Mat prop76_fn_linear_closed_form(const Prop76Params& p, int n) {
  const double a = p.alpha1;
  const double a2sq = p.alpha2 * p.alpha2;
  // sum_{k=0}^{n-1} a^(n-1-k) a2^(2k)
  double s1 = 0.0;
  // 1 + a + ... + a^(n-1)
  double s0 = 0.0;
  // (n-1) + (n-2) a + ... + a^(n-2)
  double s2 = 0.0;
  for (int k = 0; k < n; ++k) {
    s1 += std::pow(a, n - 1 - k) * std::pow(a2sq, k);
    s0 += std::pow(a, k);
    s2 += (n - 1 - k) * std::pow(a, k);
  }
  Mat l = Mat::Zero(4, 4);
  l(0, 0) = std::pow(a, n);
  l(1, 0) = p.beta1 * s1;
  l(1, 1) = std::pow(a2sq, n);
  l(2, 0) = p.beta2 * s0 + 2.0 * p.d * p.beta3 * s2;
  l(2, 2) = 1.0;
  l(2, 3) = 2.0 * n * p.d;
  l(3, 0) = p.beta3 * s0;
  l(3, 3) = 1.0;
  return l;
}

ClosedFormReport verify_prop76_fn_closed_form(const Prop76Params& p) {
  p.validate();
  if (p.n < 1 || p.n > 12) throw Error(ErrorKind::kInvalidInput, "n must lie in 1..12");
  ClosedFormReport out;
  const Mat f = prop76_f(p).homogeneous();
  out.direct = f;
  for (int k = 1; k < p.n; ++k) out.direct = f * out.direct;
  Vec t(4);
  const double n = p.n;
  t << 0.0, 0.0, n * n * p.d * p.d, n * p.d;
  out.closed = AffineMap(prop76_fn_linear_closed_form(p, p.n), t).homogeneous();
  out.max_rel_error = rel_error(out.direct, out.closed);
  out.passed = out.max_rel_error < kTol;
  return out;
}

Mat prop76_family_generator(const Prop76Params& p) {
  Mat eta = Mat::Zero(5, 5);
  eta(1, 0) = p.beta1;
  eta(2, 0) = p.beta2;
  eta(2, 3) = 2.0;
  eta(3, 0) = p.beta3;
  eta(3, 4) = 1.0;
  return eta;
}

AffineMap prop76_family(const Prop76Params& p, double t) {
  const Mat m = matrix_exp(t * prop76_family_generator(p));
  return AffineMap(m.topLeftCorner(4, 4), m.topRightCorner(4, 1));
}

IsotropyReport verify_prop76_isotropy(const Prop76Params& p, std::uint64_t seed) {
  p.validate();
  IsotropyReport out;
  const int n = p.n;
  const double s = std::pow(p.theta, n) * p.t;
  const Mat ft = prop76_family(p, p.t).homogeneous();
  const Mat fs = prop76_family(p, s).homogeneous();
  out.h = fs.inverse() * diag_power(p, n) * ft;
  const double scale = std::max(1.0, out.h.cwiseAbs().maxCoeff());
  out.off_diagonal = (out.h - Mat(out.h.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
  if (out.off_diagonal > kTol * scale)
    throw Error(ErrorKind::kUnsolvable,
                "h_n(t) is not diagonal (off-diagonal " + std::to_string(out.off_diagonal) + ")");
  out.delta_n = out.h(0, 0);
  out.theta_n = out.h(3, 3);
  out.shape_error = std::abs(out.h(1, 1) - out.delta_n * out.delta_n) +
                    std::abs(out.h(2, 2) - out.theta_n * out.theta_n);

  const double alpha1_s = fs(0, 0), alpha1_t = ft(0, 0);
  const double alpha2sq_s = fs(1, 1), alpha2sq_t = ft(1, 1);
  const double dn = std::pow(p.delta, n);
  out.identity_error =
      std::abs(alpha1_s * out.delta_n - dn * alpha1_t) +
      std::abs(alpha2sq_s * out.delta_n * out.delta_n - dn * dn * alpha2sq_t) +
      std::abs(out.theta_n - std::pow(p.theta, n));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  const Mat f1 = prop76_family(p, 1.0).homogeneous();
  for (int trial = 0; trial < 20; ++trial) {
    const double a = unif(rng), b = unif(rng);
    const Mat fa = prop76_family(p, a).homogeneous();
    const Mat fb = prop76_family(p, b).homogeneous();
    const Mat fab = prop76_family(p, a + b).homogeneous();
    out.group_law_error = std::max(out.group_law_error, rel_error(fa * fb, fab));
    for (int row : {1, 3}) {
      out.linearity_error = std::max(
          {out.linearity_error, std::abs(fab(row, 0) - fa(row, 0) - fb(row, 0)),
           std::abs(fa(row, 0) - a * f1(row, 0))});
    }
  }
  out.passed = out.shape_error < kTol * scale && out.identity_error < kTol * scale &&
               out.linearity_error < kTol && out.group_law_error < kTol;
  return out;
}

}  // namespace qhd
