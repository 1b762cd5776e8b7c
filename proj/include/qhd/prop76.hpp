#pragma once

// Matrix identities for the parabolic element f with linear part
//
//   | a1  0     0  0  |
//   | b1  a2^2  0  0  |        translation (0, 0, d^2, d)
//   | b2  0     1  2d |
//   | b3  0     0  1  |
//
// and for the one-parameter family f_t normalized against the isotropy
// element g = diag(delta, delta^2, theta^2, theta).

#include <cstdint>

#include "qhd/projective.hpp"

namespace qhd {

struct Prop76Params {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  double d = 1.0;
  double delta = 0.5;
  double theta = 0.5;
  int n = 1;
  double t = 1.0;  // family parameter for the isotropy relation

  void validate() const;  // throws kInvalidInput
};

AffineMap prop76_f(const Prop76Params& p);
// Linear part of f^n from the geometric-sum expressions.
Mat prop76_fn_linear_closed_form(const Prop76Params& p, int n);

struct ClosedFormReport {
  Mat direct;        // homogeneous 5x5 of f^n by repeated products
  Mat closed;        // homogeneous 5x5 from the closed form
  double max_rel_error = 0.0;
  bool passed = false;
};

// n in 1..12. Entrywise |direct - closed| / max(1, |closed|) < 1e-10.
ClosedFormReport verify_prop76_fn_closed_form(const Prop76Params& p);

// Parabolic family exp(t eta) with alpha_1 = alpha_2 = 1 and
// beta_1(t) = beta1 t, beta_2(t) = beta2 t + beta3 t^2, beta_3(t) = beta3 t.
Mat prop76_family_generator(const Prop76Params& p);  // 5x5 homogeneous eta
AffineMap prop76_family(const Prop76Params& p, double t);

struct IsotropyReport {
  Mat h;                       // homogeneous 5x5 of h_n(t)
  double delta_n = 0.0;
  double theta_n = 0.0;
  double off_diagonal = 0.0;   // largest off-diagonal magnitude of h
  double shape_error = 0.0;    // |h22 - h11^2| + |h33 - h44^2|
  double identity_error = 0.0; // the three scalar identities
  double linearity_error = 0.0;
  double group_law_error = 0.0;
  bool passed = false;
};

// h_n(t) = f_{theta^n t}^{-1} g^n f_t. Throws kUnsolvable when h_n(t) is not
// diagonal (the family is inconsistent with g).
IsotropyReport verify_prop76_isotropy(const Prop76Params& p, std::uint64_t seed = 0);

}  // namespace qhd
