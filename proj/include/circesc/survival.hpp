#pragma once

#include "circesc/arith.hpp"
#include "circesc/billiard.hpp"

namespace circesc {

// Long-time survival constant: the limit of t * mu(set of orbits alive at t).
struct SurvivalConstant {
  double value = 0.0;
  long long terms_used = 0;  // cutoff of the finite n-sum actually applied
  HoleConfiguration config = HoleConfiguration::one_hole(1.0);
};

// theta mod 2*pi/n, in [0, 2*pi/n).
double theta_reduced(long long n, double theta);
// Same reduction in exact integer arithmetic for theta = 2*pi*r/q.
double theta_reduced(long long n, const RationalAngle& theta);

// Exact two-hole constant
//   P = 1/(8 pi) * sum_{n=1}^{floor(2 pi/delta)} n (phi(n) - mu(n))
//       * [ g(2 pi/n - theta' - delta) + g(theta' - delta) ],
// g(x) = x^2 for x > 0 else 0, theta' reduced per n. theta = 0 is one hole.
SurvivalConstant p_infinity_two_holes(double theta, double delta);
SurvivalConstant p_infinity_two_holes(const RationalAngle& theta, double delta);

// q >= 2 equally spaced holes:
//   P = 1/(8 pi) * sum_n n (phi(n) - mu(n)) q~ g(2 pi/(n q~) - delta),
// q~ = q/gcd(n, q); cross-checked against the regrouped form
//   1/(8 pi) * sum_n~ n~ phi(n~) q^2 g(2 pi/(n~ q) - delta)
// (must agree to 1e-12 relative or an AccuracyError is thrown).
SurvivalConstant p_infinity_q_holes(int q, double delta);

// Dispatch on the configuration (uses exact rational reduction when the
// (r, q) metadata is present).
SurvivalConstant p_infinity(const HoleConfiguration& holes);

}  // namespace circesc
