#pragma once

#include <complex>
#include <vector>

#include "circesc/arith.hpp"

namespace circesc {

using Complex = std::complex<double>;

// x^w for real x > 0 (principal branch).
Complex pow_real_base(double x, Complex w);

// Principal-branch log-gamma (Lanczos, 15-term Godfrey coefficient set),
// relative error < 1e-12 for the arguments used here. Continuous along paths
// that stay off the negative real axis for Re z > -0.5.
Complex log_gamma(Complex z);
Complex gamma_fn(Complex z);

// Accuracy contract of the zeta evaluators: |Re s| <= 30, |Im s| <= 150
// (Euler-Maclaurin cutoffs are tuned for ~1e-12 relative accuracy there).
bool zeta_box_contains(Complex s);

// Riemann zeta. Euler-Maclaurin for Re s >= 1/2 (and near the origin),
// reflected through the functional equation otherwise. Throws PoleError at
// s = 1 exactly.
Complex riemann_zeta(Complex s);

// Hurwitz zeta for 0 < a <= 1; Euler-Maclaurin directly. Accuracy is
// ~1e-12 relative for Re s >= 0 and ~1e-10 absolute down to Re s ~ -6
// (cancellation grows as Re s falls; all callers here stay well inside).
Complex hurwitz_zeta(Complex s, double a);

// zeta(s, a) - 1/(s-1): entire in s, the workhorse behind dirichlet_L so
// nontrivial L-series can be evaluated across s = 1.
Complex hurwitz_zeta_deflated(Complex s, double a);

// L(s, chi) = q^-s * sum_a chi(a) zeta(s, a/q). Pole only for trivial chi at
// s = 1.
Complex dirichlet_L(Complex s, const DirichletCharacter& chi);

// First derivative by Richardson-extrapolated central differences
// (h = 1e-5); requires |s - 1| >= 0.1.
Complex zeta_derivative(Complex s);

// Phase of the completed zeta on the critical line (Riemann-Siegel theta),
// and the real-valued rotation Z(t) = exp(i*theta(t)) * zeta(1/2 + i t).
double riemann_siegel_theta(double t);
double hardy_z(double t);

struct ZeroList {
  std::vector<double> ordinates;       // strictly increasing
  std::vector<int> multiplicities;     // 1 for every zero in the box
};

// Ordinates of critical-line zeros with 0 < tau <= t_max (t_max <= 150),
// located by sign changes of Z on a 0.05 grid and bisected to ~1e-10. Each
// ordinate is verified to give |zeta(1/2 + i tau)| < 1e-8.
ZeroList find_zeros(double t_max);

// find_zeros(150), computed once and shared.
const ZeroList& zeros_in_box();

}  // namespace circesc
