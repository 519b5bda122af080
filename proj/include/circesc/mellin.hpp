#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "circesc/zeta.hpp"

namespace circesc {

// Transform of the survival constant in the hole width: poles encode the
// power-law terms of the small-width expansion.
enum class MellinSource { TableClosedForm, CharacterSeries, QHole };

struct MellinModel {
  int r = 0;
  int q = 1;
  MellinSource source = MellinSource::TableClosedForm;
  std::function<Complex(Complex)> evaluator;
};

// Exact closed forms for q in {1, 2, 3, 4, 6} (r = 1; r = 0 when q = 1).
Complex p_tilde_closed(int q, Complex s);

// General rational-angle transform for theta = 2*pi*r/q, gcd(r, q) = 1:
// an outer sum over residues a mod q and an inner sum over Dirichlet
// characters mod q/gcd(a, q).
Complex p_tilde_general(int r, int q, Complex s);

// Transform of the q equally-spaced-holes constant:
//   (2 pi)^{s+1} zeta(s) / (2 q^s s (s+1) (s+2) zeta(s+1)).
Complex p_tilde_q_holes(int q, Complex s);

MellinModel closed_form_model(int q);
MellinModel character_series_model(int r, int q);
MellinModel q_hole_model(int q);

// Residue data at a pole s0, normalized so the pole's contribution to the
// survival constant is delta^{-s0} * (coefficient + log_coefficient*ln(delta)).
struct ResidueEstimate {
  Complex coefficient{0.0, 0.0};
  Complex log_coefficient{0.0, 0.0};
};

// Contour quadrature around s0 (M-point trapezoid on a circle of the given
// radius), run at two widths to separate the constant and ln-delta parts of
// a double pole. Throws AccuracyError when doubling M moves the answer by
// more than 1e-8.
ResidueEstimate residue_numeric(const MellinModel& model, Complex s0, double delta,
                                double radius = 0.25, int points = 128);

struct AsymptoticExpansion {
  struct RealPoleTerm {
    double pole = 0.0;
    double coefficient = 0.0;
    double log_coefficient = 0.0;
  };
  struct CriticalTerm {
    double tau = 0.0;
    Complex coefficient{0.0, 0.0};
  };
  std::vector<RealPoleTerm> real_pole_terms;
  std::vector<CriticalTerm> critical_terms;  // conjugate pair included implicitly

  double evaluate(double delta) const;
  double evaluate_real_poles(double delta) const;
};

// Residues at s = 1, -1, -2 and the odd negatives down to -real_pole_cutoff
// (s = 0 and the even negatives below -2 are regular points), plus conjugate
// critical-line pairs at s = -1/2 +- i*tau_j for the first zero_count zeros.
AsymptoticExpansion asymptotic_expansion(const MellinModel& model, int real_pole_cutoff,
                                         int zero_count);

// Independent oracle: adaptive Simpson quadrature of the transform integral
// over the exact survival constant, with integration split at the kink
// locations of the finite sum and the [0, delta_min) head estimated from the
// measured leading term. Real s > 1.
double mellin_quadrature_two_holes(int r, int q, double s, double delta_min = 1e-4);
double mellin_quadrature_q_holes(int q, double s, double delta_min = 1e-4);

// Analytic residues of the closed-form transforms, defined for q in
// {1,2,3,4,6} and s in {1,-1,-2,-3} (same delta^{-s} normalization as
// residue_numeric; the q = 6 entry at s = -1 has a genuine log part).
// Empty optional outside that set.
struct ResidueReference {
  double coefficient = 0.0;
  double log_coefficient = 0.0;
};
std::optional<ResidueReference> reference_residue(int q, int s);

}  // namespace circesc
