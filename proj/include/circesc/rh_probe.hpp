#pragma once

#include <span>
#include <vector>

#include "circesc/mellin.hpp"

namespace circesc {

// Fluctuation of the exact survival constant around a truncated expansion,
// sampled on a decreasing width grid, with the fitted envelope exponent of
// log|residual| vs log(width).
struct FluctuationSeries {
  std::vector<double> deltas;     // strictly decreasing
  std::vector<double> residuals;  // exact minus truncated expansion
  double envelope_exponent = 0.0;
  double envelope_half_width = 0.0;  // ~2 sigma of the fitted slope
};

// n log-spaced points from hi down to lo inclusive.
std::vector<double> log_spaced_grid(double lo, double hi, int n);

// Residual of the exact two-hole constant (theta = 2*pi*r/q, closed-form
// transform) against its real-pole expansion; zero_count > 0 additionally
// subtracts the first zero_count critical-line pairs.
FluctuationSeries fluctuation(int q, int r, std::span<const double> delta_grid,
                              int real_pole_cutoff, int zero_count = 0);

// D = P(one hole) - 2 P(opposite holes), detrended by the difference of the
// real-pole expansions through s = -3. The 1/width terms cancel exactly.
FluctuationSeries comparator_one_two(std::span<const double> delta_grid);

// Stacked-holes comparison P(one hole) - q P(q holes); q = 2 delegates to
// comparator_one_two (identical quantities).
FluctuationSeries q_hole_comparator(int q, std::span<const double> delta_grid);

// Envelope diagnostics shared by the probes: least squares on the per-decade
// maxima of log10|residual|.
struct EnvelopeFit {
  double exponent = 0.0;
  double half_width = 0.0;
  int bins = 0;
};
EnvelopeFit fit_envelope(std::span<const double> deltas, std::span<const double> residuals);

// Smallest per-decade count of residual sign changes.
int min_sign_changes_per_decade(std::span<const double> deltas,
                                std::span<const double> residuals);

// Largest |residual| in each whole decade bin, keyed from the grid minimum.
std::vector<double> per_decade_maxima(std::span<const double> deltas,
                                      std::span<const double> residuals);

}  // namespace circesc
