#include "circesc/rh_probe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "circesc/numeric_util.hpp"
#include "circesc/survival.hpp"

namespace circesc {

std::vector<double> log_spaced_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::domain_error("log_spaced_grid: need 0 < lo < hi");
  if (n < 2) throw std::domain_error("log_spaced_grid: need n >= 2");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double l0 = std::log10(hi), l1 = std::log10(lo);
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1.0));
  out.front() = hi;
  out.back() = lo;
  return out;
}

namespace {

// decade bin index relative to the smallest grid value; the exact top edge
// folds into the highest bin
struct DecadeBins {
  std::vector<int> bin_of_point;
  int count = 0;
};

DecadeBins decade_bins(std::span<const double> deltas) {
  double lo = deltas.back(), hi = deltas.front();
  for (double d : deltas) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  const double base = std::log10(lo);
  const double span = std::log10(hi) - base;
  const int nbins = std::max(1, static_cast<int>(std::ceil(span - 1e-9)));
  DecadeBins bins;
  bins.count = nbins;
  bins.bin_of_point.reserve(deltas.size());
  for (double d : deltas) {
    int b = static_cast<int>(std::floor(std::log10(d) - base + 1e-12));
    b = std::clamp(b, 0, nbins - 1);
    bins.bin_of_point.push_back(b);
  }
  return bins;
}

void check_series(std::span<const double> deltas, std::span<const double> residuals) {
  if (deltas.size() != residuals.size() || deltas.size() < 2)
    throw std::domain_error("fluctuation series: need matching grids of >= 2 points");
}

}  // namespace

std::vector<double> per_decade_maxima(std::span<const double> deltas,
                                      std::span<const double> residuals) {
  check_series(deltas, residuals);
  const auto bins = decade_bins(deltas);
  std::vector<double> maxima(static_cast<std::size_t>(bins.count), 0.0);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    auto& m = maxima[static_cast<std::size_t>(bins.bin_of_point[i])];
    m = std::max(m, std::abs(residuals[i]));
  }
  return maxima;
}

EnvelopeFit fit_envelope(std::span<const double> deltas, std::span<const double> residuals) {
  check_series(deltas, residuals);
  const auto bins = decade_bins(deltas);
  // abscissa of each bin's max point, ordinate log10 of the max
  std::vector<double> xs(static_cast<std::size_t>(bins.count),
                         -std::numeric_limits<double>::infinity());
  std::vector<double> ys(static_cast<std::size_t>(bins.count), 0.0);
  std::vector<bool> has(static_cast<std::size_t>(bins.count), false);
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const auto b = static_cast<std::size_t>(bins.bin_of_point[i]);
    const double r = std::abs(residuals[i]);
    if (!has[b] || r > ys[b]) {
      has[b] = true;
      ys[b] = r;
      xs[b] = std::log10(deltas[i]);
    }
  }
  std::vector<double> fx, fy;
  for (std::size_t b = 0; b < has.size(); ++b) {
    if (!has[b] || ys[b] <= 0.0) continue;
    fx.push_back(xs[b]);
    fy.push_back(std::log10(ys[b]));
  }
  if (fx.size() < 2)
    throw AccuracyError("fit_envelope: degenerate fit (all residuals vanish or one decade)");

  const double n = static_cast<double>(fx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    sx += fx[i];
    sy += fy[i];
    sxx += fx[i] * fx[i];
    sxy += fx[i] * fy[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12) throw AccuracyError("fit_envelope: abscissae collapse");
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;

  double rss = 0.0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const double e = fy[i] - (intercept + slope * fx[i]);
    rss += e * e;
  }
  EnvelopeFit fit;
  fit.exponent = slope;
  fit.bins = static_cast<int>(fx.size());
  fit.half_width =
      fx.size() > 2 ? 2.0 * std::sqrt(rss / (n - 2.0) * n / det) : 0.0;
  return fit;
}

int min_sign_changes_per_decade(std::span<const double> deltas,
                                std::span<const double> residuals) {
  check_series(deltas, residuals);
  const auto bins = decade_bins(deltas);
  std::vector<int> changes(static_cast<std::size_t>(bins.count), 0);
  for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
    if (residuals[i] == 0.0 || residuals[i + 1] == 0.0) continue;
    if ((residuals[i] < 0.0) != (residuals[i + 1] < 0.0)) {
      // attribute the crossing to the decade of the left (larger) width
      ++changes[static_cast<std::size_t>(bins.bin_of_point[i])];
    }
  }
  int least = changes.empty() ? 0 : changes.front();
  for (int c : changes) least = std::min(least, c);
  return least;
}

namespace {

void validate_grid(std::span<const double> grid) {
  if (grid.size() < 2) throw std::domain_error("probe: delta grid needs >= 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw std::domain_error("probe: widths must be positive");
    if (i > 0 && !(grid[i] < grid[i - 1]))
      throw std::domain_error("probe: widths must be strictly decreasing");
  }
}

FluctuationSeries finish_series(std::vector<double> deltas, std::vector<double> residuals) {
  FluctuationSeries out;
  out.deltas = std::move(deltas);
  out.residuals = std::move(residuals);
  bool all_zero = true;
  for (double r : out.residuals)
    if (r != 0.0) all_zero = false;
  if (all_zero) throw AccuracyError("probe: residuals identically zero (grid too coarse)");
  const auto fit = fit_envelope(out.deltas, out.residuals);
  out.envelope_exponent = fit.exponent;
  out.envelope_half_width = fit.half_width;
  return out;
}

}  // namespace

FluctuationSeries fluctuation(int q, int r, std::span<const double> delta_grid,
                              int real_pole_cutoff, int zero_count) {
  validate_grid(delta_grid);
  if (q == 1) r = 0;
  // for q in {2,3,4,6} every coprime r is the mirror image of r = 1, so the
  // r = 1 closed form is the transform of the exact sum below
  const auto model = closed_form_model(q);
  if (!(q == 1 && r == 0) && (r < 1 || gcd_ll(r, q) != 1))
    throw std::domain_error("fluctuation: need gcd(r, q) = 1");
  const auto expansion = asymptotic_expansion(model, real_pole_cutoff, zero_count);
  const RationalAngle theta{r, q};
  std::vector<double> deltas(delta_grid.begin(), delta_grid.end());
  std::vector<double> residuals;
  residuals.reserve(deltas.size());
  for (double d : deltas)
    residuals.push_back(p_infinity_two_holes(theta, d).value - expansion.evaluate(d));
  return finish_series(std::move(deltas), std::move(residuals));
}

FluctuationSeries comparator_one_two(std::span<const double> delta_grid) {
  validate_grid(delta_grid);
  const auto e1 = asymptotic_expansion(closed_form_model(1), 3, 0);
  const auto e2 = asymptotic_expansion(closed_form_model(2), 3, 0);
  std::vector<double> deltas(delta_grid.begin(), delta_grid.end());
  std::vector<double> residuals;
  residuals.reserve(deltas.size());
  const RationalAngle opposite{1, 2};
  for (double d : deltas) {
    const double exact =
        p_infinity_two_holes(RationalAngle{0, 1}, d).value -
        2.0 * p_infinity_two_holes(opposite, d).value;
    const double trend = e1.evaluate_real_poles(d) - 2.0 * e2.evaluate_real_poles(d);
    residuals.push_back(exact - trend);
  }
  return finish_series(std::move(deltas), std::move(residuals));
}

FluctuationSeries q_hole_comparator(int q, std::span<const double> delta_grid) {
  if (q == 2) return comparator_one_two(delta_grid);
  if (q != 3 && q != 4 && q != 6)
    throw std::domain_error("q_hole_comparator: q must be in {2, 3, 4, 6}");
  validate_grid(delta_grid);
  const auto e1 = asymptotic_expansion(closed_form_model(1), 3, 0);
  const auto eq = asymptotic_expansion(q_hole_model(q), 3, 0);
  std::vector<double> deltas(delta_grid.begin(), delta_grid.end());
  std::vector<double> residuals;
  residuals.reserve(deltas.size());
  for (double d : deltas) {
    const double exact =
        p_infinity_two_holes(RationalAngle{0, 1}, d).value - q * p_infinity_q_holes(q, d).value;
    const double trend = e1.evaluate_real_poles(d) - q * eq.evaluate_real_poles(d);
    residuals.push_back(exact - trend);
  }
  return finish_series(std::move(deltas), std::move(residuals));
}

}  // namespace circesc
