#include "circesc/survival.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "circesc/numeric_util.hpp"

namespace circesc {

namespace {

inline double g_plus(double x) { return x > 0.0 ? x * x : 0.0; }

long long term_cutoff(double delta) {
  return static_cast<long long>(std::floor(kTwoPi / delta));
}

}  // namespace

double theta_reduced(long long n, double theta) {
  if (n < 1) throw std::domain_error("theta_reduced: n must be >= 1");
  const double cell = kTwoPi / static_cast<double>(n);
  double frac = std::fmod(theta * static_cast<double>(n) / kTwoPi, 1.0);
  if (frac < 0.0) frac += 1.0;
  double r = cell * frac;
  if (r >= cell) r = 0.0;
  return r;
}

double theta_reduced(long long n, const RationalAngle& theta) {
  if (n < 1) throw std::domain_error("theta_reduced: n must be >= 1");
  // theta = 2*pi*r/q: theta mod 2*pi/n = (2*pi/(n*q)) * (n*r mod q)
  const long long m = (n % theta.den) * (theta.num % theta.den) % theta.den;
  return kTwoPi * static_cast<double>(m) /
         (static_cast<double>(n) * static_cast<double>(theta.den));
}

namespace {

SurvivalConstant two_hole_sum(const HoleConfiguration& config, double delta,
                              const std::optional<RationalAngle>& rational, double theta) {
  if (!(delta > 0.0)) throw std::domain_error("p_infinity_two_holes: delta must be > 0");
  const long long nmax = term_cutoff(delta);
  const auto tables = shared_tables(static_cast<std::size_t>(std::max<long long>(nmax, 1)));
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(nmax));
  for (long long n = 1; n <= nmax; ++n) {
    const double w = static_cast<double>(n) *
                     (static_cast<double>(tables->phi[static_cast<std::size_t>(n)]) -
                      static_cast<double>(tables->mu[static_cast<std::size_t>(n)]));
    const double thp = rational ? theta_reduced(n, *rational) : theta_reduced(n, theta);
    terms.push_back(w * (g_plus(kTwoPi / static_cast<double>(n) - thp - delta) +
                         g_plus(thp - delta)));
  }
  SurvivalConstant out;
  out.value = pairwise_sum(terms) / (8.0 * kPi);
  out.terms_used = nmax;
  out.config = config;
  return out;
}

}  // namespace

SurvivalConstant p_infinity_two_holes(double theta, double delta) {
  const auto config = theta == 0.0 ? HoleConfiguration::one_hole(delta)
                                   : HoleConfiguration::two_holes(theta, delta);
  return two_hole_sum(config, delta, config.rational(), theta);
}

SurvivalConstant p_infinity_two_holes(const RationalAngle& theta, double delta) {
  const auto config = HoleConfiguration::two_holes_rational(theta.num, theta.den, delta);
  return two_hole_sum(config, delta, config.rational(), config.theta());
}

SurvivalConstant p_infinity_q_holes(int q, double delta) {
  if (q < 2) throw std::domain_error("p_infinity_q_holes: q must be >= 2");
  if (!(delta > 0.0)) throw std::domain_error("p_infinity_q_holes: delta must be > 0");
  const long long nmax = term_cutoff(delta);
  const auto tables = shared_tables(static_cast<std::size_t>(std::max<long long>(nmax, 1)));

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(nmax));
  for (long long n = 1; n <= nmax; ++n) {
    const long long qt = q / gcd_ll(n, q);
    const double arg = kTwoPi / (static_cast<double>(n) * static_cast<double>(qt)) - delta;
    if (arg <= 0.0) continue;
    const double w = static_cast<double>(n) *
                     (static_cast<double>(tables->phi[static_cast<std::size_t>(n)]) -
                      static_cast<double>(tables->mu[static_cast<std::size_t>(n)]));
    terms.push_back(w * static_cast<double>(qt) * arg * arg);
  }
  const double value = pairwise_sum(terms) / (8.0 * kPi);

  // regrouped form over n~ = n/gcd(n, q)
  std::vector<double> terms2;
  const long long ntmax = static_cast<long long>(std::floor(kTwoPi / (delta * q)));
  for (long long nt = 1; nt <= ntmax; ++nt) {
    const double arg = kTwoPi / (static_cast<double>(nt) * static_cast<double>(q)) - delta;
    if (arg <= 0.0) continue;
    terms2.push_back(static_cast<double>(nt) *
                     static_cast<double>(tables->phi[static_cast<std::size_t>(nt)]) *
                     static_cast<double>(q) * static_cast<double>(q) * arg * arg);
  }
  const double value2 = pairwise_sum(terms2) / (8.0 * kPi);
  if (std::abs(value - value2) > 1e-12 * std::max(1.0, std::abs(value)))
    throw AccuracyError("p_infinity_q_holes: regrouped sum disagrees");

  SurvivalConstant out;
  out.value = value;
  out.terms_used = nmax;
  out.config = HoleConfiguration::equally_spaced(q, delta);
  return out;
}

SurvivalConstant p_infinity(const HoleConfiguration& holes) {
  if (holes.num_equal_holes()) return p_infinity_q_holes(*holes.num_equal_holes(), holes.delta());
  if (holes.rational()) return p_infinity_two_holes(*holes.rational(), holes.delta());
  return p_infinity_two_holes(holes.theta(), holes.delta());
}

}  // namespace circesc
