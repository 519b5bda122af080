#include "circesc/billiard.hpp"

#include <cmath>
#include <stdexcept>

#include "circesc/arith.hpp"
#include "circesc/numeric_util.hpp"

namespace circesc {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0)) throw std::domain_error("HoleConfiguration: delta must be > 0");
}

}  // namespace

HoleConfiguration HoleConfiguration::one_hole(double delta) {
  check_delta(delta);
  HoleConfiguration h;
  h.delta_ = delta;
  h.theta_ = 0.0;
  h.rational_ = RationalAngle{0, 1};
  return h;
}

HoleConfiguration HoleConfiguration::two_holes(double theta, double delta) {
  check_delta(delta);
  if (theta < 0.0 || theta >= kTwoPi)
    throw std::domain_error("HoleConfiguration: theta must lie in [0, 2*pi)");
  HoleConfiguration h;
  h.delta_ = delta;
  h.theta_ = theta;
  if (theta == 0.0) h.rational_ = RationalAngle{0, 1};
  return h;
}

HoleConfiguration HoleConfiguration::two_holes_rational(long long r, long long q, double delta) {
  check_delta(delta);
  if (r == 0) q = 1;  // theta = 0 is the one-hole case
  if (q < 1 || r < 0 || r >= q || (r > 0 && gcd_ll(r, q) != 1))
    throw std::domain_error("HoleConfiguration: need 0 <= r < q with gcd(r, q) = 1");
  HoleConfiguration h;
  h.delta_ = delta;
  h.theta_ = kTwoPi * static_cast<double>(r) / static_cast<double>(q);
  h.rational_ = RationalAngle{r, q};
  return h;
}

HoleConfiguration HoleConfiguration::equally_spaced(int num_holes, double delta) {
  check_delta(delta);
  if (num_holes < 2)
    throw std::domain_error("HoleConfiguration: equally_spaced needs q >= 2");
  HoleConfiguration h;
  h.delta_ = delta;
  h.num_equal_ = num_holes;
  return h;
}

bool HoleConfiguration::contains(double beta) const {
  const double b = wrap_angle(beta);
  if (num_equal_) {
    // holes start at 2*pi*j/q, so membership only depends on b mod (2*pi/q)
    const double cell = kTwoPi / *num_equal_;
    double r = std::fmod(b, cell);
    return r < delta_;
  }
  if (b < delta_) return true;
  if (theta_ == 0.0) return false;
  // second arc [theta, theta + delta), possibly wrapping past 2*pi
  const double rel = b - theta_;
  if (rel >= 0.0 && rel < delta_) return true;
  if (rel < 0.0 && rel + kTwoPi < delta_) return true;
  return false;
}

PhasePoint billiard_map(const PhasePoint& p) {
  return {wrap_angle(p.beta + (kPi - 2.0 * p.psi)), p.psi};
}

double beta_after(const PhasePoint& p, std::uint64_t k) {
  const double step = kPi - 2.0 * p.psi;
  return wrap_angle(p.beta + static_cast<double>(k) * step);
}

std::vector<PhasePoint> sample_initial(CounterRng& rng, std::size_t count) {
  std::vector<PhasePoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double beta = kTwoPi * rng.next_u01();
    const double psi = std::asin(2.0 * rng.next_u01() - 1.0);
    out.push_back({beta, psi});
  }
  return out;
}

EscapeResult escape_count(const PhasePoint& p, const HoleConfiguration& holes,
                          std::uint64_t max_bounces) {
  if (max_bounces < 1) throw std::domain_error("escape_count: max_bounces must be >= 1");
  const double step = kPi - 2.0 * p.psi;
  const double wrapped_step = wrap_angle(step);

  if (wrapped_step == 0.0) {
    // Tangent fixed point (psi = +-pi/2): the orbit never moves.
    if (holes.contains(p.beta)) {
      const double tau = 2.0 * std::cos(p.psi);
      return {true, 1, tau};
    }
    return {false, max_bounces, std::numeric_limits<double>::infinity()};
  }

  const double two_cos = 2.0 * std::cos(p.psi);
  double beta = wrap_angle(p.beta);
  // Incremental rotation with a periodic closed-form reset: cheap per step,
  // no error growth on long orbits.
  constexpr std::uint64_t kResync = 1u << 20;
  for (std::uint64_t k = 1; k <= max_bounces; ++k) {
    beta += wrapped_step;
    if (beta >= kTwoPi) beta -= kTwoPi;
    if ((k & (kResync - 1)) == 0) beta = beta_after(p, k);
    if (holes.contains(beta)) return {true, k, two_cos * static_cast<double>(k)};
  }
  return {false, max_bounces, std::numeric_limits<double>::infinity()};
}

std::vector<PsiInterval> surviving_psi_intervals(double beta, const HoleConfiguration& holes,
                                                 double time_horizon, std::size_t psi_grid) {
  if (psi_grid < 2) throw std::domain_error("surviving_psi_intervals: psi_grid must be >= 2");
  if (!(time_horizon > 0.0))
    throw std::domain_error("surviving_psi_intervals: time_horizon must be > 0");
  if (holes.delta() >= kPi) return {};

  std::vector<PsiInterval> out;
  const std::size_t n = psi_grid;
  bool in_run = false;
  double run_lo = 0.0, run_hi = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // endpoints land exactly on +-pi/2 so the tangent fixed points are probed
    const double psi = kPi * (static_cast<double>(j) / static_cast<double>(n - 1)) - kPi / 2.0;
    const double two_cos = 2.0 * std::cos(psi);
    bool survives;
    if (two_cos <= 0.0 || wrap_angle(kPi - 2.0 * psi) == 0.0) {
      survives = !holes.contains(beta);
    } else {
      // escapes at bounce k count against the horizon iff 2*cos(psi)*k <= t
      const double budget = std::floor(time_horizon / two_cos);
      if (budget < 1.0) {
        survives = true;  // even the first bounce already happens after t
      } else {
        const std::uint64_t cap = budget > 9.0e18
                                      ? std::uint64_t{9000000000000000000ULL}
                                      : static_cast<std::uint64_t>(budget);
        const auto res = escape_count({beta, psi}, holes, cap);
        survives = !res.escaped;
      }
    }
    if (survives) {
      if (!in_run) {
        in_run = true;
        run_lo = psi;
      }
      run_hi = psi;
    } else if (in_run) {
      out.push_back({run_lo, run_hi});
      in_run = false;
    }
  }
  if (in_run) out.push_back({run_lo, run_hi});
  return out;
}

}  // namespace circesc
