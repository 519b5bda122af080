#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "circesc/rng.hpp"

namespace circesc {

// Boundary collision state of the circle billiard. beta is the position
// angle on the boundary in [0, 2*pi); psi is the reflection angle against
// the inner normal in [-pi/2, pi/2] and is conserved by the map.
struct PhasePoint {
  double beta = 0.0;
  double psi = 0.0;
};

// theta = 2*pi*num/den with gcd(num, den) = 1.
struct RationalAngle {
  long long num = 0;
  long long den = 1;
};

// One, two, or q equally spaced boundary holes, each an arc of length delta.
// Arcs are half-open [start, start + delta) so membership is total; the
// two-hole arcs start at 0 and theta, the q-hole arcs at 2*pi*j/q.
class HoleConfiguration {
public:
  static HoleConfiguration one_hole(double delta);
  static HoleConfiguration two_holes(double theta, double delta);
  // Keeps (r, q) so downstream reductions of theta can run in exact
  // integer arithmetic. Requires gcd(r, q) = 1 and 0 <= r < q.
  static HoleConfiguration two_holes_rational(long long r, long long q, double delta);
  static HoleConfiguration equally_spaced(int num_holes, double delta);

  double delta() const { return delta_; }
  double theta() const { return theta_; }
  std::optional<RationalAngle> rational() const { return rational_; }
  std::optional<int> num_equal_holes() const { return num_equal_; }

  // true iff beta (any real angle) lies inside some hole arc
  bool contains(double beta) const;

private:
  HoleConfiguration() = default;
  double delta_ = 0.0;
  double theta_ = 0.0;
  std::optional<RationalAngle> rational_;
  std::optional<int> num_equal_;
};

struct EscapeResult {
  bool escaped = false;
  // First bounce index inside a hole when escaped; the exhausted cap when not.
  std::uint64_t bounces = 0;
  // 2*cos(psi)*bounces when escaped, +infinity otherwise.
  double continuous_time = std::numeric_limits<double>::infinity();
};

// One collision step: (beta, psi) -> (beta + pi - 2*psi mod 2*pi, psi).
PhasePoint billiard_map(const PhasePoint& p);

// beta after k steps via the closed form beta0 + k*(pi - 2*psi), reduced to
// [0, 2*pi). Exact rotation structure; no per-step error accumulation.
double beta_after(const PhasePoint& p, std::uint64_t k);

// i.i.d. draws from the invariant measure d(mu) = cos(psi)/(4*pi) d(psi) d(beta):
// beta uniform on [0, 2*pi), psi = arcsin(2u - 1).
std::vector<PhasePoint> sample_initial(CounterRng& rng, std::size_t count);

// Least k in [1, max_bounces] whose image lies in a hole arc (the initial
// point is never tested), with tau = 2*cos(psi)*k. Survivors at the cap are
// genuine neighborhoods of periodic orbits, so the cap only bounds work.
EscapeResult escape_count(const PhasePoint& p, const HoleConfiguration& holes,
                          std::uint64_t max_bounces = 100000000);

// Closed psi-interval of surviving directions, endpoints on the scan grid.
struct PsiInterval {
  double lo = 0.0;
  double hi = 0.0;
};

// Scans psi over a uniform grid of psi_grid points in [-pi/2, pi/2] and
// returns maximal runs whose orbit from (beta, psi) has continuous escape
// time > time_horizon. Returns {} outright when delta >= pi.
std::vector<PsiInterval> surviving_psi_intervals(double beta, const HoleConfiguration& holes,
                                                 double time_horizon, std::size_t psi_grid);

}  // namespace circesc
