#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "circesc/billiard.hpp"
#include "circesc/numeric_util.hpp"
#include "circesc/rng.hpp"

using namespace circesc;

TEST_CASE("map spot values") {
  const auto p1 = billiard_map({0.0, 0.0});
  CHECK(p1.beta == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(p1.psi == 0.0);

  // psi = pi/4 rotates by pi/2: period 4
  PhasePoint p{1.0, kPi / 4.0};
  for (int i = 0; i < 4; ++i) p = billiard_map(p);
  CHECK(p.beta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.psi == kPi / 4.0);

  PhasePoint r{0.0, 1.0};
  for (int i = 0; i < 4; ++i) r = billiard_map(r);
  CHECK(r.beta == doctest::Approx(wrap_angle(4.0 * (kPi - 2.0))).epsilon(1e-12));
}

TEST_CASE("psi is conserved exactly") {
  PhasePoint p{0.123456, 0.87654321};
  for (int i = 0; i < 10000; ++i) {
    p = billiard_map(p);
    REQUIRE(p.psi == 0.87654321);
  }
}

TEST_CASE("rotation structure matches the closed form") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const PhasePoint start{kTwoPi * rng.next_u01(), kPi * (rng.next_u01() - 0.5)};
    PhasePoint p = start;
    for (std::uint64_t k = 1; k <= 1000; ++k) {
      p = billiard_map(p);
      REQUIRE(std::abs(p.beta - beta_after(start, k)) < 1e-9);
    }
  }
}

TEST_CASE("rational directions have exact period n (integer arithmetic)") {
  // rotation by 2*pi*m/n in units of pi/n is 2m mod 2n; the orbit closes
  // after exactly n steps when gcd(m, n) = 1
  for (long long n = 2; n <= 50; ++n) {
    for (long long m = 1; m < n; ++m) {
      if (std::gcd(m, n) != 1) continue;
      long long pos = 0;
      long long period = 0;
      do {
        pos = (pos + 2 * m) % (2 * n);
        ++period;
      } while (pos != 0);
      REQUIRE(period == n);
    }
  }
}

TEST_CASE("irrational direction fills the circle (max gap)") {
  PhasePoint p{0.0, 1.0};
  std::vector<double> betas;
  betas.reserve(10000);
  for (int i = 0; i < 10000; ++i) {
    betas.push_back(p.beta);
    p = billiard_map(p);
  }
  std::sort(betas.begin(), betas.end());
  double max_gap = betas.front() + kTwoPi - betas.back();
  for (std::size_t i = 0; i + 1 < betas.size(); ++i)
    max_gap = std::max(max_gap, betas[i + 1] - betas[i]);
  CHECK(max_gap < 1e-2);
}

TEST_CASE("sampling zero points yields an empty sequence") {
  CounterRng rng(1, 1);
  CHECK(sample_initial(rng, 0).empty());
}

TEST_CASE("invariant measure sampling statistics") {
  CounterRng rng(7, 3);
  const auto pts = sample_initial(rng, 1000000);
  double psi_sum = 0.0, cos_sum = 0.0;
  std::size_t below_pi = 0;
  for (const auto& p : pts) {
    psi_sum += p.psi;
    cos_sum += std::cos(p.psi);
    if (p.beta < kPi) ++below_pi;
  }
  const double n = static_cast<double>(pts.size());
  CHECK(std::abs(psi_sum / n) < 3e-3);
  CHECK(std::abs(static_cast<double>(below_pi) / n - 0.5) < 2e-3);
  // E[cos psi] = integral cos^2/2 = pi/4
  CHECK(std::abs(cos_sum / n - kPi / 4.0) < 1e-3);
}

TEST_CASE("pushing measure samples through the map stays chi^2-consistent") {
  CounterRng rng(99, 1);
  auto pts = sample_initial(rng, 1000000);
  for (auto& p : pts)
    for (int it = 0; it < 10; ++it) p = billiard_map(p);
  // 8 x 8 bins with equal invariant mass: beta uniform, psi via sin quantiles
  std::vector<std::size_t> counts(64, 0);
  for (const auto& p : pts) {
    const int bi = std::min(7, static_cast<int>(p.beta / (kTwoPi / 8.0)));
    const double u = (std::sin(p.psi) + 1.0) / 2.0;
    const int pj = std::min(7, static_cast<int>(u * 8.0));
    ++counts[static_cast<std::size_t>(bi * 8 + pj)];
  }
  const double expect = 1000000.0 / 64.0;
  double chi2 = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expect;
    chi2 += d * d / expect;
  }
  // 99.9% quantile of chi^2 with 63 dof (Wilson-Hilferty) ~ 103.5
  CHECK(chi2 < 103.5);
}

TEST_CASE("escape basics with one hole") {
  const auto holes = HoleConfiguration::one_hole(kPi / 2.0);
  const auto r1 = escape_count({kPi + 0.1, 0.0}, holes, 100);
  REQUIRE(r1.escaped);
  CHECK(r1.bounces == 1);
  CHECK(r1.continuous_time == doctest::Approx(2.0).epsilon(1e-12));

  // period-2 orbit alternating pi - 0.1 <-> 2 pi - 0.1 never enters [0, pi/2)
  const auto r2 = escape_count({kPi - 0.1, 0.0}, holes, 1000000);
  CHECK(!r2.escaped);
  CHECK(r2.bounces == 1000000);
  CHECK(std::isinf(r2.continuous_time));
}

TEST_CASE("escape against a step-by-step replay") {
  const auto holes = HoleConfiguration::two_holes(kPi, 0.3);
  const PhasePoint start{2.0, 0.7};
  const auto fast = escape_count(start, holes, 1000000);

  PhasePoint p = start;
  std::uint64_t replay = 0;
  for (std::uint64_t k = 1; k <= 1000000; ++k) {
    p = billiard_map(p);
    if (p.beta >= 0.0 && p.beta < 0.3) {
      replay = k;
      break;
    }
    const double rel = p.beta - kPi;
    if (rel >= 0.0 && rel < 0.3) {
      replay = k;
      break;
    }
  }
  REQUIRE(replay > 0);
  REQUIRE(fast.escaped);
  CHECK(fast.bounces == replay);
  CHECK(fast.continuous_time == doctest::Approx(2.0 * std::cos(0.7) * replay));
}

TEST_CASE("escape replay on random orbits") {
  CounterRng rng(5, 5);
  const auto holes = HoleConfiguration::two_holes(2.0943951023931953, 0.21);
  for (int trial = 0; trial < 1000; ++trial) {
    const PhasePoint start{kTwoPi * rng.next_u01(),
                           std::asin(2.0 * rng.next_u01() - 1.0)};
    const auto fast = escape_count(start, holes, 5000);
    PhasePoint p = start;
    std::uint64_t replay = 0;
    for (std::uint64_t k = 1; k <= 5000; ++k) {
      p = billiard_map(p);
      if (holes.contains(p.beta)) {
        replay = k;
        break;
      }
    }
    if (fast.escaped)
      REQUIRE(fast.bounces == replay);
    else
      REQUIRE(replay == 0);
  }
}

TEST_CASE("hole membership wraps and q-hole cells work") {
  const auto wrapped = HoleConfiguration::two_holes(6.0, 0.5);  // second arc crosses 0
  CHECK(wrapped.contains(6.1));
  CHECK(wrapped.contains(6.28));
  CHECK(!wrapped.contains(5.9));
  CHECK(wrapped.contains(0.1));    // wrapped tail, also inside the first arc
  CHECK(wrapped.contains(0.49));   // first arc only
  CHECK(!wrapped.contains(0.51));

  const auto q4 = HoleConfiguration::equally_spaced(4, 0.2);
  for (int j = 0; j < 4; ++j) {
    CHECK(q4.contains(j * kPi / 2.0 + 0.1));
    CHECK(!q4.contains(j * kPi / 2.0 + 0.3));
  }
}

TEST_CASE("surviving intervals contain low-denominator rational directions") {
  const auto holes = HoleConfiguration::one_hole(1.0);
  // rational directions psi = pi/2 - (m/n) pi, gcd(m, n) = 1, n <= 6
  std::vector<double> rational;
  for (long long n = 1; n <= 6; ++n)
    for (long long m = 0; m <= n; ++m)
      if (std::gcd(m, n) == 1)
        rational.push_back(kPi / 2.0 - kPi * static_cast<double>(m) / static_cast<double>(n));

  for (double beta : {4.0, 2.0}) {
    const auto intervals = surviving_psi_intervals(beta, holes, 200.0, 100000);
    REQUIRE(!intervals.empty());
    const double pad = kPi / 99999.0;  // one grid cell of slack at the edges
    for (const auto& iv : intervals) {
      bool found = false;
      for (double psi : rational)
        if (psi >= iv.lo - pad && psi <= iv.hi + pad) found = true;
      REQUIRE(found);
    }
  }
}

TEST_CASE("period-2 interval present when the orbit avoids the hole") {
  // at beta = 2.0 the psi = 0 orbit visits {2.0, 2.0 + pi}, both off [0, 1)
  const auto holes = HoleConfiguration::one_hole(1.0);
  for (double t : {50.0, 200.0, 800.0}) {
    const auto intervals = surviving_psi_intervals(2.0, holes, t, 20000);
    bool has_zero = false;
    for (const auto& iv : intervals)
      if (iv.lo <= 0.0 && iv.hi >= 0.0) has_zero = true;
    REQUIRE(has_zero);
  }
}

TEST_CASE("longer horizons nest inside shorter ones") {
  const auto holes = HoleConfiguration::one_hole(0.8);
  const auto coarse = surviving_psi_intervals(2.0, holes, 100.0, 20000);
  const auto fine = surviving_psi_intervals(2.0, holes, 200.0, 20000);
  for (const auto& f : fine) {
    bool inside = false;
    for (const auto& c : coarse)
      if (f.lo >= c.lo && f.hi <= c.hi) inside = true;
    REQUIRE(inside);
  }
}

TEST_CASE("wide holes return no intervals") {
  const auto holes = HoleConfiguration::one_hole(kPi);
  CHECK(surviving_psi_intervals(2.0, holes, 100.0, 5000).empty());
}
