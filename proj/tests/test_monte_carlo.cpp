#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "circesc/monte_carlo.hpp"
#include "circesc/numeric_util.hpp"
#include "circesc/survival.hpp"

using namespace circesc;

TEST_CASE("rng streams are deterministic and distinct") {
  CounterRng a(123, 0), b(123, 0), c(123, 1);
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    REQUIRE(va == b.next_u64());
    REQUIRE(va != c.next_u64());
  }
  CounterRng u(9, 4);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.next_u01();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
  }
}

TEST_CASE("estimates are reproducible across thread counts") {
  const auto holes = HoleConfiguration::two_holes(kPi, 0.4);
  const auto a = estimate_survival(holes, 300.0, 200000, 42, 16, 1);
  const auto b = estimate_survival(holes, 300.0, 200000, 42, 16, 2);
  const auto c = estimate_survival(holes, 300.0, 200000, 42, 16, 0);
  REQUIRE(a.survivors == b.survivors);
  REQUIRE(a.survivors == c.survivors);
  CHECK(a.tp_hat == b.tp_hat);
  // a different stream split is a different estimator
  const auto d = estimate_survival(holes, 300.0, 200000, 42, 8, 2);
  CHECK(d.samples == a.samples);
}

TEST_CASE("full-circle hole kills every orbit at the first bounce") {
  const auto est = estimate_survival(HoleConfiguration::one_hole(kTwoPi), 10.0, 50000, 5, 4);
  CHECK(est.survivors == 0);
  CHECK(est.p_hat == 0.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("estimate matches the exact constant at t = 1000") {
  const double delta = kPi / 8.0;
  const auto exact = p_infinity_two_holes(0.0, delta).value;
  const auto est =
      estimate_survival(HoleConfiguration::one_hole(delta), 1000.0, 200000, 777, 32);
  REQUIRE(est.survivors > 0);
  CHECK(std::abs(est.tp_hat - exact) < 3.0 * est.t * est.std_error);
  CHECK(!est.regime_warning);
}

TEST_CASE("estimate brackets the hand-evaluated constants at delta = pi/2") {
  const auto one =
      estimate_survival(HoleConfiguration::one_hole(kPi / 2.0), 1000.0, 400000, 11, 32);
  CHECK(std::abs(one.tp_hat - 5.0 * kPi / 32.0) < 3.0 * one.t * one.std_error);
  const auto two = estimate_survival(HoleConfiguration::two_holes(kPi, kPi / 2.0), 1000.0,
                                     400000, 12, 32);
  CHECK(std::abs(two.tp_hat - kPi / 8.0) < 3.0 * two.t * two.std_error);
}

TEST_CASE("equally spaced holes agree with the exact q-hole constant") {
  const double delta = kPi / 8.0;
  const auto exact = p_infinity_q_holes(3, delta).value;
  const auto est =
      estimate_survival(HoleConfiguration::equally_spaced(3, delta), 500.0, 400000, 4711, 32);
  REQUIRE(est.survivors > 0);
  CHECK(std::abs(est.tp_hat - exact) < 3.0 * est.t * est.std_error);
}

TEST_CASE("tail consistency between t and 2t") {
  const double delta = kPi / 8.0;
  const auto holes = HoleConfiguration::two_holes(kPi, delta);
  const auto a = estimate_survival(holes, 500.0, 300000, 31, 32);
  const auto b = estimate_survival(holes, 1000.0, 300000, 32, 32);
  const double sigma =
      std::hypot(a.t * a.std_error, b.t * b.std_error);
  CHECK(std::abs(a.tp_hat - b.tp_hat) < 3.0 * sigma);
}

TEST_CASE("regime warning fires when t is below 8 pi / delta") {
  const auto est = estimate_survival(HoleConfiguration::one_hole(0.1), 100.0, 10000, 1, 4);
  CHECK(est.regime_warning);  // 8 pi / 0.1 = 251
}

TEST_CASE("input validation") {
  const auto holes = HoleConfiguration::one_hole(0.5);
  CHECK_THROWS_AS((void)estimate_survival(holes, -1.0, 100, 1, 1), std::domain_error);
  CHECK_THROWS_AS((void)estimate_survival(holes, 10.0, 0, 1, 1), std::domain_error);
  CHECK_THROWS_AS((void)estimate_survival(holes, 10.0, 100, 1, 0), std::domain_error);
}
