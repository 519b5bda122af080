#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "circesc/mellin.hpp"
#include "circesc/numeric_util.hpp"
#include "circesc/rh_probe.hpp"
#include "circesc/survival.hpp"

using namespace circesc;

TEST_CASE("log grid endpoints and ordering") {
  const auto g = log_spaced_grid(1e-3, 1e-1, 41);
  REQUIRE(g.size() == 41);
  CHECK(g.front() == 1e-1);
  CHECK(g.back() == 1e-3);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) REQUIRE(g[i] > g[i + 1]);
  CHECK_THROWS_AS((void)log_spaced_grid(1e-1, 1e-3, 10), std::domain_error);
}

TEST_CASE("one-hole fluctuation scales like the square root of the width") {
  const auto grid = log_spaced_grid(1e-4, 1e-2, 160);
  const auto series = fluctuation(1, 0, grid, 3);
  CHECK(series.envelope_exponent == doctest::Approx(0.5).epsilon(0.2));
  CHECK(series.envelope_exponent > 0.3);   // bracket: decays faster than width^0.4 - tol
  CHECK(series.envelope_exponent < 0.7);   // and slower than width^0.6 + tol
  CHECK(min_sign_changes_per_decade(series.deltas, series.residuals) >= 3);

  // magnitude sits on the sqrt scale, far above the width scale
  for (std::size_t i = 0; i < series.deltas.size(); ++i) {
    if (std::abs(series.deltas[i] - 1e-3) < 1e-5) {
      CHECK(std::abs(series.residuals[i]) < 0.032);
      CHECK(std::abs(series.residuals[i]) > 1e-7);
    }
  }
}

TEST_CASE("subtracting critical-line pairs lowers the per-decade maxima") {
  const auto grid = log_spaced_grid(1e-3, 1e-1, 120);
  const auto plain = fluctuation(1, 0, grid, 3, 0);
  const auto detrended = fluctuation(1, 0, grid, 3, 30);
  const auto m0 = per_decade_maxima(plain.deltas, plain.residuals);
  const auto m1 = per_decade_maxima(detrended.deltas, detrended.residuals);
  REQUIRE(m0.size() == m1.size());
  for (std::size_t b = 0; b < m0.size(); ++b) REQUIRE(m1[b] < m0[b] / 1.3);
}

TEST_CASE("determinism of the series") {
  const auto grid = log_spaced_grid(1e-3, 1e-1, 60);
  const auto a = fluctuation(2, 1, grid, 3, 2);
  const auto b = fluctuation(2, 1, grid, 3, 2);
  REQUIRE(a.residuals.size() == b.residuals.size());
  for (std::size_t i = 0; i < a.residuals.size(); ++i)
    REQUIRE(a.residuals[i] == b.residuals[i]);
  CHECK(a.envelope_exponent == b.envelope_exponent);
}

TEST_CASE("one-vs-two comparator cancels the leading orders") {
  // the 1/width terms cancel outright
  for (double d : {1e-3, 1e-4}) {
    const double diff = p_infinity_two_holes(RationalAngle{0, 1}, d).value -
                        2.0 * p_infinity_two_holes(RationalAngle{1, 2}, d).value;
    CHECK(std::abs(d * diff) < 1e-5);
  }
  // the width-linear coefficient of the difference is -13/12 + 2/6 = -3/4
  const auto e1 = asymptotic_expansion(closed_form_model(1), 3, 0);
  const auto e2 = asymptotic_expansion(closed_form_model(2), 3, 0);
  double c1 = 0.0, c2 = 0.0;
  for (const auto& t : e1.real_pole_terms)
    if (t.pole == -1.0) c1 = t.coefficient;
  for (const auto& t : e2.real_pole_terms)
    if (t.pole == -1.0) c2 = t.coefficient;
  CHECK(c1 - 2.0 * c2 == doctest::Approx(-0.75).epsilon(1e-8));

  const auto grid = log_spaced_grid(1e-4, 1e-2, 160);
  const auto series = comparator_one_two(grid);
  CHECK(series.envelope_exponent > 0.3);
  CHECK(series.envelope_exponent < 0.7);
}

TEST_CASE("q-hole comparator") {
  const auto grid = log_spaced_grid(1e-3, 1e-1, 80);
  // q = 2 delegates to the one-vs-two comparator outright
  const auto a = q_hole_comparator(2, grid);
  const auto b = comparator_one_two(grid);
  REQUIRE(a.residuals.size() == b.residuals.size());
  for (std::size_t i = 0; i < a.residuals.size(); ++i)
    REQUIRE(std::abs(a.residuals[i] - b.residuals[i]) <= 1e-12);

  // leading residue of the q-hole transform is 2/q, so q * P_q cancels the
  // one-hole 2/width term
  for (int q : {3, 4, 6}) {
    const auto eq = asymptotic_expansion(q_hole_model(q), 1, 0);
    double lead = 0.0;
    for (const auto& t : eq.real_pole_terms)
      if (t.pole == 1.0) lead = t.coefficient;
    REQUIRE(lead == doctest::Approx(2.0 / q).epsilon(1e-8));
  }

  const auto fine = log_spaced_grid(1e-4, 1e-2, 160);
  const auto s3 = q_hole_comparator(3, fine);
  CHECK(s3.envelope_exponent > 0.3);
  CHECK(s3.envelope_exponent < 0.7);
  CHECK_THROWS_AS((void)q_hole_comparator(5, grid), std::domain_error);
}

TEST_CASE("grid validation") {
  std::vector<double> increasing{1e-3, 1e-2};
  CHECK_THROWS_AS((void)fluctuation(1, 0, increasing, 3), std::domain_error);
  std::vector<double> single{1e-3};
  CHECK_THROWS_AS((void)comparator_one_two(single), std::domain_error);
  std::vector<double> bad_r{1e-2, 1e-3};
  CHECK_THROWS_AS((void)fluctuation(4, 2, bad_r, 3), std::domain_error);
}
