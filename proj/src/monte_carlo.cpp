#include "circesc/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "circesc/numeric_util.hpp"

namespace circesc {

namespace {

// Survivor count for one stream's share of the samples.
std::uint64_t run_stream(const HoleConfiguration& holes, double t, std::uint64_t n,
                         std::uint64_t seed, std::uint64_t stream) {
  CounterRng rng(seed, stream);
  std::uint64_t survivors = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double beta = kTwoPi * rng.next_u01();
    const double psi = std::asin(2.0 * rng.next_u01() - 1.0);
    const double two_cos = 2.0 * std::cos(psi);
    // bounce budget covers every k with tau = 2*cos(psi)*k <= t
    const double fbudget = std::ceil(t / two_cos);
    const std::uint64_t budget =
        fbudget > 9.0e18 ? std::uint64_t{9000000000000000000ULL}
                         : static_cast<std::uint64_t>(fbudget);
    const auto res = escape_count({beta, psi}, holes, budget == 0 ? 1 : budget);
    if (!res.escaped || res.continuous_time > t) ++survivors;
  }
  return survivors;
}

}  // namespace

SurvivalEstimate estimate_survival(const HoleConfiguration& holes, double t,
                                   std::uint64_t samples, std::uint64_t seed, int streams,
                                   int max_threads) {
  if (!(t > 0.0)) throw std::domain_error("estimate_survival: t must be > 0");
  if (samples < 1) throw std::domain_error("estimate_survival: samples must be >= 1");
  if (streams < 1) throw std::domain_error("estimate_survival: streams must be >= 1");

  const std::uint64_t ns = static_cast<std::uint64_t>(streams);
  std::vector<std::uint64_t> counts(ns, 0);

  // stream i handles samples/ns plus one of the remainder
  auto stream_share = [&](std::uint64_t i) {
    return samples / ns + (i < samples % ns ? 1 : 0);
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned workers = max_threads > 0 ? static_cast<unsigned>(max_threads) : hw;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(ns));

  if (workers <= 1) {
    for (std::uint64_t i = 0; i < ns; ++i)
      counts[i] = run_stream(holes, t, stream_share(i), seed, i);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::uint64_t i = next.fetch_add(1);
          if (i >= ns) return;
          counts[i] = run_stream(holes, t, stream_share(i), seed, i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::uint64_t survivors = 0;
  for (std::uint64_t c : counts) survivors += c;

  SurvivalEstimate est;
  est.t = t;
  est.survivors = survivors;
  est.samples = samples;
  est.p_hat = static_cast<double>(survivors) / static_cast<double>(samples);
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
  est.tp_hat = t * est.p_hat;
  est.seed = seed;
  est.streams = streams;
  est.regime_warning = t <= 8.0 * kPi / holes.delta();
  return est;
}

}  // namespace circesc
