#pragma once

#include <cstdint>

#include "circesc/billiard.hpp"

namespace circesc {

struct SurvivalEstimate {
  double t = 0.0;
  std::uint64_t survivors = 0;
  std::uint64_t samples = 0;
  double p_hat = 0.0;
  double std_error = 0.0;  // sqrt(p*(1-p)/samples)
  double tp_hat = 0.0;     // t * p_hat
  std::uint64_t seed = 0;
  int streams = 1;
  // set when t is below the 8*pi/delta asymptotic regime
  bool regime_warning = false;
};

// Direct simulation of the open billiard: draws initial conditions from the
// invariant measure and counts orbits whose continuous escape time exceeds t
// (strict). Work is split over `streams` independent RNG substreams and the
// counts merged in stream order, so results depend only on (seed, streams).
// max_threads = 0 means hardware concurrency.
SurvivalEstimate estimate_survival(const HoleConfiguration& holes, double t,
                                   std::uint64_t samples, std::uint64_t seed, int streams,
                                   int max_threads = 0);

}  // namespace circesc
