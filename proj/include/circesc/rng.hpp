#pragma once

#include <cstdint>

namespace circesc {

// Counter-based generator: output i of stream k is a SplitMix64-style hash of
// (seed, k, i). Streams are statistically disjoint and every value depends
// only on (seed, stream, counter), so parallel runs are reproducible
// regardless of scheduling.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // Uniform in [0, 1) with 53 random bits.
  double next_u01();

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace circesc
