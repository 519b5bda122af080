#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace circesc {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Deterministic pairwise (cascade) summation; error grows like log2(n)*eps
// instead of n*eps and is independent of thread scheduling.
double pairwise_sum(std::span<const double> values);

// Reduce an angle to [0, 2*pi).
inline double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod can return exactly 2*pi after the correction when x is a tiny
  // negative number.
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// Thrown when an evaluation is requested at (or too close to) a pole.
class PoleError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Thrown when an internal accuracy check fails (quadrature did not converge,
// cross-path identity violated, ...).
class AccuracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace circesc
