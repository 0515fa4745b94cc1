#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace simove {

// All randomness in the library flows through a 64-bit Mersenne Twister.
// Conversions to doubles and indices are done by hand instead of through
// <random> distributions, whose outputs are implementation-defined, so that
// traces are reproducible across standard libraries.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double unit_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline int uniform_index(Rng& rng, int n) {
  if (n <= 1) return 0;
  const auto k = static_cast<int>(unit_double(rng) * n);
  return k < n ? k : n - 1;
}

// Inverse-CDF sample from a probability vector. Falls back to the last
// positive entry when rounding leaves a residue above the cumulative sum.
inline int sample_index(Rng& rng, std::span<const double> probs) {
  const double u = unit_double(rng);
  double acc = 0.0;
  int last_positive = 0;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace simove
