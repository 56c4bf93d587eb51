#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "jeffreys/histogram.hpp"

namespace jeffreys {

/// mt19937_64 with a platform-independent mapping to doubles.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Independent stream for (seed, index), e.g. one per trial.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, n).
  std::size_t index(std::size_t n);

private:
  std::mt19937_64 engine_;
};

// Bins drawn i.i.d. uniform(0.01, 1).
Histogram random_positive_histogram(Rng& rng, std::size_t d, double scale = 1.0);
FrequencyHistogram random_frequency_histogram(Rng& rng, std::size_t d);
/// n random frequency histograms; weights uniform(0.01, 1) renormalized, or equal.
WeightedHistogramSet random_frequency_set(Rng& rng, std::size_t n, std::size_t d, bool random_weights = true);

}  // namespace jeffreys
