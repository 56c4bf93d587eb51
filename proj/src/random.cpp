#include "jeffreys/random.hpp"

#include <vector>

namespace jeffreys {

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  Rng rng(0);
  rng.engine_.seed(seq);
  return rng;
}

std::size_t Rng::index(std::size_t n) {
  // rejection sampling keeps the draw unbiased
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

Histogram random_positive_histogram(Rng& rng, std::size_t d, double scale) {
  std::vector<double> bins(d);
  for (double& b : bins) b = scale * rng.uniform(0.01, 1.0);
  return Histogram(std::move(bins));
}

FrequencyHistogram random_frequency_histogram(Rng& rng, std::size_t d) {
  return normalize(random_positive_histogram(rng, d));
}

WeightedHistogramSet random_frequency_set(Rng& rng, std::size_t n, std::size_t d, bool random_weights) {
  std::vector<Histogram> members;
  std::vector<double> weights;
  for (std::size_t j = 0; j < n; ++j) {
    members.push_back(random_frequency_histogram(rng, d).histogram());
    weights.push_back(random_weights ? rng.uniform(0.01, 1.0) : 1.0);
  }
  return WeightedHistogramSet::with_relative_weights(std::move(members), std::move(weights));
}

}  // namespace jeffreys
