#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace jeffreys {

struct RatioStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Approximation factors J(x, H)/J(c~, H) against the exact frequency centroid c~,
/// over random sets of frequency histograms.
struct AlphaStatistics {
  std::size_t trials = 0;
  std::size_t dims = 0;
  std::size_t members = 0;
  RatioStats alpha_positive;    // unnormalized positive centroid c (<= 1)
  RatioStats alpha_normalized;  // c / w_c
  RatioStats w_c;
  RatioStats alpha_veldhuis;    // (a~ + g~) / 2
  double mean_bisection_iterations = 0.0;
  double mean_fixedpoint_iterations = 0.0;
  std::size_t fixedpoint_fallbacks = 0;
};

/// Trial t draws `members` histograms with bins uniform(0.01, 1), renormalized,
/// and equal weights, from an RNG stream keyed by (seed, t). Results do not
/// depend on `threads`.
AlphaStatistics alpha_trial_harness(std::size_t num_trials, std::size_t d, std::uint64_t seed,
                                    unsigned threads = 1, std::size_t members = 2);

/// Plain-text table: rows avg/min/max, columns alpha_c, alpha_c', w_c, alpha_c''.
std::string format_table(const AlphaStatistics& stats);

}  // namespace jeffreys
