#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "jeffreys/histogram.hpp"

namespace jeffreys {

enum class ClusterCentroidMode { positive, normalized_approx, frequency_fixedpoint_1step, frequency_exact };

std::string_view to_string(ClusterCentroidMode mode);

struct ClusteringConfig {
  std::size_t k = 2;
  int max_iterations = 100;
  ClusterCentroidMode centroid_mode = ClusterCentroidMode::normalized_approx;
  std::uint64_t seed = 0;
  double objective_tolerance = 1e-12;
  /// Worker threads for assignment and relocation; results do not depend on it.
  unsigned threads = 1;
};

struct ClusteringResult {
  std::vector<std::size_t> assignments;
  std::vector<Histogram> centroids;
  /// sum_j pi_j J(h_j, c_assign(j)) after each assignment/relocation round.
  std::vector<double> objective_trace;
  int iterations = 0;
};

/// k distinct member indices: the first uniform, each next one drawn with
/// probability proportional to J(h, nearest chosen centre).
std::vector<std::size_t> seed_indices(const WeightedHistogramSet& set, std::size_t k, std::uint64_t seed);
std::vector<Histogram> seed_centroids(const WeightedHistogramSet& set, std::size_t k, std::uint64_t seed);

/// Lloyd iteration under the Jeffreys divergence. A relocated centroid is kept
/// only when it does not raise its cluster's objective, so the trace is monotone
/// for every centroid mode.
ClusteringResult kmeans(const WeightedHistogramSet& set, const ClusteringConfig& cfg);

}  // namespace jeffreys
