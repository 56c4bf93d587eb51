#include "jeffreys/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "jeffreys/centroid.hpp"
#include "jeffreys/divergence.hpp"
#include "jeffreys/errors.hpp"
#include "jeffreys/random.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace jeffreys {

std::string_view to_string(ClusterCentroidMode mode) {
  switch (mode) {
    case ClusterCentroidMode::positive: return "positive";
    case ClusterCentroidMode::normalized_approx: return "normalized";
    case ClusterCentroidMode::frequency_fixedpoint_1step: return "fixedpoint-1step";
    case ClusterCentroidMode::frequency_exact: return "exact";
  }
  return "unknown";
}

namespace {

void validate(const WeightedHistogramSet& set, std::size_t k) {
  if (set.size() == 0) throw ValidationError("kmeans: empty input");
  if (k < 1) throw ValidationError("kmeans: k must be at least 1");
  if (k > set.size()) {
    throw ValidationError("kmeans: k = " + std::to_string(k) + " exceeds n = " + std::to_string(set.size()));
  }
}

struct Nearest {
  std::size_t index = 0;
  double divergence = std::numeric_limits<double>::infinity();
};

// Lowest index wins ties.
Nearest nearest(const Histogram& h, const std::vector<Histogram>& centroids) {
  Nearest best;
  for (std::size_t m = 0; m < centroids.size(); ++m) {
    const double d = jeffreys_divergence(h, centroids[m]);
    if (d < best.divergence) best = {m, d};
  }
  return best;
}

double total_objective(const WeightedHistogramSet& set, const std::vector<double>& divergences) {
  detail::CompensatedSum acc;
  for (std::size_t j = 0; j < set.size(); ++j) acc.add(set.weight(j) * divergences[j]);
  return acc.value();
}

Histogram candidate_centroid(const WeightedHistogramSet& cluster, const Histogram& previous,
                             ClusterCentroidMode mode) {
  switch (mode) {
    case ClusterCentroidMode::positive: return positive_centroid(cluster).centroid;
    case ClusterCentroidMode::normalized_approx: return normalized_positive_centroid(cluster).centroid;
    case ClusterCentroidMode::frequency_fixedpoint_1step:
      if (cluster.size() == 1) return cluster[0];
      return fixed_point_step(cluster, FrequencyHistogram(previous)).histogram();
    case ClusterCentroidMode::frequency_exact: return frequency_centroid_fixedpoint(cluster).centroid;
  }
  throw ValidationError("unknown cluster centroid mode");
}

}  // namespace

std::vector<std::size_t> seed_indices(const WeightedHistogramSet& set, std::size_t k, std::uint64_t seed) {
  validate(set, k);
  Rng rng(seed);
  const std::size_t n = set.size();
  std::vector<std::size_t> chosen{rng.index(n)};
  std::vector<bool> taken(n, false);
  taken[chosen[0]] = true;
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  while (chosen.size() < k) {
    const Histogram& latest = set[chosen.back()];
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j]) {
        dist[j] = 0.0;
        continue;
      }
      dist[j] = std::min(dist[j], jeffreys_divergence(set[j], latest));
      total += dist[j];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double running = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (taken[j] || dist[j] <= 0.0) continue;
        running += dist[j];
        pick = j;
        if (running > target) break;
      }
    } else {
      // every remaining member coincides with a chosen centre
      std::vector<std::size_t> free;
      for (std::size_t j = 0; j < n; ++j) {
        if (!taken[j]) free.push_back(j);
      }
      pick = free[rng.index(free.size())];
    }
    taken[pick] = true;
    chosen.push_back(pick);
  }
  return chosen;
}

std::vector<Histogram> seed_centroids(const WeightedHistogramSet& set, std::size_t k, std::uint64_t seed) {
  std::vector<Histogram> out;
  for (std::size_t j : seed_indices(set, k, seed)) out.push_back(set[j]);
  return out;
}

ClusteringResult kmeans(const WeightedHistogramSet& set, const ClusteringConfig& cfg) {
  validate(set, cfg.k);
  if (cfg.max_iterations < 1) throw ValidationError("kmeans: max_iterations must be at least 1");
  if (cfg.centroid_mode != ClusterCentroidMode::positive) require_frequency(set);

  const std::size_t n = set.size();
  const std::size_t k = cfg.k;
  ClusteringResult result;
  result.centroids = seed_centroids(set, k, cfg.seed);
  result.assignments.assign(n, k);  // k marks "unassigned"
  std::vector<double> divergence(n, 0.0);

  double previous_objective = std::numeric_limits<double>::infinity();
  for (int round = 1; round <= cfg.max_iterations; ++round) {
    // assignment
    std::vector<std::size_t> assignment(n);
    detail::parallel_for(n, cfg.threads, [&](std::size_t j) {
      const Nearest best = nearest(set[j], result.centroids);
      assignment[j] = best.index;
      divergence[j] = best.divergence;
    });

    // empty-cluster repair: the worst-served point of a cluster with >= 2
    // members becomes a singleton at the empty cluster
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t j = 0; j < n; ++j) ++counts[assignment[j]];
    for (std::size_t m = 0; m < k; ++m) {
      if (counts[m] > 0) continue;
      std::size_t worst = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (counts[assignment[j]] < 2) continue;
        if (worst == n || divergence[j] > divergence[worst]) worst = j;
      }
      --counts[assignment[worst]];
      ++counts[m];
      assignment[worst] = m;
      divergence[worst] = 0.0;
      result.centroids[m] = set[worst];
    }
    const bool assignments_changed = assignment != result.assignments;
    result.assignments = std::move(assignment);

    // relocation
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t j = 0; j < n; ++j) members[result.assignments[j]].push_back(j);
    std::vector<char> moved(k, 0);
    detail::parallel_for(k, cfg.threads, [&](std::size_t m) {
      const WeightedHistogramSet cluster = set.subset(members[m]);
      Histogram candidate = candidate_centroid(cluster, result.centroids[m], cfg.centroid_mode);
      if (candidate == result.centroids[m]) return;
      if (jeffreys_to_set(candidate, cluster) <= jeffreys_to_set(result.centroids[m], cluster)) {
        result.centroids[m] = std::move(candidate);
        moved[m] = 1;
      }
    });
    for (std::size_t j = 0; j < n; ++j) divergence[j] = jeffreys_divergence(set[j], result.centroids[result.assignments[j]]);

    const double objective = total_objective(set, divergence);
    result.objective_trace.push_back(objective);
    result.iterations = round;
    const bool any_moved = std::any_of(moved.begin(), moved.end(), [](char c) { return c != 0; });
    if (previous_objective - objective <= cfg.objective_tolerance) break;
    if (!assignments_changed && !any_moved) break;
    previous_objective = objective;
  }
  return result;
}

}  // namespace jeffreys
