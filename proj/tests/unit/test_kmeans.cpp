#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "jeffreys/centroid.hpp"
#include "jeffreys/divergence.hpp"
#include "jeffreys/errors.hpp"
#include "jeffreys/kmeans.hpp"
#include "jeffreys/random.hpp"

namespace {

using namespace jeffreys;

constexpr ClusterCentroidMode kAllModes[] = {ClusterCentroidMode::positive, ClusterCentroidMode::normalized_approx,
                                             ClusterCentroidMode::frequency_fixedpoint_1step,
                                             ClusterCentroidMode::frequency_exact};

// Two tight blobs around well-separated centres, members interleaved.
struct Planted {
  WeightedHistogramSet set;
  std::vector<std::size_t> labels;
};

Planted planted_blobs(std::uint64_t seed, std::size_t per_blob, std::size_t d) {
  Rng rng(seed);
  std::vector<double> c0(d, 1.0), c1(d, 1.0);
  for (std::size_t i = 0; i < d; ++i) (i < d / 2 ? c0 : c1)[i] = 20.0;
  std::vector<Histogram> hs;
  std::vector<std::size_t> labels;
  for (std::size_t j = 0; j < 2 * per_blob; ++j) {
    const auto& c = j % 2 == 0 ? c0 : c1;
    std::vector<double> b(d);
    for (std::size_t i = 0; i < d; ++i) b[i] = c[i] * rng.uniform(0.95, 1.05);
    hs.push_back(normalize(Histogram(b)).histogram());
    labels.push_back(j % 2);
  }
  return {WeightedHistogramSet::uniform(hs), labels};
}

bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

TEST(Seeding, Contracts) {
  Rng rng(1);
  const auto set = random_frequency_set(rng, 12, 5);
  auto all = seed_indices(set, 12, 3);
  std::sort(all.begin(), all.end());
  for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(all[j], j);
  EXPECT_EQ(seed_indices(set, 1, 9).size(), 1u);
  EXPECT_EQ(seed_indices(set, 4, 77), seed_indices(set, 4, 77));
  const auto four = seed_indices(set, 4, 5);
  EXPECT_EQ(std::set<std::size_t>(four.begin(), four.end()).size(), 4u);
  EXPECT_THROW(seed_indices(set, 13, 0), ValidationError);
}

TEST(Seeding, DuplicatesStillGiveDistinctMembers) {
  const Histogram h({0.5, 0.5});
  const auto set = WeightedHistogramSet::uniform({h, h, h, h});
  const auto s = seed_indices(set, 3, 2);
  EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 3u);
}

TEST(KMeans, Errors) {
  Rng rng(2);
  const auto set = random_frequency_set(rng, 5, 3);
  ClusteringConfig cfg;
  cfg.k = 6;
  EXPECT_THROW(kmeans(set, cfg), ValidationError);
  cfg.k = 0;
  EXPECT_THROW(kmeans(set, cfg), ValidationError);
  cfg.k = 2;
  cfg.max_iterations = 0;
  EXPECT_THROW(kmeans(set, cfg), ValidationError);

  const auto positive = WeightedHistogramSet::uniform({Histogram({1, 2}), Histogram({3, 4})});
  cfg.max_iterations = 10;
  cfg.centroid_mode = ClusterCentroidMode::normalized_approx;
  EXPECT_THROW(kmeans(positive, cfg), ValidationError);
  cfg.centroid_mode = ClusterCentroidMode::positive;
  EXPECT_NO_THROW(kmeans(positive, cfg));
}

TEST(KMeans, KEqualsN) {
  Rng rng(3);
  const auto set = random_frequency_set(rng, 7, 4);
  for (auto mode : kAllModes) {
    ClusteringConfig cfg{.k = 7, .centroid_mode = mode, .seed = 4};
    const auto r = kmeans(set, cfg);
    EXPECT_NEAR(r.objective_trace.back(), 0.0, 1e-15) << to_string(mode);
    EXPECT_EQ(std::set<std::size_t>(r.assignments.begin(), r.assignments.end()).size(), 7u);
  }
}

TEST(KMeans, SingleClusterIsWholeSetCentroid) {
  Rng rng(5);
  const auto set = random_frequency_set(rng, 30, 6);
  const auto check = [&](ClusterCentroidMode mode, const Histogram& expected, double tol) {
    ClusteringConfig cfg{.k = 1, .max_iterations = 200, .centroid_mode = mode, .seed = 1, .objective_tolerance = 0.0};
    const auto r = kmeans(set, cfg);
    for (std::size_t i = 0; i < set.dim(); ++i) EXPECT_NEAR(r.centroids[0][i], expected[i], tol) << to_string(mode);
  };
  check(ClusterCentroidMode::positive, positive_centroid(set).centroid, 1e-15);
  check(ClusterCentroidMode::normalized_approx, normalized_positive_centroid(set).centroid, 1e-15);
  check(ClusterCentroidMode::frequency_exact, frequency_centroid_fixedpoint(set).centroid, 1e-15);
  // the one-step variant converges to the exact centroid
  check(ClusterCentroidMode::frequency_fixedpoint_1step, frequency_centroid_fixedpoint(set).centroid, 1e-7);
}

TEST(KMeans, RecoversPlantedBlobs) {
  const auto planted = planted_blobs(6, 40, 8);
  // between-blob divergence dwarfs within-blob divergence
  const double within = jeffreys_divergence(planted.set[0], planted.set[2]);
  const double between = jeffreys_divergence(planted.set[0], planted.set[1]);
  ASSERT_GE(between, 100 * within);
  for (auto mode : kAllModes) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      ClusteringConfig cfg{.k = 2, .centroid_mode = mode, .seed = seed};
      EXPECT_TRUE(same_partition(kmeans(planted.set, cfg).assignments, planted.labels)) << to_string(mode);
    }
  }
}

TEST(KMeans, MonotoneTraceAndOptimalAssignment) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    Rng rng(100 + s);
    const auto set = random_frequency_set(rng, 60, 6);
    for (auto mode : kAllModes) {
      ClusteringConfig cfg{.k = 4, .max_iterations = 50, .centroid_mode = mode, .seed = s};
      const auto r = kmeans(set, cfg);
      for (std::size_t t = 1; t < r.objective_trace.size(); ++t) {
        EXPECT_LE(r.objective_trace[t], r.objective_trace[t - 1] + 1e-12) << to_string(mode);
      }
      EXPECT_EQ(static_cast<std::size_t>(r.iterations), r.objective_trace.size());
      std::vector<std::size_t> counts(cfg.k, 0);
      for (std::size_t j = 0; j < set.size(); ++j) {
        ASSERT_LT(r.assignments[j], cfg.k);
        ++counts[r.assignments[j]];
      }
      for (auto c : counts) EXPECT_GT(c, 0u);
    }
  }
}

TEST(KMeans, ConvergedAssignmentsAreNearest) {
  Rng rng(7);
  const auto set = random_frequency_set(rng, 80, 5);
  ClusteringConfig cfg{.k = 3, .max_iterations = 500, .centroid_mode = ClusterCentroidMode::frequency_exact,
                       .seed = 2, .objective_tolerance = 0.0};
  const auto r = kmeans(set, cfg);
  ASSERT_LT(r.iterations, 500);
  for (std::size_t j = 0; j < set.size(); ++j) {
    const double own = jeffreys_divergence(set[j], r.centroids[r.assignments[j]]);
    for (const auto& c : r.centroids) EXPECT_LE(own, jeffreys_divergence(set[j], c) + 1e-15);
  }
}

TEST(KMeans, DeterministicAndThreadIndependent) {
  Rng rng(8);
  const auto set = random_frequency_set(rng, 100, 7);
  ClusteringConfig cfg{.k = 5, .centroid_mode = ClusterCentroidMode::normalized_approx, .seed = 42};
  const auto a = kmeans(set, cfg);
  const auto b = kmeans(set, cfg);
  cfg.threads = 4;
  const auto c = kmeans(set, cfg);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.objective_trace, b.objective_trace);
  EXPECT_EQ(a.assignments, c.assignments);
  EXPECT_EQ(a.objective_trace, c.objective_trace);
  EXPECT_EQ(a.centroids, c.centroids);
}

TEST(KMeans, EmptyClusterRepair) {
  const Histogram h({0.5, 0.5}), q({0.9, 0.1});
  const auto set = WeightedHistogramSet::uniform({h, h, q});
  ClusteringConfig cfg{.k = 3, .centroid_mode = ClusterCentroidMode::normalized_approx, .seed = 0};
  const auto r = kmeans(set, cfg);
  EXPECT_EQ(std::set<std::size_t>(r.assignments.begin(), r.assignments.end()).size(), 3u);
  EXPECT_NEAR(r.objective_trace.back(), 0.0, 1e-15);
}

}  // namespace
