#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace jeffreys {

/// Tolerance on |sum - 1| for a histogram to count as a frequency histogram.
inline constexpr double kSimplexTolerance = 1e-12;
/// Inputs declared frequency whose sum is off by at most this are renormalized silently.
inline constexpr double kRenormalizeTolerance = 1e-6;
/// Relative smoothing constant added to every bin of a histogram with empty bins.
inline constexpr double kDefaultSmoothing = 1e-10;

/// A positive histogram: d >= 1 strictly positive, finite bins of arbitrary total mass.
class Histogram {
public:
  Histogram() = default;
  explicit Histogram(std::vector<double> bins);

  /// Builds a histogram from non-negative counts. If any bin is zero, adds
  /// epsilon * max(1, w/d) to every bin.
  static Histogram smoothed(std::vector<double> bins, double epsilon = kDefaultSmoothing);

  std::size_t dim() const { return bins_.size(); }
  std::span<const double> bins() const { return bins_; }
  double operator[](std::size_t i) const { return bins_[i]; }

  /// Total mass w_h.
  double cumulative_sum() const;
  bool is_frequency() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;

private:
  std::vector<double> bins_;
};

/// A histogram on the probability simplex.
class FrequencyHistogram {
public:
  FrequencyHistogram() = default;
  /// Accepts sums within kRenormalizeTolerance of 1 (renormalized), rejects others.
  explicit FrequencyHistogram(std::vector<double> bins);
  explicit FrequencyHistogram(const Histogram& h) : FrequencyHistogram(std::vector<double>(h.bins().begin(), h.bins().end())) {}

  std::size_t dim() const { return hist_.dim(); }
  std::span<const double> bins() const { return hist_.bins(); }
  double operator[](std::size_t i) const { return hist_[i]; }
  const Histogram& histogram() const { return hist_; }
  operator const Histogram&() const { return hist_; }

  friend bool operator==(const FrequencyHistogram&, const FrequencyHistogram&) = default;

private:
  Histogram hist_;
};

double cumulative_sum(const Histogram& h);
FrequencyHistogram normalize(const Histogram& h);

/// n histograms of a common dimension with positive weights summing to one.
class WeightedHistogramSet {
public:
  WeightedHistogramSet() = default;
  /// Weights must be positive and sum to 1 within kSimplexTolerance.
  WeightedHistogramSet(std::vector<Histogram> histograms, std::vector<double> weights);

  static WeightedHistogramSet uniform(std::vector<Histogram> histograms);
  /// Positive relative weights, rescaled to sum to one.
  static WeightedHistogramSet with_relative_weights(std::vector<Histogram> histograms,
                                                    std::vector<double> weights);

  std::size_t size() const { return histograms_.size(); }
  std::size_t dim() const { return histograms_.empty() ? 0 : histograms_.front().dim(); }
  const std::vector<Histogram>& histograms() const { return histograms_; }
  const std::vector<double>& weights() const { return weights_; }
  const Histogram& operator[](std::size_t j) const { return histograms_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }

  /// True when every member lies on the simplex.
  bool is_frequency() const;
  /// Subset with weights renormalized to sum to one.
  WeightedHistogramSet subset(std::span<const std::size_t> indices) const;

private:
  std::vector<Histogram> histograms_;
  std::vector<double> weights_;
};

/// Throws ValidationError unless every member of the set is a frequency histogram.
void require_frequency(const WeightedHistogramSet& set);

Histogram weighted_arithmetic_mean(const WeightedHistogramSet& set);
/// Accumulated as exp(sum_j pi_j log h_j^i).
Histogram weighted_geometric_mean(const WeightedHistogramSet& set);

struct NormalizedMeans {
  FrequencyHistogram arithmetic;
  FrequencyHistogram geometric;
};

NormalizedMeans normalized_means(const WeightedHistogramSet& frequency_set);

}  // namespace jeffreys
