#include "jeffreys/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jeffreys/errors.hpp"
#include "summation.hpp"

namespace jeffreys {

Histogram::Histogram(std::vector<double> bins) : bins_(std::move(bins)) {
  if (bins_.empty()) throw ValidationError("histogram must have at least one bin");
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    if (!(bins_[i] > 0.0) || !std::isfinite(bins_[i])) {
      throw ValidationError("histogram bin " + std::to_string(i) + " is not strictly positive and finite");
    }
  }
}

Histogram Histogram::smoothed(std::vector<double> bins, double epsilon) {
  if (bins.empty()) throw ValidationError("histogram must have at least one bin");
  if (!(epsilon > 0.0)) throw ValidationError("smoothing epsilon must be positive");
  double total = 0.0;
  bool has_zero = false;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (bins[i] < 0.0 || !std::isfinite(bins[i])) {
      throw ValidationError("histogram bin " + std::to_string(i) + " is negative or non-finite");
    }
    has_zero = has_zero || bins[i] == 0.0;
    total += bins[i];
  }
  if (has_zero) {
    const double shift = epsilon * std::max(1.0, total / static_cast<double>(bins.size()));
    for (double& b : bins) b += shift;
  }
  return Histogram(std::move(bins));
}

double Histogram::cumulative_sum() const { return detail::compensated_sum(bins_); }

bool Histogram::is_frequency() const { return std::abs(cumulative_sum() - 1.0) <= kSimplexTolerance; }

double cumulative_sum(const Histogram& h) { return h.cumulative_sum(); }

namespace {

std::vector<double> scaled(std::span<const double> bins, double total) {
  std::vector<double> out(bins.begin(), bins.end());
  for (double& b : out) b /= total;
  return out;
}

// Weights sum to 1 only within kSimplexTolerance; means divide by the actual sum.
double weight_total(const WeightedHistogramSet& set) {
  detail::CompensatedSum acc;
  for (double w : set.weights()) acc.add(w);
  return acc.value();
}

}  // namespace

FrequencyHistogram::FrequencyHistogram(std::vector<double> bins) {
  Histogram h(std::move(bins));
  const double total = h.cumulative_sum();
  if (std::abs(total - 1.0) > kRenormalizeTolerance) {
    throw ValidationError("frequency histogram sums to " + std::to_string(total) + ", not 1");
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) h = Histogram(scaled(h.bins(), total));
  hist_ = std::move(h);
}

FrequencyHistogram normalize(const Histogram& h) {
  const double total = h.cumulative_sum();
  if (total == 1.0) return FrequencyHistogram(std::vector<double>(h.bins().begin(), h.bins().end()));
  return FrequencyHistogram(scaled(h.bins(), total));
}

WeightedHistogramSet::WeightedHistogramSet(std::vector<Histogram> histograms, std::vector<double> weights)
    : histograms_(std::move(histograms)), weights_(std::move(weights)) {
  if (histograms_.empty()) throw ValidationError("histogram set is empty");
  if (histograms_.size() != weights_.size()) {
    throw ValidationError("histogram set has " + std::to_string(histograms_.size()) + " members but " +
                          std::to_string(weights_.size()) + " weights");
  }
  const std::size_t d = histograms_.front().dim();
  for (std::size_t j = 0; j < histograms_.size(); ++j) {
    if (histograms_[j].dim() != d) {
      throw ValidationError("histogram " + std::to_string(j) + " has " + std::to_string(histograms_[j].dim()) +
                            " bins, expected " + std::to_string(d));
    }
    if (!(weights_[j] > 0.0) || !std::isfinite(weights_[j])) {
      throw ValidationError("weight " + std::to_string(j) + " is not strictly positive");
    }
  }
  if (std::abs(detail::compensated_sum(weights_) - 1.0) > kSimplexTolerance) {
    throw ValidationError("weights do not sum to 1");
  }
}

WeightedHistogramSet WeightedHistogramSet::uniform(std::vector<Histogram> histograms) {
  const std::size_t n = histograms.size();
  std::vector<double> weights(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return WeightedHistogramSet(std::move(histograms), std::move(weights));
}

WeightedHistogramSet WeightedHistogramSet::with_relative_weights(std::vector<Histogram> histograms,
                                                                 std::vector<double> weights) {
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0) || !std::isfinite(weights[j])) {
      throw ValidationError("weight " + std::to_string(j) + " is not strictly positive");
    }
  }
  const double total = detail::compensated_sum(weights);
  for (double& w : weights) w /= total;
  return WeightedHistogramSet(std::move(histograms), std::move(weights));
}

bool WeightedHistogramSet::is_frequency() const {
  return std::all_of(histograms_.begin(), histograms_.end(), [](const Histogram& h) { return h.is_frequency(); });
}

WeightedHistogramSet WeightedHistogramSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Histogram> members;
  std::vector<double> weights;
  members.reserve(indices.size());
  weights.reserve(indices.size());
  for (std::size_t j : indices) {
    members.push_back(histograms_.at(j));
    weights.push_back(weights_.at(j));
  }
  return with_relative_weights(std::move(members), std::move(weights));
}

void require_frequency(const WeightedHistogramSet& set) {
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (!set[j].is_frequency()) {
      throw ValidationError("histogram " + std::to_string(j) + " is not a frequency histogram");
    }
  }
}

Histogram weighted_arithmetic_mean(const WeightedHistogramSet& set) {
  const double total = weight_total(set);
  std::vector<double> mean(set.dim());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    detail::CompensatedSum acc;
    for (std::size_t j = 0; j < set.size(); ++j) acc.add(set.weight(j) * set[j][i]);
    mean[i] = acc.value() / total;
  }
  return Histogram(std::move(mean));
}

Histogram weighted_geometric_mean(const WeightedHistogramSet& set) {
  const double total = weight_total(set);
  std::vector<double> mean(set.dim());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    detail::CompensatedSum acc;
    for (std::size_t j = 0; j < set.size(); ++j) acc.add(set.weight(j) * std::log(set[j][i]));
    mean[i] = std::exp(acc.value() / total);
  }
  return Histogram(std::move(mean));
}

NormalizedMeans normalized_means(const WeightedHistogramSet& frequency_set) {
  require_frequency(frequency_set);
  return {normalize(weighted_arithmetic_mean(frequency_set)), normalize(weighted_geometric_mean(frequency_set))};
}

}  // namespace jeffreys
