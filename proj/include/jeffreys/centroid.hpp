#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jeffreys/histogram.hpp"

namespace jeffreys {

enum class CentroidMode { positive, normalized_approx, veldhuis, frequency_bisection, frequency_fixedpoint };

std::string_view to_string(CentroidMode mode);

inline constexpr double kDefaultBisectionTolerance = 1e-12;
inline constexpr double kDefaultFixedPointTolerance = 1e-14;
inline constexpr int kFixedPointIterationCap = 100;
/// Halvings needed to shrink the lambda bracket to binary64 resolution.
inline constexpr int kBisectionResolutionHalvings = 52;

struct CentroidResult {
  Histogram centroid;
  CentroidMode mode = CentroidMode::positive;
  /// Total mass of the positive centroid (positive and normalized_approx modes).
  std::optional<double> w_c;
  /// Lagrange multiplier of the simplex constraint (exact frequency modes).
  std::optional<double> lambda_star;
  int iterations = 0;
  /// J(centroid, set)
  double objective = 0.0;
  /// 1 / w_c, the guaranteed approximation factor of the normalized centroid.
  std::optional<double> bound_factor;
  /// 1 + (1/w_c - 1) KL(c : H) / J(c, H), never larger than bound_factor.
  std::optional<double> refined_bound;
  /// |sum(c) - 1| before the final projection onto the simplex.
  double normalization_defect = 0.0;
  /// The fixed-point solver hit its iteration cap and the answer came from bisection.
  bool fallback = false;
};

/// Closed-form minimizer of sum_j pi_j J(h_j, x) over the positive orthant:
/// c^i = a^i / W(e a^i / g^i).
CentroidResult positive_centroid(const WeightedHistogramSet& set);

/// c / w_c for a set of frequency histograms.
CentroidResult normalized_positive_centroid(const WeightedHistogramSet& frequency_set);

/// (a~ + g~) / 2
CentroidResult veldhuis_centroid(const WeightedHistogramSet& frequency_set);

/// Exact frequency centroid by bisection on the simplex multiplier.
CentroidResult frequency_centroid_bisection(const WeightedHistogramSet& frequency_set,
                                            double tol = kDefaultBisectionTolerance);

/// Exact frequency centroid by iterating lambda <- -KL(c(lambda) : g~) from c = a~.
CentroidResult frequency_centroid_fixedpoint(const WeightedHistogramSet& frequency_set,
                                             double tol = kDefaultFixedPointTolerance);

/// Dispatches on mode; tol is ignored by the closed-form modes.
CentroidResult compute_centroid(const WeightedHistogramSet& set, CentroidMode mode,
                                std::optional<double> tol = std::nullopt);

/// The one-parameter family c^i(lambda) = a~^i / W(a~^i e^(lambda+1) / g~^i).
class SimplexMultiplierFamily {
public:
  explicit SimplexMultiplierFamily(NormalizedMeans means);

  const NormalizedMeans& means() const { return means_; }
  std::size_t dim() const { return log_ratio_.size(); }

  std::vector<double> coordinates(double lambda) const;
  /// s(lambda) = sum_i c^i(lambda); strictly decreasing.
  double mass(double lambda) const;
  /// max_i (a~^i + log g~^i) - 1, where some coordinate reaches 1.
  double lower_bracket() const;
  /// -KL(c / sum(c) : g~); the fixed-point map evaluates it on the normalized iterate.
  double multiplier_of(std::span<const double> coords) const;

private:
  NormalizedMeans means_;
  std::vector<double> log_ratio_;  // log a~ - log g~
  std::vector<double> log_geometric_;
};

/// One relocation step of the fixed-point scheme started from `start`
/// (lambda_0 = -KL(start : g~)), projected onto the simplex.
FrequencyHistogram fixed_point_step(const WeightedHistogramSet& frequency_set, const FrequencyHistogram& start);

}  // namespace jeffreys
