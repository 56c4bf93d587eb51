#include "jeffreys/centroid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "jeffreys/divergence.hpp"
#include "jeffreys/errors.hpp"
#include "jeffreys/lambert_w.hpp"
#include "summation.hpp"

namespace jeffreys {

std::string_view to_string(CentroidMode mode) {
  switch (mode) {
    case CentroidMode::positive: return "positive";
    case CentroidMode::normalized_approx: return "normalized";
    case CentroidMode::veldhuis: return "veldhuis";
    case CentroidMode::frequency_bisection: return "bisection";
    case CentroidMode::frequency_fixedpoint: return "fixedpoint";
  }
  return "unknown";
}

namespace {

void check_tolerance(double tol) {
  if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
}

// Lone member: every mode returns it unchanged.
CentroidResult singleton_result(const WeightedHistogramSet& set, CentroidMode mode) {
  CentroidResult r;
  r.mode = mode;
  r.centroid = set[0];
  if (mode == CentroidMode::positive || mode == CentroidMode::normalized_approx) {
    r.w_c = set[0].cumulative_sum();
    if (mode == CentroidMode::normalized_approx) {
      r.bound_factor = 1.0;
      r.refined_bound = 1.0;
    }
  }
  if (mode == CentroidMode::frequency_bisection || mode == CentroidMode::frequency_fixedpoint) r.lambda_star = 0.0;
  return r;
}

struct PositiveParts {
  std::vector<double> coords;
  double mass;
};

PositiveParts positive_coordinates(const WeightedHistogramSet& set) {
  const Histogram a = weighted_arithmetic_mean(set);
  const Histogram g = weighted_geometric_mean(set);
  PositiveParts out{std::vector<double>(set.dim()), 0.0};
  detail::CompensatedSum mass;
  for (std::size_t i = 0; i < set.dim(); ++i) {
    const double w = lambert_w0_exp(1.0 + std::log(a[i]) - std::log(g[i])).value;
    out.coords[i] = a[i] / w;
    mass.add(out.coords[i]);
  }
  out.mass = mass.value();
  return out;
}

FrequencyHistogram project(std::vector<double> coords, double& defect) {
  const double total = detail::compensated_sum(coords);
  defect = std::abs(total - 1.0);
  for (double& c : coords) c /= total;
  return FrequencyHistogram(std::move(coords));
}

}  // namespace

CentroidResult positive_centroid(const WeightedHistogramSet& set) {
  if (set.size() == 1) return singleton_result(set, CentroidMode::positive);
  auto parts = positive_coordinates(set);
  CentroidResult r;
  r.mode = CentroidMode::positive;
  r.w_c = parts.mass;
  r.centroid = Histogram(std::move(parts.coords));
  r.objective = jeffreys_to_set(r.centroid, set);
  return r;
}

CentroidResult normalized_positive_centroid(const WeightedHistogramSet& frequency_set) {
  require_frequency(frequency_set);
  if (frequency_set.size() == 1) return singleton_result(frequency_set, CentroidMode::normalized_approx);
  auto parts = positive_coordinates(frequency_set);
  const Histogram c(parts.coords);
  const double w = parts.mass;

  CentroidResult r;
  r.mode = CentroidMode::normalized_approx;
  r.w_c = w;
  r.bound_factor = 1.0 / w;
  const double j_c = jeffreys_to_set(c, frequency_set);
  r.refined_bound = j_c > 0.0 ? 1.0 + (1.0 / w - 1.0) * kl_to_set(c, frequency_set) / j_c : 1.0;
  for (double& x : parts.coords) x /= w;
  r.centroid = FrequencyHistogram(std::move(parts.coords)).histogram();
  r.objective = jeffreys_to_set(r.centroid, frequency_set);
  return r;
}

CentroidResult veldhuis_centroid(const WeightedHistogramSet& frequency_set) {
  require_frequency(frequency_set);
  if (frequency_set.size() == 1) return singleton_result(frequency_set, CentroidMode::veldhuis);
  const auto means = normalized_means(frequency_set);
  std::vector<double> coords(frequency_set.dim());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = 0.5 * (means.arithmetic[i] + means.geometric[i]);
  CentroidResult r;
  r.mode = CentroidMode::veldhuis;
  r.centroid = FrequencyHistogram(std::move(coords)).histogram();
  r.objective = jeffreys_to_set(r.centroid, frequency_set);
  return r;
}

SimplexMultiplierFamily::SimplexMultiplierFamily(NormalizedMeans means)
    : means_(std::move(means)), log_ratio_(means_.arithmetic.dim()), log_geometric_(means_.arithmetic.dim()) {
  for (std::size_t i = 0; i < log_ratio_.size(); ++i) {
    log_geometric_[i] = std::log(means_.geometric[i]);
    log_ratio_[i] = std::log(means_.arithmetic[i]) - log_geometric_[i];
  }
}

std::vector<double> SimplexMultiplierFamily::coordinates(double lambda) const {
  std::vector<double> c(dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = means_.arithmetic[i] / lambert_w0_exp(log_ratio_[i] + lambda + 1.0).value;
  }
  return c;
}

double SimplexMultiplierFamily::mass(double lambda) const {
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < dim(); ++i) {
    acc.add(means_.arithmetic[i] / lambert_w0_exp(log_ratio_[i] + lambda + 1.0).value);
  }
  return acc.value();
}

double SimplexMultiplierFamily::lower_bracket() const {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dim(); ++i) best = std::max(best, means_.arithmetic[i] + log_geometric_[i]);
  return best - 1.0;
}

double SimplexMultiplierFamily::multiplier_of(std::span<const double> coords) const {
  const double total = detail::compensated_sum(coords);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < dim(); ++i) {
    const double c = coords[i] / total;
    acc.add(c * (std::log(c) - log_geometric_[i]));
  }
  return -acc.value();
}

namespace {

// Bracket checks allow a few ulps of rounding in s(lambda).
constexpr double kBracketSlack = 1e-12;

CentroidResult bisect(const WeightedHistogramSet& set, const SimplexMultiplierFamily& family, double tol) {
  double lo = family.lower_bracket();
  double hi = 0.0;
  if (family.mass(lo) < 1.0 - kBracketSlack || family.mass(hi) > 1.0 + kBracketSlack) {
    throw NumericError("bisection: s(lambda) does not bracket 1 on [" + std::to_string(lo) + ", 0]");
  }
  constexpr int kHardCap = 1100;
  double lambda = hi;
  double s = family.mass(hi);
  int halvings = 0;
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi) || halvings >= kHardCap) {
      if (std::abs(s - 1.0) <= tol) break;
      throw NumericError("bisection: |s(lambda) - 1| = " + std::to_string(std::abs(s - 1.0)) +
                         " cannot reach tol " + std::to_string(tol));
    }
    lambda = mid;
    s = family.mass(mid);
    ++halvings;
    if (s > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (halvings >= kBisectionResolutionHalvings && std::abs(s - 1.0) <= tol) break;
  }
  CentroidResult r;
  r.mode = CentroidMode::frequency_bisection;
  r.iterations = halvings;
  r.lambda_star = lambda;
  r.centroid = project(family.coordinates(lambda), r.normalization_defect).histogram();
  r.objective = jeffreys_to_set(r.centroid, set);
  return r;
}

}  // namespace

CentroidResult frequency_centroid_bisection(const WeightedHistogramSet& frequency_set, double tol) {
  check_tolerance(tol);
  require_frequency(frequency_set);
  if (frequency_set.size() == 1 || frequency_set.dim() == 1) {
    return singleton_result(frequency_set, CentroidMode::frequency_bisection);
  }
  const SimplexMultiplierFamily family(normalized_means(frequency_set));
  return bisect(frequency_set, family, tol);
}

CentroidResult frequency_centroid_fixedpoint(const WeightedHistogramSet& frequency_set, double tol) {
  check_tolerance(tol);
  require_frequency(frequency_set);
  if (frequency_set.size() == 1 || frequency_set.dim() == 1) {
    return singleton_result(frequency_set, CentroidMode::frequency_fixedpoint);
  }
  const SimplexMultiplierFamily family(normalized_means(frequency_set));
  double lambda = family.multiplier_of(family.means().arithmetic.bins());
  for (int l = 1; l <= kFixedPointIterationCap; ++l) {
    auto coords = family.coordinates(lambda);
    const double next = family.multiplier_of(coords);
    const double delta = std::abs(next - lambda);
    lambda = next;
    if (delta <= tol) {
      CentroidResult r;
      r.mode = CentroidMode::frequency_fixedpoint;
      r.iterations = l;
      r.lambda_star = std::min(lambda, 0.0);
      r.centroid = project(std::move(coords), r.normalization_defect).histogram();
      r.objective = jeffreys_to_set(r.centroid, frequency_set);
      return r;
    }
  }
  CentroidResult r = bisect(frequency_set, family, kDefaultBisectionTolerance);
  r.mode = CentroidMode::frequency_fixedpoint;
  r.iterations = kFixedPointIterationCap;
  r.fallback = true;
  return r;
}

CentroidResult compute_centroid(const WeightedHistogramSet& set, CentroidMode mode, std::optional<double> tol) {
  switch (mode) {
    case CentroidMode::positive: return positive_centroid(set);
    case CentroidMode::normalized_approx: return normalized_positive_centroid(set);
    case CentroidMode::veldhuis: return veldhuis_centroid(set);
    case CentroidMode::frequency_bisection:
      return frequency_centroid_bisection(set, tol.value_or(kDefaultBisectionTolerance));
    case CentroidMode::frequency_fixedpoint:
      return frequency_centroid_fixedpoint(set, tol.value_or(kDefaultFixedPointTolerance));
  }
  throw ValidationError("unknown centroid mode");
}

FrequencyHistogram fixed_point_step(const WeightedHistogramSet& frequency_set, const FrequencyHistogram& start) {
  require_frequency(frequency_set);
  if (start.dim() != frequency_set.dim()) throw ValidationError("start centroid dimension mismatch");
  const SimplexMultiplierFamily family(normalized_means(frequency_set));
  double defect = 0.0;
  return project(family.coordinates(family.multiplier_of(start.bins())), defect);
}

}  // namespace jeffreys
