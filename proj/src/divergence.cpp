#include "jeffreys/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "jeffreys/errors.hpp"
#include "summation.hpp"

namespace jeffreys {
namespace {

void check_dims(const Histogram& p, const Histogram& q) {
  if (p.dim() != q.dim()) {
    throw ValidationError("dimension mismatch: " + std::to_string(p.dim()) + " vs " + std::to_string(q.dim()));
  }
}

// p log(p/q), with 0 log 0 = 0
double plogpq(double p, double q) {
  if (p == 0.0) return 0.0;
  return p * std::log(p / q);
}

// p log(p/q) + q - p = q phi(r) with r = (p - q)/q and phi(r) = (1 + r) log1p(r) - r.
// For small |r| the closed form cancels down to r^2/2, so sum the series instead.
double extended_kl_term(double p, double q) {
  if (p == 0.0) return q;
  const double r = (p - q) / q;
  if (std::abs(r) >= 0.1) return p * std::log(p / q) + q - p;
  // phi(r) = sum_{k>=2} (-1)^k r^k / (k (k - 1))
  double power = r * r;
  double phi = 0.0;
  for (int k = 2; k < 40; ++k) {
    const double term = power / (k * (k - 1.0));
    phi += (k % 2 == 0) ? term : -term;
    if (std::abs(term) <= 1e-17 * phi) break;
    power *= r;
  }
  return q * phi;
}

}  // namespace

double extended_kl(const Histogram& p, const Histogram& q) {
  check_dims(p, q);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.dim(); ++i) acc.add(extended_kl_term(p[i], q[i]));
  return acc.value();
}

double kl(const Histogram& p, const Histogram& q) {
  check_dims(p, q);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.dim(); ++i) acc.add(plogpq(p[i], q[i]));
  return acc.value();
}

double entropy(const FrequencyHistogram& p) {
  detail::CompensatedSum acc;
  for (double x : p.bins()) acc.add(-x * std::log(x));
  return acc.value();
}

double cross_entropy(const FrequencyHistogram& p, const FrequencyHistogram& q) {
  check_dims(p, q);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.dim(); ++i) acc.add(-p[i] * std::log(q[i]));
  return acc.value();
}

double jeffreys_divergence(const Histogram& p, const Histogram& q) {
  check_dims(p, q);
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    // (hi - lo) log(hi/lo) is invariant under swapping the arguments and
    // keeps full relative accuracy when the bins nearly coincide.
    const double lo = std::min(p[i], q[i]);
    const double hi = std::max(p[i], q[i]);
    const double diff = hi - lo;
    if (diff == 0.0) continue;
    acc.add(diff * std::log1p(diff / lo));
  }
  return acc.value();
}

double jeffreys_to_set(const Histogram& x, const WeightedHistogramSet& set) {
  detail::CompensatedSum acc;
  for (std::size_t j = 0; j < set.size(); ++j) acc.add(set.weight(j) * jeffreys_divergence(x, set[j]));
  return acc.value();
}

double kl_to_set(const Histogram& x, const WeightedHistogramSet& set) {
  detail::CompensatedSum acc;
  for (std::size_t j = 0; j < set.size(); ++j) acc.add(set.weight(j) * kl(x, set[j]));
  return acc.value();
}

}  // namespace jeffreys
