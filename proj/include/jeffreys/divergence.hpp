#pragma once

#include "jeffreys/histogram.hpp"

namespace jeffreys {

// All divergences are in nats. Mismatched dimensions throw ValidationError.

/// sum_i p log(p/q) + q - p, for positive histograms of any mass.
double extended_kl(const Histogram& p, const Histogram& q);

/// sum_i p log(p/q). On the simplex this is the usual KL divergence.
/// Also accepted on unnormalized histograms, where it omits the (q - p) correction.
double kl(const Histogram& p, const Histogram& q);

double entropy(const FrequencyHistogram& p);
double cross_entropy(const FrequencyHistogram& p, const FrequencyHistogram& q);

/// sum_i (p - q) log(p/q). Bitwise symmetric in its arguments.
double jeffreys_divergence(const Histogram& p, const Histogram& q);

/// sum_j pi_j J(x, h_j)
double jeffreys_to_set(const Histogram& x, const WeightedHistogramSet& set);
/// sum_j pi_j KL(x : h_j), with kl() semantics for unnormalized x.
double kl_to_set(const Histogram& x, const WeightedHistogramSet& set);

}  // namespace jeffreys
