#include "jeffreys/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <vector>

#include "jeffreys/centroid.hpp"
#include "jeffreys/divergence.hpp"
#include "jeffreys/errors.hpp"
#include "jeffreys/random.hpp"
#include "parallel.hpp"

namespace jeffreys {
namespace {

struct Trial {
  double alpha_positive, alpha_normalized, w_c, alpha_veldhuis;
  int bisection_iterations, fixedpoint_iterations;
  bool fallback;
};

class Accumulator {
public:
  void add(double x) {
    sum_ += x;
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
    ++count_;
  }
  RatioStats stats() const { return {sum_ / static_cast<double>(count_), min_, max_}; }

private:
  double sum_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
  std::size_t count_ = 0;
};

}  // namespace

AlphaStatistics alpha_trial_harness(std::size_t num_trials, std::size_t d, std::uint64_t seed, unsigned threads,
                                    std::size_t members) {
  if (num_trials < 1) throw ValidationError("trials must be at least 1");
  if (d < 2) throw ValidationError("dims must be at least 2");
  if (members < 2) throw ValidationError("members must be at least 2");

  std::vector<Trial> trials(num_trials);
  detail::parallel_for(num_trials, threads, [&](std::size_t t) {
    Rng rng = Rng::stream(seed, t);
    const WeightedHistogramSet set = random_frequency_set(rng, members, d, false);
    const CentroidResult exact = frequency_centroid_bisection(set);
    const CentroidResult fixed = frequency_centroid_fixedpoint(set);
    const CentroidResult positive = positive_centroid(set);
    const CentroidResult normalized = normalized_positive_centroid(set);
    const CentroidResult veldhuis = veldhuis_centroid(set);
    const double optimum = exact.objective;
    trials[t] = {positive.objective / optimum, normalized.objective / optimum, *normalized.w_c,
                 veldhuis.objective / optimum, exact.iterations, fixed.iterations, fixed.fallback};
  });

  Accumulator pos, norm, wc, veld;
  double bis_iters = 0.0, fp_iters = 0.0;
  AlphaStatistics out;
  for (const Trial& t : trials) {
    pos.add(t.alpha_positive);
    norm.add(t.alpha_normalized);
    wc.add(t.w_c);
    veld.add(t.alpha_veldhuis);
    bis_iters += t.bisection_iterations;
    fp_iters += t.fixedpoint_iterations;
    out.fixedpoint_fallbacks += t.fallback ? 1 : 0;
  }
  out.trials = num_trials;
  out.dims = d;
  out.members = members;
  out.alpha_positive = pos.stats();
  out.alpha_normalized = norm.stats();
  out.w_c = wc.stats();
  out.alpha_veldhuis = veld.stats();
  out.mean_bisection_iterations = bis_iters / static_cast<double>(num_trials);
  out.mean_fixedpoint_iterations = fp_iters / static_cast<double>(num_trials);
  return out;
}

std::string format_table(const AlphaStatistics& s) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-5s %22s %22s %22s %22s\n", "", "alpha_c", "alpha_c'", "w_c", "alpha_c''");
  out += line;
  const auto row = [&](const char* name, double RatioStats::*field) {
    std::snprintf(line, sizeof line, "%-5s %22.17g %22.17g %22.17g %22.17g\n", name, s.alpha_positive.*field,
                  s.alpha_normalized.*field, s.w_c.*field, s.alpha_veldhuis.*field);
    out += line;
  };
  row("avg", &RatioStats::mean);
  row("min", &RatioStats::min);
  row("max", &RatioStats::max);
  std::snprintf(line, sizeof line, "trials %zu, dims %zu, mean iterations: bisection %.3f, fixed-point %.3f\n",
                s.trials, s.dims, s.mean_bisection_iterations, s.mean_fixedpoint_iterations);
  out += line;
  return out;
}

}  // namespace jeffreys
