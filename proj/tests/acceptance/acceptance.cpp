// Acceptance checks for the library and the CLI. Prints one PASS/FAIL line per
// criterion; `--criterion N` runs a single one. Exit status is 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "jeffreys/bench.hpp"
#include "jeffreys/centroid.hpp"
#include "jeffreys/divergence.hpp"
#include "jeffreys/kmeans.hpp"
#include "jeffreys/lambert_w.hpp"
#include "jeffreys/random.hpp"
#include "oracle.hpp"

namespace {

using namespace jeffreys;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

WeightedHistogramSet random_positive_set(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<Histogram> hs;
  std::vector<double> weights;
  for (std::size_t j = 0; j < n; ++j) {
    hs.push_back(random_positive_histogram(rng, d, rng.uniform(0.1, 10.0)));
    weights.push_back(rng.uniform(0.01, 1.0));
  }
  return WeightedHistogramSet::with_relative_weights(std::move(hs), std::move(weights));
}

// Lambert W round trip over [1e-300, 1e300].
Outcome lambert_round_trip() {
  constexpr int kPoints = 10000;
  Stopwatch clock;
  int violations = 0;
  int max_iterations = 0;
  double worst = 0.0, worst_x = 0.0, worst_conditioned = 0.0;
  for (int k = 0; k < kPoints; ++k) {
    const double x = std::pow(10.0, -300.0 + 600.0 * k / (kPoints - 1));
    const auto r = lambert_w0(x);
    max_iterations = std::max(max_iterations, r.iterations);
    const long double w = r.value;
    const double rel = static_cast<double>(std::fabs(w * std::exp(w) - x) / x);
    if (rel > 4 * kEps) ++violations;
    if (rel > worst) worst = rel, worst_x = x;
    worst_conditioned = std::max(worst_conditioned, rel / (1.0 + r.value));
  }
  const double seconds = clock.seconds();
  Outcome o;
  o.pass = violations == 0 && max_iterations <= 5 && seconds < 1.0;
  o.detail = std::to_string(violations) + "/" + std::to_string(kPoints) + " points above 4 eps (worst " +
             fmt(worst / kEps) + " eps at x=" + fmt(worst_x) + "), max iterations " +
             std::to_string(max_iterations) + ", " + fmt(seconds) + " s; residual/(1+W) max " +
             fmt(worst_conditioned / kEps) + " eps";
  return o;
}

// Closed-form positive centroid against a golden-section oracle.
Outcome positive_centroid_optimality() {
  Stopwatch clock;
  Rng rng(2024);
  double max_gap = 0.0, max_stationarity = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto set = random_positive_set(rng, 1 + rng.index(8), 1 + rng.index(4));
    const auto c = positive_centroid(set).centroid;
    const auto o = oracle::oracle_positive_centroid(set);
    const auto a = weighted_arithmetic_mean(set);
    const auto g = weighted_geometric_mean(set);
    for (std::size_t i = 0; i < set.dim(); ++i) {
      max_gap = std::max(max_gap, std::abs(c[i] - o.argmin[i]));
      max_stationarity = std::max(max_stationarity, std::abs(std::log(c[i] / g[i]) + 1.0 - a[i] / c[i]));
    }
  }
  const double seconds = clock.seconds();
  return {max_gap <= 1e-6 && max_stationarity <= 1e-10 && seconds < 10.0,
          "max |c - oracle| " + fmt(max_gap) + ", max stationarity residual " + fmt(max_stationarity) + ", " +
              fmt(seconds) + " s"};
}

// Mass of the positive centroid of frequency histograms lies in (0, 1]. A single
// member is its own centroid, so sets have at least two members.
Outcome centroid_mass_bound() {
  Rng rng(3);
  int violations = 0;
  double lo = 2.0, hi = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto set = random_frequency_set(rng, 2 + rng.index(9), 1 + rng.index(32));
    const double w = *positive_centroid(set).w_c;
    if (!(w > 0.0 && w <= 1.0)) ++violations;
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return {violations == 0, std::to_string(violations) + " violations; w_c in [" + fmt(lo) + ", " + fmt(hi) + "]"};
}

// J(x,H) - J(x~,H) = (w_x - 1)(KL(x~:H) + log w_x) for positive x with mass w_x.
Outcome mass_decomposition_identity() {
  Rng rng(4);
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const std::size_t d = 1 + rng.index(32);
    const auto set = random_frequency_set(rng, 1 + rng.index(8), d);
    const auto x = random_positive_histogram(rng, d, rng.uniform(0.05, 20.0));
    const double w = cumulative_sum(x);
    const auto xt = normalize(x).histogram();
    const double lhs = jeffreys_to_set(x, set) - jeffreys_to_set(xt, set);
    const double rhs = (w - 1.0) * (kl_to_set(xt, set) + std::log(w));
    const double scale = std::max({jeffreys_to_set(x, set), std::abs(rhs), std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return {worst <= 1e-10, "max relative defect " + fmt(worst)};
}

// J(c) <= J(c~) <= J(c~') and 1 <= alpha <= 1/w_c.
Outcome centroid_sandwich() {
  constexpr double kSlack = 1e-10;
  Rng rng(5);
  int violations = 0;
  double alpha_max = 0.0, alpha_min = 2.0;
  for (int t = 0; t < 10000; ++t) {
    const auto set = random_frequency_set(rng, 2 + rng.index(8), 2 + rng.index(31));
    const auto pos = positive_centroid(set);
    const auto exact = frequency_centroid_bisection(set);
    const auto approx = normalized_positive_centroid(set);
    const double alpha = approx.objective / exact.objective;
    const bool ok = pos.objective <= exact.objective + kSlack && exact.objective <= approx.objective + kSlack &&
                    alpha >= 1.0 - kSlack && alpha <= *approx.bound_factor + kSlack &&
                    alpha <= *approx.refined_bound + kSlack;
    if (!ok) ++violations;
    alpha_max = std::max(alpha_max, alpha);
    alpha_min = std::min(alpha_min, alpha);
  }
  return {violations == 0,
          std::to_string(violations) + " violations; alpha in [" + fmt(alpha_min) + ", " + fmt(alpha_max) + "]"};
}

// Approximation factor of the normalized centroid on random two-bin pairs.
Outcome synthetic_statistics() {
  Stopwatch clock;
  const auto s = alpha_trial_harness(100000, 2, 1, worker_threads());
  const double seconds = clock.seconds();
  const auto& a = s.alpha_normalized;
  return {a.mean <= 1.0001 && a.max <= 1.01 && a.min >= 1.0 - 1e-12 && seconds < 60.0,
          "alpha mean " + fmt(a.mean) + ", max " + fmt(a.max) + ", min " + fmt(a.min) + ", " + fmt(seconds) + " s"};
}

// Bisection and fixed-point solvers agree; iteration counts.
Outcome solver_agreement() {
  Rng rng(7);
  double max_gap = 0.0;
  int off_count = 0;
  long fixed_iterations = 0;
  int fallbacks = 0;
  constexpr int kSets = 1000;
  for (int t = 0; t < kSets; ++t) {
    const auto set = random_frequency_set(rng, 2 + rng.index(8), 2 + rng.index(63));
    const auto b = frequency_centroid_bisection(set, 1e-12);
    const auto f = frequency_centroid_fixedpoint(set, 1e-14);
    for (std::size_t i = 0; i < set.dim(); ++i) max_gap = std::max(max_gap, std::abs(b.centroid[i] - f.centroid[i]));
    if (b.iterations != kBisectionResolutionHalvings) ++off_count;
    fixed_iterations += f.iterations;
    if (f.fallback) ++fallbacks;
  }
  const double mean_fixed = static_cast<double>(fixed_iterations) / kSets;
  return {max_gap <= 1e-10 && off_count == 0 && mean_fixed >= 4.0 && mean_fixed <= 10.0,
          "max coordinate gap " + fmt(max_gap) + ", " + std::to_string(off_count) +
              " bisection runs not at 52 halvings, fixed-point mean iterations " + fmt(mean_fixed) + ", " +
              std::to_string(fallbacks) + " fallbacks"};
}

// lambda* = -KL(c~ : g~) <= 0 at converged solutions.
Outcome multiplier_consistency() {
  Rng rng(8);
  double worst = 0.0, lambda_max = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 1000; ++t) {
    const auto set = random_frequency_set(rng, 2 + rng.index(8), 2 + rng.index(63));
    const auto g = normalized_means(set).geometric;
    for (const auto& r : {frequency_centroid_bisection(set), frequency_centroid_fixedpoint(set)}) {
      const double lambda = *r.lambda_star;
      worst = std::max(worst, std::abs(lambda + kl(r.centroid, g)));
      lambda_max = std::max(lambda_max, lambda);
    }
  }
  return {worst <= 1e-8 && lambda_max <= 0.0,
          "max |lambda + KL(c:g)| " + fmt(worst) + ", max lambda " + fmt(lambda_max)};
}

bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

// Objective traces never increase; two planted blobs are recovered.
Outcome kmeans_monotonicity() {
  constexpr ClusterCentroidMode kModes[] = {ClusterCentroidMode::positive, ClusterCentroidMode::normalized_approx,
                                            ClusterCentroidMode::frequency_fixedpoint_1step,
                                            ClusterCentroidMode::frequency_exact};
  Rng rng(9);
  int increases = 0;
  double worst_rise = 0.0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto set = random_frequency_set(rng, 200, 16);
    for (auto mode : kModes) {
      ClusteringConfig cfg{.k = 5, .centroid_mode = mode, .seed = t, .threads = worker_threads()};
      const auto trace = kmeans(set, cfg).objective_trace;
      for (std::size_t r = 1; r < trace.size(); ++r) {
        const double rise = trace[r] - trace[r - 1];
        worst_rise = std::max(worst_rise, rise);
        if (rise > 1e-12) ++increases;
      }
    }
  }

  // 100 members alternating between two centres, 2% multiplicative jitter
  Rng blob_rng(10);
  std::vector<Histogram> hs;
  std::vector<std::size_t> labels;
  for (std::size_t j = 0; j < 100; ++j) {
    std::vector<double> b(16);
    for (std::size_t i = 0; i < 16; ++i) b[i] = ((i < 8) == (j % 2 == 0) ? 20.0 : 1.0) * blob_rng.uniform(0.98, 1.02);
    hs.push_back(normalize(Histogram(b)).histogram());
    labels.push_back(j % 2);
  }
  const auto blobs = WeightedHistogramSet::uniform(std::move(hs));
  int misses = 0;
  for (auto mode : kModes) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      ClusteringConfig cfg{.k = 2, .centroid_mode = mode, .seed = seed};
      if (!same_partition(kmeans(blobs, cfg).assignments, labels)) ++misses;
    }
  }
  return {increases == 0 && misses == 0, std::to_string(increases) + " rises above 1e-12 (largest " +
                                             fmt(worst_rise) + "), " + std::to_string(misses) +
                                             "/20 planted runs not recovered"};
}

// `jeffreys bench` table on 256-bin pairs.
Outcome bench_structure() {
  const std::string command = std::string(JEFFREYS_CLI_PATH) + " bench --trials 1000 --dims 256 --seed 1 --threads " +
                              std::to_string(worker_threads());
  FILE* pipe = ::popen(command.c_str(), "r");
  if (pipe == nullptr) return {false, "cannot run " + command};
  std::string out;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  const int status = ::pclose(pipe);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "bench exited abnormally"};

  std::istringstream lines(out);
  std::string header;
  std::getline(lines, header);
  std::istringstream header_fields(header);
  std::vector<std::string> columns;
  for (std::string c; header_fields >> c;) columns.push_back(c);
  if (columns != std::vector<std::string>{"alpha_c", "alpha_c'", "w_c", "alpha_c''"}) {
    return {false, "unexpected header: " + header};
  }
  std::vector<double> avg, max;
  for (std::string line; std::getline(lines, line);) {
    std::istringstream fields(line);
    std::string label;
    fields >> label;
    std::vector<double> values;
    for (double v; fields >> v;) values.push_back(v);
    if (label == "avg") avg = values;
    if (label == "max") max = values;
  }
  if (avg.size() != 4 || max.size() != 4) return {false, "missing avg/max rows"};
  return {max[0] <= 1.0 && avg[3] >= avg[1], "max alpha_c " + fmt(max[0]) + ", mean alpha_c' " + fmt(avg[1]) +
                                                  ", mean alpha_c'' " + fmt(avg[3])};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"lambert_w_round_trip", lambert_round_trip},
      {"positive_centroid_optimality", positive_centroid_optimality},
      {"centroid_mass_bound", centroid_mass_bound},
      {"mass_decomposition_identity", mass_decomposition_identity},
      {"centroid_sandwich", centroid_sandwich},
      {"synthetic_approximation_statistics", synthetic_statistics},
      {"solver_agreement", solver_agreement},
      {"multiplier_consistency", multiplier_consistency},
      {"kmeans_monotonicity", kmeans_monotonicity},
      {"bench_table_structure", bench_structure},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      const int n = std::atoi(argv[++i]);
      if (n < 1 || n > static_cast<int>(criteria().size())) {
        std::cerr << "criterion must be 1.." << criteria().size() << '\n';
        return 64;
      }
      selected.push_back(static_cast<std::size_t>(n - 1));
    } else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 64;
    }
  }
  if (selected.empty()) {
    for (std::size_t i = 0; i < criteria().size(); ++i) selected.push_back(i);
  }

  bool all_pass = true;
  for (std::size_t i : selected) {
    Outcome o;
    try {
      o = criteria()[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " " << criteria()[i].name << ": " << o.detail
              << std::endl;
  }
  return all_pass ? 0 : 1;
}
