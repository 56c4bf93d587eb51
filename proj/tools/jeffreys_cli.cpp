// jeffreys: Jeffreys-divergence centroids and k-means for histogram datasets.
//
//   jeffreys centroid --input data.csv --mode normalized --compare-exact
//   jeffreys kmeans   --input data.json --format json --k 5 --seed 7
//   jeffreys bench    --trials 100000 --dims 2
//
// Exit codes: 0 success, 1 invalid input, 2 numeric failure, 64 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include "jeffreys/bench.hpp"
#include "jeffreys/centroid.hpp"
#include "jeffreys/dataset.hpp"
#include "jeffreys/errors.hpp"
#include "jeffreys/kmeans.hpp"
#include "jeffreys/report.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitUsage = 64;

struct DatasetArgs {
  std::string input;
  std::string format = "csv";
  std::string kind = "frequency";
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
  cmd->add_option("--input", args.input, "Dataset file, or directory of PGM images")->required();
  cmd->add_option("--format", args.format, "Dataset format")
      ->check(CLI::IsMember({"csv", "json", "pgm", "pgm-dir"}));
  cmd->add_option("--kind", args.kind, "Histogram kind")->check(CLI::IsMember({"positive", "frequency"}));
}

jeffreys::WeightedHistogramSet load(const DatasetArgs& args, double epsilon) {
  return jeffreys::parse_dataset(args.input, jeffreys::parse_format(args.format), jeffreys::parse_kind(args.kind),
                                 epsilon);
}

const std::map<std::string, jeffreys::CentroidMode> kCentroidModes{
    {"positive", jeffreys::CentroidMode::positive},
    {"normalized", jeffreys::CentroidMode::normalized_approx},
    {"veldhuis", jeffreys::CentroidMode::veldhuis},
    {"bisection", jeffreys::CentroidMode::frequency_bisection},
    {"fixedpoint", jeffreys::CentroidMode::frequency_fixedpoint},
};

const std::map<std::string, jeffreys::ClusterCentroidMode> kClusterModes{
    {"positive", jeffreys::ClusterCentroidMode::positive},
    {"normalized", jeffreys::ClusterCentroidMode::normalized_approx},
    {"fixedpoint-1step", jeffreys::ClusterCentroidMode::frequency_fixedpoint_1step},
    {"exact", jeffreys::ClusterCentroidMode::frequency_exact},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jeffreys-divergence centroids and k-means for histograms"};
  app.require_subcommand(1);
  unsigned threads = 1;
  const auto add_threads = [&threads](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker threads (results do not depend on it)")
        ->check(CLI::PositiveNumber);
  };

  // centroid
  auto* centroid_cmd = app.add_subcommand("centroid", "Compute one centroid of a histogram set");
  DatasetArgs centroid_data;
  std::string mode = "normalized";
  std::optional<double> tol;
  std::string centroid_output = "json";
  bool compare_exact = false;
  add_dataset_options(centroid_cmd, centroid_data);
  centroid_cmd->add_option("--mode", mode, "Centroid construction")
      ->check(CLI::IsMember({"positive", "normalized", "veldhuis", "bisection", "fixedpoint"}));
  centroid_cmd->add_option("--tol", tol, "Solver tolerance (bisection: |s-1|, fixed point: |delta lambda|)");
  centroid_cmd->add_option("--output", centroid_output, "Report format")->check(CLI::IsMember({"json", "csv"}));
  centroid_cmd->add_flag("--compare-exact", compare_exact, "Also solve exactly and report alpha");
  add_threads(centroid_cmd);

  // kmeans
  auto* kmeans_cmd = app.add_subcommand("kmeans", "Jeffreys k-means clustering");
  DatasetArgs kmeans_data;
  jeffreys::ClusteringConfig cfg;
  std::string cluster_mode = "normalized";
  std::string kmeans_output = "json";
  add_dataset_options(kmeans_cmd, kmeans_data);
  kmeans_cmd->add_option("--k", cfg.k, "Number of clusters")->required();
  kmeans_cmd->add_option("--seed", cfg.seed, "Seed for centre selection");
  kmeans_cmd->add_option("--centroid-mode", cluster_mode, "Relocation rule")
      ->check(CLI::IsMember({"positive", "normalized", "fixedpoint-1step", "exact"}));
  kmeans_cmd->add_option("--max-iters", cfg.max_iterations, "Maximum Lloyd rounds");
  kmeans_cmd->add_option("--tol", cfg.objective_tolerance, "Stop when the objective decreases by at most this");
  kmeans_cmd->add_option("--output", kmeans_output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  add_threads(kmeans_cmd);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Approximation-factor statistics on random histogram pairs");
  std::size_t trials = 10000;
  std::size_t dims = 2;
  std::size_t members = 2;
  std::uint64_t bench_seed = 1;
  std::string bench_output = "text";
  bench_cmd->add_option("--trials", trials, "Number of random trials");
  bench_cmd->add_option("--dims", dims, "Bins per histogram");
  bench_cmd->add_option("--members", members, "Histograms per trial set");
  bench_cmd->add_option("--seed", bench_seed, "RNG seed");
  bench_cmd->add_option("--output", bench_output, "Output format")->check(CLI::IsMember({"text", "json"}));
  add_threads(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const double epsilon = jeffreys::smoothing_epsilon_from_env();

    if (*centroid_cmd) {
      const auto set = load(centroid_data, epsilon);
      const auto start = std::chrono::steady_clock::now();
      const auto result = jeffreys::compute_centroid(set, kCentroidModes.at(mode), tol);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      auto report = jeffreys::make_report(result, epsilon, seconds);
      if (compare_exact) {
        const auto exact = jeffreys::frequency_centroid_bisection(set);
        report.exact_objective = exact.objective;
        report.alpha = exact.objective > 0.0 ? result.objective / exact.objective : 1.0;
      }
      if (centroid_output == "json") {
        std::cout << jeffreys::to_json(report).dump(2) << '\n';
      } else {
        std::cout << jeffreys::to_csv(report);
      }
      if (result.fallback) std::cerr << "warning: fixed-point iteration did not converge; used bisection\n";
    } else if (*kmeans_cmd) {
      const auto set = load(kmeans_data, epsilon);
      cfg.centroid_mode = kClusterModes.at(cluster_mode);
      cfg.threads = threads;
      const auto result = jeffreys::kmeans(set, cfg);
      if (kmeans_output == "json") {
        std::cout << jeffreys::to_json(result).dump(2) << '\n';
      } else {
        std::cout << "index,cluster\n";
        for (std::size_t j = 0; j < result.assignments.size(); ++j) {
          std::cout << j << ',' << result.assignments[j] << '\n';
        }
      }
    } else if (*bench_cmd) {
      const auto stats = jeffreys::alpha_trial_harness(trials, dims, bench_seed, threads, members);
      if (bench_output == "text") {
        std::cout << jeffreys::format_table(stats);
      } else {
        const auto ratio = [](const jeffreys::RatioStats& r) {
          return nlohmann::json{{"avg", r.mean}, {"min", r.min}, {"max", r.max}};
        };
        nlohmann::json doc{{"trials", stats.trials},
                           {"dims", stats.dims},
                           {"members", stats.members},
                           {"alpha_c", ratio(stats.alpha_positive)},
                           {"alpha_normalized", ratio(stats.alpha_normalized)},
                           {"w_c", ratio(stats.w_c)},
                           {"alpha_veldhuis", ratio(stats.alpha_veldhuis)},
                           {"mean_bisection_iterations", stats.mean_bisection_iterations},
                           {"mean_fixedpoint_iterations", stats.mean_fixedpoint_iterations},
                           {"fixedpoint_fallbacks", stats.fixedpoint_fallbacks}};
        std::cout << doc.dump(2) << '\n';
      }
    }
  } catch (const jeffreys::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const jeffreys::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
