#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jeffreys/centroid.hpp"
#include "jeffreys/kmeans.hpp"

namespace jeffreys {

/// Everything `jeffreys centroid` prints about one solve.
struct RunReport {
  std::string mode;
  std::vector<double> centroid;
  std::optional<double> w_c;
  std::optional<double> lambda_star;
  int iterations = 0;
  double objective = 0.0;
  std::optional<double> bound_factor;
  std::optional<double> refined_bound;
  /// J(centroid) / J(exact frequency centroid), when requested.
  std::optional<double> alpha;
  std::optional<double> exact_objective;
  double normalization_defect = 0.0;
  bool fallback = false;
  double epsilon = 0.0;
  double wall_clock_seconds = 0.0;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport make_report(const CentroidResult& result, double epsilon, double wall_clock_seconds);

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);
/// Two lines: a header and the values; centroid bins as c0..c{d-1} columns.
std::string to_csv(const RunReport& report);

nlohmann::json to_json(const ClusteringResult& result);

}  // namespace jeffreys
