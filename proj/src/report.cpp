#include "jeffreys/report.hpp"

#include <sstream>

#include "jeffreys/dataset.hpp"

namespace jeffreys {

RunReport make_report(const CentroidResult& result, double epsilon, double wall_clock_seconds) {
  RunReport r;
  r.mode = std::string(to_string(result.mode));
  r.centroid.assign(result.centroid.bins().begin(), result.centroid.bins().end());
  r.w_c = result.w_c;
  r.lambda_star = result.lambda_star;
  r.iterations = result.iterations;
  r.objective = result.objective;
  r.bound_factor = result.bound_factor;
  r.refined_bound = result.refined_bound;
  r.normalization_defect = result.normalization_defect;
  r.fallback = result.fallback;
  r.epsilon = epsilon;
  r.wall_clock_seconds = wall_clock_seconds;
  return r;
}

namespace {

template <class T>
void put_optional(nlohmann::json& doc, const char* key, const std::optional<T>& value) {
  doc[key] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> get_optional(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return doc[key].get<T>();
}

std::string csv_optional(const std::optional<double>& value) { return value ? format_double(*value) : ""; }

}  // namespace

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json doc;
  doc["mode"] = report.mode;
  doc["centroid"] = report.centroid;
  put_optional(doc, "w_c", report.w_c);
  put_optional(doc, "lambda_star", report.lambda_star);
  doc["iterations"] = report.iterations;
  doc["objective"] = report.objective;
  put_optional(doc, "bound_factor", report.bound_factor);
  put_optional(doc, "refined_bound", report.refined_bound);
  put_optional(doc, "alpha", report.alpha);
  put_optional(doc, "exact_objective", report.exact_objective);
  doc["normalization_defect"] = report.normalization_defect;
  doc["fallback"] = report.fallback;
  doc["epsilon"] = report.epsilon;
  doc["wall_clock_seconds"] = report.wall_clock_seconds;
  return doc;
}

RunReport report_from_json(const nlohmann::json& doc) {
  RunReport r;
  r.mode = doc.at("mode").get<std::string>();
  r.centroid = doc.at("centroid").get<std::vector<double>>();
  r.w_c = get_optional<double>(doc, "w_c");
  r.lambda_star = get_optional<double>(doc, "lambda_star");
  r.iterations = doc.at("iterations").get<int>();
  r.objective = doc.at("objective").get<double>();
  r.bound_factor = get_optional<double>(doc, "bound_factor");
  r.refined_bound = get_optional<double>(doc, "refined_bound");
  r.alpha = get_optional<double>(doc, "alpha");
  r.exact_objective = get_optional<double>(doc, "exact_objective");
  r.normalization_defect = doc.at("normalization_defect").get<double>();
  r.fallback = doc.at("fallback").get<bool>();
  r.epsilon = doc.at("epsilon").get<double>();
  r.wall_clock_seconds = doc.at("wall_clock_seconds").get<double>();
  return r;
}

std::string to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "mode,w_c,lambda_star,iterations,objective,bound_factor,refined_bound,alpha,exact_objective,"
         "normalization_defect,fallback,epsilon,wall_clock_seconds";
  for (std::size_t i = 0; i < report.centroid.size(); ++i) out << ",c" << i;
  out << '\n'
      << report.mode << ',' << csv_optional(report.w_c) << ',' << csv_optional(report.lambda_star) << ','
      << report.iterations << ',' << format_double(report.objective) << ',' << csv_optional(report.bound_factor)
      << ',' << csv_optional(report.refined_bound) << ',' << csv_optional(report.alpha) << ','
      << csv_optional(report.exact_objective) << ',' << format_double(report.normalization_defect) << ','
      << (report.fallback ? "true" : "false") << ',' << format_double(report.epsilon) << ','
      << format_double(report.wall_clock_seconds);
  for (double c : report.centroid) out << ',' << format_double(c);
  out << '\n';
  return out.str();
}

nlohmann::json to_json(const ClusteringResult& result) {
  nlohmann::json doc;
  doc["assignments"] = result.assignments;
  doc["centroids"] = nlohmann::json::array();
  for (const auto& c : result.centroids) doc["centroids"].push_back(std::vector<double>(c.bins().begin(), c.bins().end()));
  doc["objective_trace"] = result.objective_trace;
  doc["iterations"] = result.iterations;
  return doc;
}

}  // namespace jeffreys
