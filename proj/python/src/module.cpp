#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jeffreys/bench.hpp"
#include "jeffreys/centroid.hpp"
#include "jeffreys/divergence.hpp"
#include "jeffreys/errors.hpp"
#include "jeffreys/kmeans.hpp"
#include "jeffreys/lambert_w.hpp"

namespace py = pybind11;

namespace {

using Rows = std::vector<std::vector<double>>;

jeffreys::WeightedHistogramSet make_set(const Rows& rows, const std::optional<std::vector<double>>& weights) {
  std::vector<jeffreys::Histogram> hs;
  hs.reserve(rows.size());
  for (const auto& r : rows) hs.emplace_back(r);
  if (!weights) return jeffreys::WeightedHistogramSet::uniform(std::move(hs));
  return jeffreys::WeightedHistogramSet::with_relative_weights(std::move(hs), *weights);
}

std::vector<double> to_vector(const jeffreys::Histogram& h) { return {h.bins().begin(), h.bins().end()}; }

template <typename Mode>
Mode lookup(const std::map<std::string, Mode>& table, const std::string& name) {
  const auto it = table.find(name);
  if (it == table.end()) throw jeffreys::ValidationError("unknown mode '" + name + "'");
  return it->second;
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

py::dict centroid(const Rows& rows, const std::optional<std::vector<double>>& weights, const std::string& mode,
                  std::optional<double> tol) {
  const auto set = make_set(rows, weights);
  jeffreys::CentroidResult r;
  {
    py::gil_scoped_release release;
    r = jeffreys::compute_centroid(set, lookup(kCentroidModes, mode), tol);
  }
  py::dict out;
  out["mode"] = std::string(jeffreys::to_string(r.mode));
  out["centroid"] = to_vector(r.centroid);
  out["w_c"] = r.w_c;
  out["lambda_star"] = r.lambda_star;
  out["iterations"] = r.iterations;
  out["objective"] = r.objective;
  out["bound_factor"] = r.bound_factor;
  out["refined_bound"] = r.refined_bound;
  out["normalization_defect"] = r.normalization_defect;
  out["fallback"] = r.fallback;
  return out;
}

py::dict kmeans(const Rows& rows, std::size_t k, const std::optional<std::vector<double>>& weights,
                const std::string& centroid_mode, std::uint64_t seed, int max_iterations, double tol,
                unsigned threads) {
  const auto set = make_set(rows, weights);
  jeffreys::ClusteringConfig cfg{.k = k,
                                 .max_iterations = max_iterations,
                                 .centroid_mode = lookup(kClusterModes, centroid_mode),
                                 .seed = seed,
                                 .objective_tolerance = tol,
                                 .threads = threads};
  jeffreys::ClusteringResult r;
  {
    py::gil_scoped_release release;
    r = jeffreys::kmeans(set, cfg);
  }
  py::list centroids;
  for (const auto& c : r.centroids) centroids.append(to_vector(c));
  py::dict out;
  out["assignments"] = r.assignments;
  out["centroids"] = centroids;
  out["objective_trace"] = r.objective_trace;
  out["iterations"] = r.iterations;
  return out;
}

py::dict ratio(const jeffreys::RatioStats& s) {
  py::dict d;
  d["avg"] = s.mean;
  d["min"] = s.min;
  d["max"] = s.max;
  return d;
}

py::dict bench(std::size_t trials, std::size_t dims, std::uint64_t seed, std::size_t members, unsigned threads) {
  jeffreys::AlphaStatistics s;
  {
    py::gil_scoped_release release;
    s = jeffreys::alpha_trial_harness(trials, dims, seed, threads, members);
  }
  py::dict out;
  out["trials"] = s.trials;
  out["dims"] = s.dims;
  out["members"] = s.members;
  out["alpha_c"] = ratio(s.alpha_positive);
  out["alpha_normalized"] = ratio(s.alpha_normalized);
  out["w_c"] = ratio(s.w_c);
  out["alpha_veldhuis"] = ratio(s.alpha_veldhuis);
  out["mean_bisection_iterations"] = s.mean_bisection_iterations;
  out["mean_fixedpoint_iterations"] = s.mean_fixedpoint_iterations;
  out["fixedpoint_fallbacks"] = s.fixedpoint_fallbacks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Jeffreys-divergence centroids and k-means for histograms.";

  py::register_exception<jeffreys::ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<jeffreys::NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("lambert_w0", [](double x) { return jeffreys::lambert_w0(x).value; }, py::arg("x"),
        "Principal branch of the Lambert W function for x >= 0.");
  m.def(
      "jeffreys_divergence",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return jeffreys::jeffreys_divergence(jeffreys::Histogram(p), jeffreys::Histogram(q));
      },
      py::arg("p"), py::arg("q"), "sum_i (p - q) log(p / q) for positive histograms.");
  m.def(
      "extended_kl",
      [](const std::vector<double>& p, const std::vector<double>& q) {
        return jeffreys::extended_kl(jeffreys::Histogram(p), jeffreys::Histogram(q));
      },
      py::arg("p"), py::arg("q"), "sum_i p log(p / q) + q - p for positive histograms.");
  m.def("centroid", &centroid, py::arg("histograms"), py::arg("weights") = py::none(),
        py::arg("mode") = "normalized", py::arg("tol") = py::none(),
        "Centroid of a weighted histogram set. Modes: positive, normalized, veldhuis, bisection, fixedpoint.");
  m.def("kmeans", &kmeans, py::arg("histograms"), py::arg("k"), py::arg("weights") = py::none(),
        py::arg("centroid_mode") = "normalized", py::arg("seed") = 0, py::arg("max_iterations") = 100,
        py::arg("tol") = 1e-12, py::arg("threads") = 1,
        "Jeffreys k-means. Centroid modes: positive, normalized, fixedpoint-1step, exact.");
  m.def("bench", &bench, py::arg("trials") = 10000, py::arg("dims") = 2, py::arg("seed") = 1,
        py::arg("members") = 2, py::arg("threads") = 1,
        "Approximation-factor statistics against the exact frequency centroid on random sets.");
}
