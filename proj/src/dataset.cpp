#include "jeffreys/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "jeffreys/errors.hpp"

namespace jeffreys {

DatasetFormat parse_format(std::string_view name) {
  if (name == "csv") return DatasetFormat::csv;
  if (name == "json") return DatasetFormat::json;
  if (name == "pgm" || name == "pgm-dir" || name == "pgm-image") return DatasetFormat::pgm;
  throw ValidationError("unknown dataset format '" + std::string(name) + "'");
}

HistogramKind parse_kind(std::string_view name) {
  if (name == "positive") return HistogramKind::positive;
  if (name == "frequency") return HistogramKind::frequency;
  throw ValidationError("unknown histogram kind '" + std::string(name) + "'");
}

double smoothing_epsilon_from_env() {
  const char* raw = std::getenv("JEFFREYS_EPSILON");
  if (raw == nullptr || *raw == '\0') return kDefaultSmoothing;
  double value = 0.0;
  const std::string_view text(raw);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError("JEFFREYS_EPSILON must be a positive number, got '" + std::string(text) + "'");
  }
  return value;
}

Histogram ingest_bins(std::vector<double> bins, HistogramKind kind, double epsilon) {
  if (kind == HistogramKind::positive) return Histogram::smoothed(std::move(bins), epsilon);
  double total = 0.0;
  for (double b : bins) total += b;
  if (std::abs(total - 1.0) > kRenormalizeTolerance) {
    throw ValidationError("declared frequency histogram sums to " + format_double(total));
  }
  return normalize(Histogram::smoothed(std::move(bins), epsilon)).histogram();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line, std::size_t column) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": not a number: '" + std::string(field) + "'");
  }
  return value;
}

WeightedHistogramSet assemble(std::vector<Histogram> histograms, std::vector<double> weights) {
  if (histograms.empty()) throw ValidationError("dataset contains no histograms");
  if (weights.empty()) return WeightedHistogramSet::uniform(std::move(histograms));
  return WeightedHistogramSet::with_relative_weights(std::move(histograms), std::move(weights));
}

}  // namespace

WeightedHistogramSet parse_csv(std::istream& in, HistogramKind kind, double epsilon) {
  std::vector<Histogram> histograms;
  std::vector<double> weights;
  std::size_t weighted_rows = 0;
  std::size_t dim = 0;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view row = trim(raw);
    if (row.empty() || row.front() == '#') continue;

    std::vector<double> bins;
    std::size_t column = 0;
    std::size_t start = 0;
    bool has_weight = false;
    while (start <= row.size()) {
      const std::size_t comma = std::min(row.find(',', start), row.size());
      const std::string_view field = trim(row.substr(start, comma - start));
      ++column;
      if (column == 1 && field.starts_with("weight:")) {
        const double w = parse_number(field.substr(7), line, column);
        if (!(w > 0.0)) {
          throw ValidationError("line " + std::to_string(line) + ", column 1: weight must be positive");
        }
        weights.push_back(w);
        has_weight = true;
      } else {
        const double b = parse_number(field, line, column);
        if (b < 0.0) {
          throw ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                                ": negative bin value");
        }
        bins.push_back(b);
      }
      start = comma + 1;
    }
    if (bins.empty()) throw ValidationError("line " + std::to_string(line) + ": row has no bins");
    if (dim == 0) dim = bins.size();
    if (bins.size() != dim) {
      throw ValidationError("line " + std::to_string(line) + ": expected " + std::to_string(dim) + " bins, found " +
                            std::to_string(bins.size()));
    }
    weighted_rows += has_weight ? 1 : 0;
    try {
      histograms.push_back(ingest_bins(std::move(bins), kind, epsilon));
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  if (weighted_rows != 0 && weighted_rows != histograms.size()) {
    throw ValidationError("either every row or no row may carry a weight: prefix");
  }
  return assemble(std::move(histograms), std::move(weights));
}

WeightedHistogramSet parse_json(std::istream& in, HistogramKind kind, double epsilon) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("histograms") || !doc["histograms"].is_array()) {
    throw ValidationError("JSON dataset needs a \"histograms\" array");
  }
  std::vector<Histogram> histograms;
  std::size_t dim = 0;
  for (std::size_t j = 0; j < doc["histograms"].size(); ++j) {
    const auto& row = doc["histograms"][j];
    if (!row.is_array()) throw ValidationError("histograms[" + std::to_string(j) + "] is not an array");
    std::vector<double> bins;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].is_number()) {
        throw ValidationError("histograms[" + std::to_string(j) + "][" + std::to_string(i) + "] is not a number");
      }
      bins.push_back(row[i].get<double>());
      if (bins.back() < 0.0) {
        throw ValidationError("histograms[" + std::to_string(j) + "][" + std::to_string(i) + "] is negative");
      }
    }
    if (dim == 0) dim = bins.size();
    if (bins.size() != dim) {
      throw ValidationError("histograms[" + std::to_string(j) + "] has " + std::to_string(bins.size()) +
                            " bins, expected " + std::to_string(dim));
    }
    try {
      histograms.push_back(ingest_bins(std::move(bins), kind, epsilon));
    } catch (const ValidationError& e) {
      throw ValidationError("histograms[" + std::to_string(j) + "]: " + e.what());
    }
  }
  std::vector<double> weights;
  if (doc.contains("weights")) {
    const auto& w = doc["weights"];
    if (!w.is_array() || w.size() != histograms.size()) {
      throw ValidationError("\"weights\" must be an array with one entry per histogram");
    }
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (!w[j].is_number() || !(w[j].get<double>() > 0.0)) {
        throw ValidationError("weights[" + std::to_string(j) + "] must be a positive number");
      }
      weights.push_back(w[j].get<double>());
    }
  }
  return assemble(std::move(histograms), std::move(weights));
}

namespace {

// Next header token, skipping whitespace and '#' comments.
std::string pgm_token(std::istream& in) {
  std::string token;
  int c = in.get();
  for (;;) {
    while (c != EOF && std::isspace(c)) c = in.get();
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
      continue;
    }
    break;
  }
  while (c != EOF && !std::isspace(c)) {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  return token;  // the single whitespace after maxval is consumed here
}

std::size_t pgm_number(std::istream& in, const char* what) {
  const std::string token = pgm_token(in);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ValidationError(std::string("PGM header: bad ") + what + " '" + token + "'");
  }
  return value;
}

}  // namespace

std::vector<double> pgm_intensity_counts(std::istream& in) {
  if (pgm_token(in) != "P5") throw ValidationError("not a binary PGM (P5) image");
  const std::size_t width = pgm_number(in, "width");
  const std::size_t height = pgm_number(in, "height");
  const std::size_t maxval = pgm_number(in, "maxval");
  if (width == 0 || height == 0) throw ValidationError("PGM image has no pixels");
  if (maxval == 0 || maxval > 255) throw ValidationError("only 8-bit PGM images are supported");
  std::vector<double> counts(256, 0.0);
  std::vector<char> pixels(width * height);
  in.read(pixels.data(), static_cast<std::streamsize>(pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != pixels.size()) throw ValidationError("PGM pixel data truncated");
  for (char p : pixels) {
    const auto v = static_cast<unsigned char>(p);
    if (v > maxval) throw ValidationError("PGM pixel exceeds maxval");
    counts[v] += 1.0;
  }
  return counts;
}

WeightedHistogramSet parse_dataset(const std::filesystem::path& path, DatasetFormat format, HistogramKind kind,
                                   double epsilon) {
  namespace fs = std::filesystem;
  if (format == DatasetFormat::pgm) {
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
    } else {
      files.push_back(path);
    }
    std::vector<Histogram> histograms;
    for (const auto& file : files) {
      std::ifstream in(file, std::ios::binary);
      if (!in) throw ValidationError("cannot open " + file.string());
      try {
        auto counts = pgm_intensity_counts(in);
        if (kind == HistogramKind::frequency) {
          double total = 0.0;
          for (double c : counts) total += c;
          for (double& c : counts) c /= total;
        }
        histograms.push_back(ingest_bins(std::move(counts), kind, epsilon));
      } catch (const ValidationError& e) {
        throw ValidationError(file.string() + ": " + e.what());
      }
    }
    return assemble(std::move(histograms), {});
  }
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return format == DatasetFormat::csv ? parse_csv(in, kind, epsilon) : parse_json(in, kind, epsilon);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const WeightedHistogramSet& set) {
  for (std::size_t j = 0; j < set.size(); ++j) {
    out << "weight:" << format_double(set.weight(j));
    for (double b : set[j].bins()) out << ',' << format_double(b);
    out << '\n';
  }
}

void write_json(std::ostream& out, const WeightedHistogramSet& set) {
  nlohmann::json doc;
  doc["weights"] = set.weights();
  doc["histograms"] = nlohmann::json::array();
  for (const auto& h : set.histograms()) doc["histograms"].push_back(std::vector<double>(h.bins().begin(), h.bins().end()));
  out << doc.dump() << '\n';
}

}  // namespace jeffreys
