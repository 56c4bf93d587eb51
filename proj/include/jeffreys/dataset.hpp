#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jeffreys/histogram.hpp"

namespace jeffreys {

enum class DatasetFormat { csv, json, pgm };
enum class HistogramKind { positive, frequency };

DatasetFormat parse_format(std::string_view name);  // csv | json | pgm | pgm-dir
HistogramKind parse_kind(std::string_view name);    // positive | frequency

/// Smoothing constant: JEFFREYS_EPSILON when set and valid, else kDefaultSmoothing.
double smoothing_epsilon_from_env();

/// Turns raw non-negative bins into a histogram of the declared kind: zero bins are
/// smoothed, frequency rows must sum to 1 within kRenormalizeTolerance.
Histogram ingest_bins(std::vector<double> bins, HistogramKind kind, double epsilon);

/// One histogram per row; an optional leading field `weight:<w>` sets the row weight.
/// Missing weights default to 1/n. Errors carry line and column.
WeightedHistogramSet parse_csv(std::istream& in, HistogramKind kind, double epsilon);
/// {"weights": [...], "histograms": [[...], ...]}; weights optional.
WeightedHistogramSet parse_json(std::istream& in, HistogramKind kind, double epsilon);
/// 256 intensity counts of a binary (P5) 8-bit PGM image.
std::vector<double> pgm_intensity_counts(std::istream& in);

/// Reads a CSV/JSON file, or a PGM file or a directory of *.pgm files (sorted by name).
WeightedHistogramSet parse_dataset(const std::filesystem::path& path, DatasetFormat format, HistogramKind kind,
                                   double epsilon);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double x);

void write_csv(std::ostream& out, const WeightedHistogramSet& set);
void write_json(std::ostream& out, const WeightedHistogramSet& set);

}  // namespace jeffreys
