#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "time_series.hpp"

namespace dtwclust {

struct CsvFormat {
  /// Drop the first cell of every row (UCR-style class label).
  bool label_column = false;
  /// Unset: comma, with tab auto-detected for `.tsv` files.
  std::optional<char> delimiter;
};

namespace detail {

inline std::string_view trim_spaces(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t')) cell.remove_suffix(1);
  return cell;
}

inline double parse_sample(std::string_view cell, const std::string& file, std::size_t line,
                           std::size_t column) {
  const std::string_view trimmed = trim_spaces(cell);
  if (trimmed.empty()) {
    throw ParseFailureError(file, line, column, "empty cell before the last sample");
  }
  std::string_view digits = trimmed;
  if (digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto result = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (result.ec != std::errc() || result.ptr != digits.data() + digits.size()) {
    throw ParseFailureError(file, line, column,
                            "cell '" + std::string(trimmed) + "' is not numeric");
  }
  return value;
}

}  // namespace detail

/// Loads one time series per CSV row. Rows may have unequal lengths; trailing
/// empty cells are trimmed, but an empty cell before the last sample is a
/// parse failure rather than a missing value. Ids are `<file name>:<row>`.
inline std::vector<TimeSeries> ingest(const std::vector<std::filesystem::path>& paths,
                                      const CsvFormat& format = {}) {
  std::vector<TimeSeries> dataset;
  std::unordered_map<std::string, std::size_t> name_uses;

  for (const std::filesystem::path& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailureError("cannot open '" + path.string() + "' for reading");

    std::string name = path.filename().string();
    const std::size_t uses = ++name_uses[name];
    if (uses > 1) name += "#" + std::to_string(uses);

    char delimiter = format.delimiter.value_or(',');
    if (!format.delimiter && path.extension() == ".tsv") delimiter = '\t';

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();

      std::vector<std::string_view> cells;
      std::size_t start = 0;
      while (true) {
        const std::size_t pos = line.find(delimiter, start);
        cells.emplace_back(line.data() + start,
                           (pos == std::string::npos ? line.size() : pos) - start);
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
      while (!cells.empty() && detail::trim_spaces(cells.back()).empty()) cells.pop_back();

      std::size_t first_sample = 0;
      if (format.label_column && !cells.empty()) first_sample = 1;

      TimeSeries series;
      series.id = name + ":" + std::to_string(line_no);
      series.samples.reserve(cells.size() - first_sample);
      for (std::size_t c = first_sample; c < cells.size(); ++c) {
        series.samples.push_back(
            detail::parse_sample(cells[c], path.string(), line_no, c + 1));
      }
      if (series.samples.empty()) throw EmptySeriesError(path.string(), line_no);
      validate(series);
      dataset.push_back(std::move(series));
    }
    if (in.bad()) throw IoFailureError("failed reading '" + path.string() + "'");
  }
  if (dataset.empty()) throw EmptyDatasetError();
  return dataset;
}

}  // namespace dtwclust
