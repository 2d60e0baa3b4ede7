#pragma once

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace dtwclust {

/// One variable-length sequence of real samples plus an identifier.
struct TimeSeries {
  std::string id;
  std::vector<double> samples;

  std::size_t length() const noexcept { return samples.size(); }

  bool operator==(const TimeSeries&) const = default;
};

/// Throws InvalidSeriesError unless the series has at least one sample and
/// every sample is finite.
inline void validate(const TimeSeries& series) {
  if (series.samples.empty()) {
    throw InvalidSeriesError(series.id, "series is empty");
  }
  for (double v : series.samples) {
    if (!std::isfinite(v)) {
      throw InvalidSeriesError(series.id, "series contains a non-finite sample");
    }
  }
}

/// Validates every series and enforces id uniqueness across the dataset.
inline void validate_dataset(const std::vector<TimeSeries>& dataset) {
  std::unordered_set<std::string> seen;
  seen.reserve(dataset.size());
  for (const TimeSeries& series : dataset) {
    validate(series);
    if (!seen.insert(series.id).second) {
      throw InvalidSeriesError(series.id, "duplicate id in dataset");
    }
  }
}

}  // namespace dtwclust
