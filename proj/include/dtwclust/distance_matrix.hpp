#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace dtwclust {

/// Symmetric p x p matrix of pairwise costs with a zero diagonal, stored as
/// the condensed upper triangle: p(p-1)/2 values in row-major order.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(std::size_t p) : p_(p), values_(condensed_size(p), 0.0) {
    if (p == 0) throw DistanceMatrixInvalidError("matrix needs at least one series");
  }

  /// Adopts condensed upper-triangle storage, checking size and entry validity.
  static DistanceMatrix from_condensed(std::size_t p, std::vector<double> values) {
    DistanceMatrix m(p);
    if (values.size() != condensed_size(p)) {
      throw DistanceMatrixInvalidError("condensed storage holds " +
                                       std::to_string(values.size()) + " values, expected " +
                                       std::to_string(condensed_size(p)));
    }
    for (double v : values) {
      if (!(std::isfinite(v) && v >= 0.0)) {
        throw DistanceMatrixInvalidError("entries must be finite and non-negative");
      }
    }
    m.values_ = std::move(values);
    return m;
  }

  std::size_t size() const noexcept { return p_; }

  double distance(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    if (i == j) return 0.0;
    return values_[offset(i, j)];
  }

  /// Sets the single stored value for the unordered pair {i, j}, i != j.
  void set(std::size_t i, std::size_t j, double value) {
    check_index(i);
    check_index(j);
    if (i == j) throw DistanceMatrixInvalidError("diagonal entries are fixed at zero");
    values_[offset(i, j)] = value;
  }

  const std::vector<double>& condensed() const noexcept { return values_; }

  static std::size_t condensed_size(std::size_t p) noexcept { return p * (p - 1) / 2; }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  void check_index(std::size_t i) const {
    if (i >= p_) throw IndexOutOfRangeError(i, p_);
  }

  std::size_t offset(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * (2 * p_ - i - 1) / 2 + (j - i - 1);
  }

  std::size_t p_;
  std::vector<double> values_;
};

namespace detail {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

inline double parse_matrix_value(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end || token.empty()) {
    throw FormatViolationError(line, "cell '" + std::string(token) + "' is not a decimal value");
  }
  return value;
}

}  // namespace detail

/// Writes the matrix in the text format: a `p=<count>` header, then p lines
/// of p comma-separated values (full symmetric matrix). Values round-trip
/// exactly; the diagonal is written as a literal `0`.
inline void save_matrix(const DistanceMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps \n endings everywhere
  if (!out) throw IoFailureError("cannot open '" + path.string() + "' for writing");
  const std::size_t p = m.size();
  out << "p=" << p << "\n";
  std::string row;
  for (std::size_t i = 0; i < p; ++i) {
    row.clear();
    for (std::size_t j = 0; j < p; ++j) {
      if (j > 0) row += ',';
      row += i == j ? "0" : detail::format_double(m.distance(i, j));
    }
    row += '\n';
    out << row;
  }
  out.flush();
  if (!out) throw IoFailureError("failed writing '" + path.string() + "'");
}

/// Reads a matrix written by save_matrix, enforcing the format invariants:
/// exact header, p rows of p cells, zero diagonal, symmetry, finite
/// non-negative entries. Violations report the offending line.
inline DistanceMatrix load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailureError("cannot open '" + path.string() + "' for reading");

  std::string line;
  if (!std::getline(in, line)) throw FormatViolationError(1, "missing 'p=<count>' header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("p=", 0) != 0) throw FormatViolationError(1, "expected 'p=<count>' header");
  std::size_t p = 0;
  {
    const char* begin = line.data() + 2;
    const char* end = line.data() + line.size();
    const auto result = std::from_chars(begin, end, p);
    if (result.ec != std::errc() || result.ptr != end || p == 0) {
      throw FormatViolationError(1, "header count '" + line.substr(2) +
                                        "' is not a positive integer");
    }
  }

  DistanceMatrix m(p);
  std::vector<double> row(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    const std::size_t line_no = i + 2;
    if (!std::getline(in, line)) {
      throw FormatViolationError(line_no, "expected " + std::to_string(p) + " matrix rows");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t cell = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view token(line.data() + start,
                                   (comma == std::string::npos ? line.size() : comma) - start);
      if (cell >= p) throw FormatViolationError(line_no, "row has more than " +
                                                             std::to_string(p) + " cells");
      row[cell] = detail::parse_matrix_value(token, line_no);
      ++cell;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cell != p) {
      throw FormatViolationError(line_no, "row has " + std::to_string(cell) +
                                              " cells, expected " + std::to_string(p));
    }
    for (std::size_t j = 0; j < p; ++j) {
      const double v = row[j];
      if (i == j) {
        if (v != 0.0) throw FormatViolationError(line_no, "diagonal entry must be exactly 0");
        continue;
      }
      if (!(std::isfinite(v) && v >= 0.0)) {
        throw FormatViolationError(line_no, "entries must be finite and non-negative");
      }
      if (j > i) {
        m.set(i, j, v);
      } else if (m.distance(i, j) != v) {
        throw FormatViolationError(line_no, "matrix is not symmetric at (" + std::to_string(i) +
                                                ", " + std::to_string(j) + ")");
      }
    }
  }
  if (std::getline(in, line) && !line.empty()) {
    throw FormatViolationError(p + 2, "unexpected content after the last matrix row");
  }
  return m;
}

}  // namespace dtwclust
