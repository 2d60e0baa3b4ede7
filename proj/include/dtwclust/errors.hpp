#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtwclust {

/// Stable error classes. The enumerator values double as the CLI exit codes,
/// so keep them fixed once released.
enum class ErrorCode {
  InvalidArguments = 2,
  IoFailure = 3,
  ParseFailure = 4,
  InvalidSeries = 5,
  EmptySeries = 6,
  EmptyDataset = 7,
  BandInfeasible = 8,
  FormatViolation = 9,
  KOutOfRange = 10,
  DistanceMatrixInvalid = 11,
  IndexOutOfRange = 12,
  SingleClusterUndefined = 13,
  InstanceTooLarge = 14,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentsError : public Error {
 public:
  explicit InvalidArgumentsError(const std::string& message)
      : Error(ErrorCode::InvalidArguments, message) {}
};

class IoFailureError : public Error {
 public:
  explicit IoFailureError(const std::string& message) : Error(ErrorCode::IoFailure, message) {}
};

class ParseFailureError : public Error {
 public:
  ParseFailureError(std::string file, std::size_t line, std::size_t column,
                    const std::string& message)
      : Error(ErrorCode::ParseFailure, file + ":" + std::to_string(line) + ":" +
                                           std::to_string(column) + ": " + message),
        file_(std::move(file)),
        line_(line),
        column_(column) {}
  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

class InvalidSeriesError : public Error {
 public:
  InvalidSeriesError(std::string id, const std::string& message)
      : Error(ErrorCode::InvalidSeries, "series '" + id + "': " + message), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class EmptySeriesError : public Error {
 public:
  EmptySeriesError(const std::string& file, std::size_t line)
      : Error(ErrorCode::EmptySeries,
              file + ":" + std::to_string(line) + ": row contains no samples"),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyDatasetError : public Error {
 public:
  EmptyDatasetError() : Error(ErrorCode::EmptyDataset, "dataset contains no series") {}
};

/// A bounded warping window narrower than the length gap of a pair leaves the
/// final alignment cell unreachable.
class BandInfeasibleError : public Error {
 public:
  BandInfeasibleError(std::size_t length_x, std::size_t length_y, std::size_t half_width)
      : Error(ErrorCode::BandInfeasible, describe(length_x, length_y, half_width)),
        length_x_(length_x),
        length_y_(length_y),
        half_width_(half_width) {}
  BandInfeasibleError(std::size_t pair_i, std::size_t pair_j, const BandInfeasibleError& cause)
      : Error(ErrorCode::BandInfeasible,
              "pair (" + std::to_string(pair_i) + ", " + std::to_string(pair_j) +
                  "): " + cause.what()),
        length_x_(cause.length_x_),
        length_y_(cause.length_y_),
        half_width_(cause.half_width_),
        pair_i_(pair_i),
        pair_j_(pair_j),
        has_pair_(true) {}

  std::size_t length_x() const noexcept { return length_x_; }
  std::size_t length_y() const noexcept { return length_y_; }
  std::size_t half_width() const noexcept { return half_width_; }
  bool has_pair() const noexcept { return has_pair_; }
  std::size_t pair_i() const noexcept { return pair_i_; }
  std::size_t pair_j() const noexcept { return pair_j_; }

 private:
  static std::string describe(std::size_t n, std::size_t m, std::size_t hw) {
    return "half-width " + std::to_string(hw) + " is narrower than the length gap of " +
           std::to_string(n > m ? n - m : m - n) + " (lengths " + std::to_string(n) + " and " +
           std::to_string(m) + ")";
  }
  std::size_t length_x_;
  std::size_t length_y_;
  std::size_t half_width_;
  std::size_t pair_i_ = 0;
  std::size_t pair_j_ = 0;
  bool has_pair_ = false;
};

class FormatViolationError : public Error {
 public:
  FormatViolationError(std::size_t line, const std::string& message)
      : Error(ErrorCode::FormatViolation, "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class KOutOfRangeError : public Error {
 public:
  KOutOfRangeError(std::size_t k, std::size_t p)
      : Error(ErrorCode::KOutOfRange, "k=" + std::to_string(k) +
                                          " is outside [1, p] with p=" + std::to_string(p)) {}
};

class DistanceMatrixInvalidError : public Error {
 public:
  explicit DistanceMatrixInvalidError(const std::string& message)
      : Error(ErrorCode::DistanceMatrixInvalid, message) {}
};

class IndexOutOfRangeError : public Error {
 public:
  IndexOutOfRangeError(std::size_t index, std::size_t p)
      : Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(index) +
                                              " is outside [0, " + std::to_string(p) + ")") {}
};

class SingleClusterUndefinedError : public Error {
 public:
  SingleClusterUndefinedError()
      : Error(ErrorCode::SingleClusterUndefined,
              "silhouette scores are undefined for a single cluster; request k >= 2") {}
};

class InstanceTooLargeError : public Error {
 public:
  explicit InstanceTooLargeError(const std::string& message)
      : Error(ErrorCode::InstanceTooLarge, message) {}
};

}  // namespace dtwclust
