#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>

namespace dtwclust {

/// Sakoe-Chiba band constraint: a bounded window restricts the alignment to
/// cells with |i - j| <= half_width, an unlimited one admits every cell.
/// A half-width of max(n, m) or more behaves exactly like unlimited.
class WarpWindow {
 public:
  static WarpWindow unlimited() { return WarpWindow(std::nullopt); }
  static WarpWindow banded(std::size_t half_width) { return WarpWindow(half_width); }

  bool is_unlimited() const noexcept { return !half_width_.has_value(); }

  /// Only meaningful for a banded window.
  std::size_t half_width() const { return half_width_.value(); }

  /// True when the window admits an alignment of lengths n and m, i.e. when
  /// it is unlimited or half_width >= |n - m|. A narrower band leaves the
  /// (n, m) cell unreachable.
  bool feasible_for(std::size_t n, std::size_t m) const noexcept {
    if (!half_width_) return true;
    const std::size_t gap = n > m ? n - m : m - n;
    return *half_width_ >= gap;
  }

  /// Half-width actually used by the dynamic program for lengths n and m.
  std::size_t effective(std::size_t n, std::size_t m) const noexcept {
    return half_width_ ? *half_width_ : std::max(n, m);
  }

  std::string describe() const {
    return half_width_ ? std::to_string(*half_width_) : std::string("unlimited");
  }

  bool operator==(const WarpWindow&) const = default;

 private:
  explicit WarpWindow(std::optional<std::size_t> half_width) : half_width_(half_width) {}

  std::optional<std::size_t> half_width_;
};

}  // namespace dtwclust
