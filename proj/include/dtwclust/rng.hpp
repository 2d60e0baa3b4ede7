#pragma once

#include <cstdint>

namespace dtwclust {

/// SplitMix64 generator. Small state, 64-bit output, and the same sequence on
/// every platform, which keeps seeded clustering runs reproducible across
/// toolchains (the standard <random> distributions are not portable).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n > 0. Fixed-point scaling keeps the draw
  /// branch-free and deterministic.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(n)) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Generator for one restart stream. Stream r depends only on (seed, r), so a
/// restart is reproducible no matter how many restarts run or in which order.
inline SplitMix64 restart_stream(std::uint64_t seed, std::uint64_t restart) {
  SplitMix64 mixer(seed);
  const std::uint64_t base = mixer.next();
  return SplitMix64(base + (restart + 1) * 0xD1B54A32D192ED03ULL);
}

}  // namespace dtwclust
