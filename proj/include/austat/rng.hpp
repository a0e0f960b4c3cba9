#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace austat {

/// SplitMix64 stream (Steele, Lea & Flood construction). Chosen for its
/// splittable, counter-like state: child streams for parallel replications
/// are derived from fixed positions of the master stream, so results do not
/// depend on scheduling order. All variate transforms are spelled out here
/// rather than taken from <random>, which keeps sequences identical across
/// standard libraries for a given libm.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  /// Uniform on [0, 1), 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Exponential with the given mean, via inverse CDF.
  double next_exponential(double mean) noexcept {
    return -mean * std::log1p(-next_unit());
  }

  /// N(0, stddev^2) via Box-Muller; the second variate of each pair is cached.
  double next_normal(double stddev) noexcept {
    if (has_cached_) {
      has_cached_ = false;
      return cached_ * stddev;
    }
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle) * stddev;
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// Seed for child stream `index` of `master`: the SplitMix64 output at
/// position index+1. Independent of the order children are created in.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64::mix(master + (index + 1) * SplitMix64::kGamma);
}

}  // namespace austat
