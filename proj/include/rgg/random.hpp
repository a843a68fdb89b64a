#pragma once

#include <cstdint>

namespace rgg {

/// SplitMix64 (Steele, Lea & Flood 2014). Every randomized routine in the
/// library draws from this generator, so outputs are reproducible from the
/// seed alone. Independent streams are derived with `stream(seed, index)`.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// Stafford "Mix13" finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Child stream `index` of `seed`; used for per-sample and per-realization
/// streams so parallel schedules do not change results.
inline SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64(mix64(mix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL)));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return stream(seed, index).next();
}

}  // namespace rgg
