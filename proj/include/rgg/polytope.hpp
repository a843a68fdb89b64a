#pragma once

#include <cstddef>
#include <cstdint>

#include "rgg/vendor_json.hpp"

namespace rgg {

/// Monte Carlo estimate of Vol(H_k(1)).
struct VolumeEstimate {
  int k = 0;
  double estimate = 0.0;
  double std_error = 0.0;  // 2^k sqrt(p(1-p)/samples)
  std::size_t samples = 0;
  std::size_t accepted = 0;
  std::uint64_t seed = 0;

  double acceptance() const noexcept {
    return samples == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(samples);
  }
};

inline constexpr std::size_t kMinVolumeSamples = 10'000;

/// Chain sampling of H_k(1) = {|x_1| <= 1, |x_{j+1} - x_j| <= 1, |x_k| <= 1}:
/// x_1 ~ U[-1,1], x_{j+1} ~ U[x_j - 1, x_j + 1]. The proposal region has
/// volume exactly 2^k, so only the closing constraint is rejected.
/// Sample i draws from stream(seed, i); the count reduction is exact.
VolumeEstimate estimate_volume(int k, std::size_t samples, std::uint64_t seed);

nlohmann::json to_json(const VolumeEstimate& e);

}  // namespace rgg
