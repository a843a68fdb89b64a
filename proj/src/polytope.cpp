#include "rgg/polytope.hpp"

#include <cmath>

#include <fmt/format.h>

#include "rgg/errors.hpp"
#include "rgg/random.hpp"

namespace rgg {

VolumeEstimate estimate_volume(int k, std::size_t samples, std::uint64_t seed) {
  if (k < 1) throw ParameterError("estimate_volume: k must be >= 1");
  if (k > 60) throw ParameterError("estimate_volume: k must be <= 60");
  if (samples < kMinVolumeSamples) {
    throw ParameterError(fmt::format("estimate_volume: need >= {} samples", kMinVolumeSamples));
  }
  const auto count = static_cast<std::int64_t>(samples);
  std::size_t accepted = 0;
#pragma omp parallel for schedule(static) reduction(+ : accepted)
  for (std::int64_t i = 0; i < count; ++i) {
    auto rng = stream(seed, static_cast<std::uint64_t>(i));
    double x = rng.uniform(-1.0, 1.0);
    for (int step = 1; step < k; ++step) x += rng.uniform(-1.0, 1.0);
    if (std::fabs(x) <= 1.0) ++accepted;
  }
  VolumeEstimate e;
  e.k = k;
  e.samples = samples;
  e.accepted = accepted;
  e.seed = seed;
  const double scale = std::ldexp(1.0, k);
  const double p = e.acceptance();
  e.estimate = scale * p;
  e.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return e;
}

nlohmann::json to_json(const VolumeEstimate& e) {
  return {{"k", e.k},           {"estimate", e.estimate}, {"std_error", e.std_error},
          {"samples", e.samples}, {"accepted", e.accepted}, {"seed", e.seed}};
}

}  // namespace rgg
