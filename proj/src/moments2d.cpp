#include "rgg/moments2d.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "rgg/errors.hpp"
#include "rgg/random.hpp"

namespace rgg {

double lens_area(double rho, double r, LensSupport support) {
  if (rho < 0.0 || r < 0.0 || std::isnan(rho) || std::isnan(r)) {
    throw ParameterError("lens_area: rho and r must be >= 0");
  }
  if (r == 0.0) return 0.0;
  const double cutoff = support == LensSupport::kEdgeConstrained ? r : 2.0 * r;
  if (rho > cutoff || rho >= 2.0 * r) return 0.0;
  return 2.0 * r * r * std::acos(rho / (2.0 * r)) - 0.5 * rho * std::sqrt(4.0 * r * r - rho * rho);
}

double expected_moment_2d_closed(std::size_t n, double r, int k) {
  if (r < 0.0) throw ParameterError("expected_moment_2d_closed: r must be >= 0");
  const double nr2 = static_cast<double>(n) * r * r;
  switch (k) {
    case 2:
      return std::numbers::pi * nr2;
    case 3:
      return kTriangleCoefficient2d * nr2 * nr2;
    default:
      throw UnsupportedOrderError(fmt::format(
          "no closed form for the 2D moment of order {}; use expected_moment_2d_mc", k));
  }
}

WalkIntegralEstimate expected_moment_2d_mc(std::size_t n, double r, int k, std::size_t samples,
                                           std::uint64_t seed) {
  if (k < 3) throw ParameterError("expected_moment_2d_mc: k must be >= 3");
  if (samples < kMinWalkSamples2d) {
    throw ParameterError(fmt::format("expected_moment_2d_mc: need >= {} samples", kMinWalkSamples2d));
  }
  if (r < 0.0) throw ParameterError("expected_moment_2d_mc: r must be >= 0");

  // Integrate at unit radius; the coefficient is scale free.
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<double> block_sum(blocks, 0.0), block_sq(blocks, 0.0);
  const int free_steps = k - 2;
  const double two_pi = 2.0 * std::numbers::pi;

#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    double s = 0.0, sq = 0.0;
    const std::size_t end = std::min(samples, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      auto rng = stream(seed, i);
      double x = 0.0, y = 0.0;
      for (int j = 0; j < free_steps; ++j) {
        const double eta = std::sqrt(rng.uniform());
        const double phi = two_pi * rng.uniform();
        x += eta * std::cos(phi);
        y += eta * std::sin(phi);
      }
      const double a = lens_area(std::hypot(x, y), 1.0, LensSupport::kFullOverlap);
      s += a;
      sq += a * a;
    }
    block_sum[b] = s;
    block_sq[b] = sq;
  }
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    sum += block_sum[b];
    sum_sq += block_sq[b];
  }
  const double m = static_cast<double>(samples);
  const double mean = sum / m;
  const double var = std::max(0.0, sum_sq / m - mean * mean);
  // Each free step carries measure ∫ eta d eta d phi = pi r^2.
  const double scale = std::pow(std::numbers::pi, free_steps);

  WalkIntegralEstimate e;
  e.k = k;
  e.samples = samples;
  e.seed = seed;
  e.coefficient = scale * mean;
  e.std_error = scale * std::sqrt(var / (m - 1.0));
  const double nr2 = static_cast<double>(n) * r * r;
  const double growth = std::pow(nr2, k - 1);
  e.value = e.coefficient * growth;
  e.value_std_error = e.std_error * growth;
  return e;
}

nlohmann::json to_json(const WalkIntegralEstimate& e) {
  return {{"k", e.k},         {"coefficient", e.coefficient}, {"std_error", e.std_error},
          {"samples", e.samples}, {"seed", e.seed},            {"value", e.value},
          {"value_std_error", e.value_std_error}};
}

}  // namespace rgg
