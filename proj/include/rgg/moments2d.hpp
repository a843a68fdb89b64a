#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>

#include "rgg/vendor_json.hpp"

namespace rgg {

/// Support of the lens integrand.
enum class LensSupport {
  kEdgeConstrained,  // 0 for rho > r, as in the published piecewise form
  kFullOverlap,      // geometric intersection of two radius-r disks, 0 for rho >= 2r
};

/// Area of the lens S(0, r) ∩ S(rho, r):
///   2 r^2 acos(rho / 2r) - (rho / 2) sqrt(4 r^2 - rho^2).
double lens_area(double rho, double r, LensSupport support = LensSupport::kEdgeConstrained);

/// (pi - 3 sqrt(3) / 4) pi: expected triangles per node over (n r^2)^2.
inline const double kTriangleCoefficient2d = (std::numbers::pi - 0.75 * std::numbers::sqrt3) * std::numbers::pi;

/// Published numerical value of the k = 4 coefficient.
inline constexpr double kPublishedFourWalkCoefficient2d = 14.2511;

/// E[m_2] = pi n r^2 and E[m_3] = kTriangleCoefficient2d (n r^2)^2.
/// Throws UnsupportedOrderError for other k.
double expected_moment_2d_closed(std::size_t n, double r, int k);

inline constexpr std::size_t kMinWalkSamples2d = 100'000;

/// Monte Carlo value of n^{k-1} ∫_{C_{k-2}} A_l(rho; r) prod eta_j d eta d phi.
struct WalkIntegralEstimate {
  int k = 0;
  double coefficient = 0.0;  // E[W^(k)] / (n r^2)^{k-1}
  double std_error = 0.0;    // of the coefficient
  double value = 0.0;        // coefficient * (n r^2)^{k-1}
  double value_std_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Steps are drawn with density proportional to eta on [0, r] (eta = r sqrt(u))
/// and phi uniform, which absorbs prod eta_j exactly; the integrand is the
/// full-overlap lens at the closing distance. Sample i uses stream(seed, i);
/// block partial sums are combined in a fixed order.
WalkIntegralEstimate expected_moment_2d_mc(std::size_t n, double r, int k, std::size_t samples,
                                           std::uint64_t seed);

nlohmann::json to_json(const WalkIntegralEstimate& e);

}  // namespace rgg
