#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rgg/moments1d.hpp"
#include "rgg/vendor_json.hpp"

namespace rgg {

/// Published growth constants for d = 1: Vol(H_k(1)) ~ 0.35 * 1.9192^k.
inline constexpr double kPublishedGrowthConstant1d = 1.9192;
inline constexpr double kPublishedGrowthPrefactor1d = 0.35;

/// Least-squares fit log V_k = log(beta) + k log(c).
struct GrowthFit {
  int d = 1;
  double beta = 0.0;
  double c = 0.0;
  int first_order = 0;
  int last_order = 0;
  double residual = 0.0;            // RMS of the log residuals
  std::vector<double> ratios;       // V_{k+1} / V_k over the range
  bool ratio_trend_rising = false;  // the last ratios still increase
  std::string note;

  nlohmann::json to_json() const;
};

/// Fits values[k - first_order] for k in [first_order, last_order]; needs at
/// least 4 consecutive orders and positive values.
GrowthFit fit_growth(std::span<const double> values, int first_order, int last_order, int d = 1);
GrowthFit fit_growth(const VolumeTable& volumes, int first_order, int last_order);

/// c_d n r^d.
double lambda_max_bound(std::size_t n, double r, int d, double c_d);

/// epsilon r^d n^{1 - delta} log n, the slack term of the asymptotic bound,
/// reported separately from lambda_max_bound.
double bound_slack(std::size_t n, double r, int d, double epsilon, double delta_exponent);

/// Compares a measured spectral radius with the bound.
struct BoundCheck {
  double bound = 0.0;
  double measured = 0.0;
  double expected_degree = 0.0;
  bool violated = false;               // measured > bound
  bool below_expected_degree = false;  // bound < n V^(d) r^d <= E[lambda_max]

  nlohmann::json to_json() const;
};

BoundCheck check_bound(std::size_t n, double r, int d, double c_d, double measured_lambda_max);

struct DesignResult {
  double r_max = 0.0;
  double delta = 0.0;
  double beta = 0.0;
  std::size_t n = 0;
  int d = 1;
  double c_d = 0.0;
  std::string c_d_provenance;
  bool realizable = true;  // r_max < 0.5

  nlohmann::json to_json() const;
};

/// r_max = (delta / (beta c_d n))^{1/d}.
DesignResult design_radius(std::size_t n, int d, double beta, double delta, double c_d,
                           std::string provenance = "user");

/// Growth constant for dimension d: 1.9192 for d = 1; for d = 2 fitted over
/// the Monte Carlo walk coefficients k = 2..6 (not a published value).
struct GrowthConstant {
  double c = 0.0;
  std::string provenance;
};
GrowthConstant default_growth_constant(int d, std::size_t samples = 1'000'000,
                                       std::uint64_t seed = 2);

struct SweepRow {
  double mean_degree_target = 0.0;
  std::uint64_t seed = 0;
  double r = 0.0;
  double lambda_max = 0.0;
  double bound = 0.0;
  double mean_degree = 0.0;
  bool violated = false;
};

/// For each target mean degree, `seeds` realizations with
/// r = (target / (n V^(d)))^{1/d} (r = target / 2n for d = 1). Realization
/// (target index t, s) uses graph seed derive_seed(master_seed, t * seeds + s).
/// Rows are sorted by (target, s). Violations are recorded, never thrown.
std::vector<SweepRow> bound_sweep(std::size_t n, int d, std::span<const double> degree_targets,
                                  int seeds, double c_d, std::uint64_t master_seed);

/// Columns: dbar,seed,lambda_max,bound,mean_degree,violated.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace rgg
