#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rgg/graph.hpp"
#include "rgg/vendor_json.hpp"

namespace rgg {

/// Discrete-time SIS parameters; beta per edge per step, delta per step.
struct EpidemicParams {
  double beta = 0.0;
  double delta = 0.0;
  std::vector<double> p0;
  std::size_t steps = 1000;
  double die_out_threshold = 1e-6;

  void validate(std::size_t n) const;
};

enum class EpidemicOutcome { kDiedOut, kPersisted, kHorizonReached, kIndeterminate };
std::string to_string(EpidemicOutcome o);

/// Infection probabilities p[k][i], k = 0..rows()-1. The run stops at the
/// first step where max_i p_i < die_out_threshold.
struct Trajectory {
  std::size_t n = 0;
  std::vector<double> values;  // row-major, (rows x n)
  EpidemicOutcome outcome = EpidemicOutcome::kHorizonReached;
  std::optional<std::size_t> die_out_step;
  std::size_t clamp_count = 0;
  std::optional<double> lambda_max;  // computed when the horizon is reached

  std::size_t rows() const noexcept { return n == 0 ? 0 : values.size() / n; }
  std::span<const double> row(std::size_t k) const {
    return std::span<const double>(values).subspan(k * n, n);
  }
  std::vector<double> mean_per_step() const;

  nlohmann::json summary_json() const;
};

/// One update p_i <- [1 - prod_{j in N_i}(1 - beta p_j)] + (1 - delta) p_i,
/// clamped to [0,1]. Reads `p`, writes `out` (must not alias); returns the
/// number of clamped entries. Parallel over nodes.
std::size_t step(const Graph& g, std::span<const double> p, double beta, double delta,
                 std::span<double> out);

std::vector<double> step(const Graph& g, std::span<const double> p, const EpidemicParams& params);

/// Iterates `step` up to params.steps. Classification: died-out when
/// max_i p_i < threshold; otherwise at the horizon indeterminate when
/// |delta/beta - lambda_max| / lambda_max < 0.05, persisted when the 100-step
/// moving average of mean p is non-decreasing, horizon-reached otherwise.
Trajectory simulate(const Graph& g, const EpidemicParams& params);

struct ThresholdReport {
  double lambda_max = 0.0;
  double ratio = 0.0;  // delta / beta
  bool satisfied = false;
  std::size_t iterations = 0;

  nlohmann::json to_json() const;
};

/// lambda_max(A) < delta / beta.
ThresholdReport threshold_check(const Graph& g, double beta, double delta);

/// Entries level * U[0,1) from one SplitMix64 stream.
std::vector<double> seed_infection(std::size_t n, double level, std::uint64_t seed);

/// Rows = time steps, columns = nodes, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);

/// Binary PPM (P6): one pixel row per node, one column per time step.
/// Colors run blue (0) through cyan, green, yellow to red (1).
void write_heatmap_ppm(std::ostream& out, const Trajectory& t);

struct Rgb {
  std::uint8_t r, g, b;
};
Rgb heat_color(double value);

}  // namespace rgg
