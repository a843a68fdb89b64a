#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgg/vendor_json.hpp"

namespace rgg {

/// Eulerian number E(n, k): permutations of {1..n} with exactly k ascents
/// (0-based, 0 <= k <= n-1). E(0, 0) = 1. Exact for n <= 20.
std::uint64_t eulerian(int n, int k);

/// Triangular table of E(n, k) for n = 0..order.
class EulerianTable {
 public:
  explicit EulerianTable(int order);
  int order() const noexcept { return order_; }
  std::uint64_t operator()(int n, int k) const;
  std::vector<std::uint64_t> row(int n) const;

 private:
  int order_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

enum class VolumeSource { kReferenceList, kEulerianFormula, kMonteCarlo };
std::string to_string(VolumeSource s);

struct VolumeEntry {
  int k = 0;
  double value = 0.0;
  VolumeSource source = VolumeSource::kReferenceList;
  double std_error = 0.0;  // nonzero only for Monte Carlo entries
};

/// Vol(H_k(1)) for k = 1..order(), ordered by k.
struct VolumeTable {
  std::vector<VolumeEntry> entries;

  int order() const noexcept { return static_cast<int>(entries.size()); }
  double value(int k) const;
  const VolumeEntry& entry(int k) const;
  std::vector<double> values() const;
};

/// The Lasserre-verified list H_1..H_10 as published.
VolumeTable reference_volumes();

/// Tolerance used when comparing a value against the published H_k: the
/// larger of 1e-6 relative and one unit in the last printed decimal (the
/// printed list is truncated, e.g. "115.947...").
double reference_tolerance(int k);

/// Parameterization of the published volume formula
///   Vol(H_k(1)) = prefactor(k) * sum_{j=1}^{k-1+upper_shift} C(k, j-1) E(k, j-1+eulerian_shift)
/// with 0-based E. The published form is eulerian_shift = 1, upper_shift = 0,
/// prefactor 2/k!.
struct VolumeFormulaVariant {
  enum class Prefactor { kTwoOverFactorial, kHalfOverFactorial };
  int eulerian_shift = 1;
  int upper_shift = 0;
  Prefactor prefactor = Prefactor::kTwoOverFactorial;

  std::string describe() const;
};

double evaluate_volume_formula(int k, const VolumeFormulaVariant& variant);

struct VolumeCalibration {
  VolumeFormulaVariant variant;
  std::vector<int> matched;     // orders reproduced within reference_tolerance
  std::vector<int> mismatched;  // orders where the variant disagrees with the list
  bool accepted = false;
};

/// Searches index shifts {-1,0,1} x {-1,0,1} and both prefactors, keeping the
/// variant that reproduces the most reference entries (first in search order
/// on ties). Accepted when at most one entry disagrees.
const VolumeCalibration& volume_formula_calibration();

/// Highest order the calibrated formula is offered for.
inline constexpr int kMaxClosedFormOrder = 12;

/// Vol(H_k(1)) from the calibrated Eulerian formula. Throws
/// FormulaMismatchError when the calibrated value disagrees with the
/// reference list at k (or no variant was accepted), ParameterError for
/// k < 1, UnsupportedOrderError for k > kMaxClosedFormOrder.
double volume_from_eulerian(int k);

/// Working table H_1..H_12: calibrated formula values where they agree with
/// the reference list, the published value where they do not, formula values
/// past the list.
VolumeTable verified_volumes();

struct MomentPrediction {
  int k = 0;
  double value = 0.0;       // leading-order expected moment
  std::string source;       // "exact", "closed-form", "monte-carlo"
  double std_error = 0.0;   // Monte Carlo only
  std::optional<double> correction;  // k = 4 only: mean degree squared
  bool outside_connectivity_regime = false;

  nlohmann::json to_json() const;
};

struct Moment1dOptions {
  bool monte_carlo_fallback = false;
  std::size_t samples = 10'000'000;
  std::uint64_t seed = 1;
};

/// E[m_k] for a 1D RGG: 0 for k = 1, 2nr for k = 2, (nr)^{k-1} Vol(H_{k-1}(1))
/// otherwise. For k = 4 the optional empirical correction (2nr)^2 for
/// degenerate walks is attached but not added. Throws UnsupportedOrderError
/// past the table unless the Monte Carlo fallback is enabled.
MomentPrediction expected_moment_1d(std::size_t n, double r, int k,
                                    const Moment1dOptions& options = {});

nlohmann::json to_json(const VolumeTable& t);

}  // namespace rgg
