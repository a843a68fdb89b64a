#include "rgg/moments1d.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rgg/errors.hpp"
#include "rgg/polytope.hpp"

namespace rgg {

namespace {

constexpr int kMaxEulerianOrder = 20;  // 20! < 2^64

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
  return c;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct PublishedVolume {
  double value;
  double last_digit;  // 0 for exact or repeating decimals
};

// H_1..H_10 as printed; "5.333..." style repeating decimals stored exactly.
constexpr PublishedVolume kPublished[] = {
    {2.0, 0.0},          {3.0, 0.0},       {16.0 / 3.0, 0.0}, {115.0 / 12.0, 0.0},
    {17.6000, 1e-4},     {5887.0 / 180.0, 0.0}, {61.3587, 1e-4}, {115.947, 1e-3},
    {220.3238, 1e-4},    {420.825, 1e-3},
};
constexpr int kPublishedCount = static_cast<int>(std::size(kPublished));

bool matches_reference(int k, double value) {
  return std::fabs(value - kPublished[k - 1].value) <= reference_tolerance(k);
}

}  // namespace

std::uint64_t eulerian(int n, int k) {
  if (n < 0 || n > kMaxEulerianOrder) {
    throw ParameterError(fmt::format("eulerian: order n={} outside [0, {}]", n, kMaxEulerianOrder));
  }
  if (n == 0) {
    if (k != 0) throw ParameterError("eulerian: E(0,k) defined only for k = 0");
    return 1;
  }
  if (k < 0 || k > n - 1) {
    throw ParameterError(fmt::format("eulerian: index k={} outside [0, {}]", k, n - 1));
  }
  std::vector<std::uint64_t> row{1};  // n = 1
  for (int m = 2; m <= n; ++m) {
    std::vector<std::uint64_t> next(m, 0);
    for (int j = 0; j < m; ++j) {
      std::uint64_t left = j < m - 1 ? static_cast<std::uint64_t>(j + 1) * row[j] : 0;
      std::uint64_t right = j > 0 ? static_cast<std::uint64_t>(m - j) * row[j - 1] : 0;
      next[j] = left + right;
    }
    row = std::move(next);
  }
  return row[k];
}

EulerianTable::EulerianTable(int order) : order_(order) {
  if (order < 0 || order > kMaxEulerianOrder) {
    throw ParameterError(fmt::format("EulerianTable: order {} outside [0, {}]", order,
                                     kMaxEulerianOrder));
  }
  rows_.push_back({1});
  if (order >= 1) rows_.push_back({1});
  for (int m = 2; m <= order; ++m) {
    const auto& prev = rows_.back();
    std::vector<std::uint64_t> next(m, 0);
    for (int j = 0; j < m; ++j) {
      std::uint64_t left = j < m - 1 ? static_cast<std::uint64_t>(j + 1) * prev[j] : 0;
      std::uint64_t right = j > 0 ? static_cast<std::uint64_t>(m - j) * prev[j - 1] : 0;
      next[j] = left + right;
    }
    rows_.push_back(std::move(next));
  }
}

std::uint64_t EulerianTable::operator()(int n, int k) const {
  if (n < 0 || n > order_) throw ParameterError("EulerianTable: row out of range");
  const auto& r = rows_[n];
  if (k < 0 || k >= static_cast<int>(r.size())) throw ParameterError("EulerianTable: index out of range");
  return r[k];
}

std::vector<std::uint64_t> EulerianTable::row(int n) const {
  if (n < 0 || n > order_) throw ParameterError("EulerianTable: row out of range");
  return rows_[n];
}

std::string to_string(VolumeSource s) {
  switch (s) {
    case VolumeSource::kReferenceList:
      return "reference-list";
    case VolumeSource::kEulerianFormula:
      return "eulerian-formula";
    case VolumeSource::kMonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

const VolumeEntry& VolumeTable::entry(int k) const {
  if (k < 1 || k > order()) {
    throw UnsupportedOrderError(fmt::format("volume table has orders 1..{}, asked {}", order(), k));
  }
  return entries[k - 1];
}

double VolumeTable::value(int k) const { return entry(k).value; }

std::vector<double> VolumeTable::values() const {
  std::vector<double> v;
  for (const auto& e : entries) v.push_back(e.value);
  return v;
}

VolumeTable reference_volumes() {
  VolumeTable t;
  for (int k = 1; k <= kPublishedCount; ++k) {
    t.entries.push_back({k, kPublished[k - 1].value, VolumeSource::kReferenceList, 0.0});
  }
  return t;
}

double reference_tolerance(int k) {
  if (k < 1 || k > kPublishedCount) throw UnsupportedOrderError("no reference volume at this order");
  return std::max(1e-6 * kPublished[k - 1].value, kPublished[k - 1].last_digit);
}

std::string VolumeFormulaVariant::describe() const {
  auto offset = [](const char* base, int off) {
    return off == 0 ? std::string(base) : fmt::format("{}{:+d}", base, off);
  };
  return fmt::format("{} * sum_{{j=1}}^{{{}}} C(k,j-1) E(k,{}), E 0-based",
                     prefactor == Prefactor::kTwoOverFactorial ? "2/k!" : "1/(2 k!)",
                     offset("k", upper_shift - 1), offset("j", eulerian_shift - 1));
}

double evaluate_volume_formula(int k, const VolumeFormulaVariant& variant) {
  if (k < 1) throw ParameterError("volume formula needs k >= 1");
  if (k > kMaxEulerianOrder) throw UnsupportedOrderError("volume formula order too large");
  std::uint64_t sum = 0;
  const int upper = k - 1 + variant.upper_shift;
  for (int j = 1; j <= upper; ++j) {
    const int idx = j - 1 + variant.eulerian_shift;
    if (idx < 0 || idx > k - 1) continue;
    sum += binomial(k, j - 1) * eulerian(k, idx);
  }
  const double pre = variant.prefactor == VolumeFormulaVariant::Prefactor::kTwoOverFactorial
                         ? 2.0 / factorial(k)
                         : 0.5 / factorial(k);
  return pre * static_cast<double>(sum);
}

const VolumeCalibration& volume_formula_calibration() {
  static const VolumeCalibration calibration = [] {
    std::vector<VolumeFormulaVariant> candidates;
    for (auto pre : {VolumeFormulaVariant::Prefactor::kTwoOverFactorial,
                     VolumeFormulaVariant::Prefactor::kHalfOverFactorial}) {
      // Published indexing first, then increasing distance from it.
      for (int dist = 0; dist <= 4; ++dist) {
        for (int es = -1; es <= 1; ++es) {
          for (int us = -1; us <= 1; ++us) {
            if (std::abs(es - 1) + std::abs(us) == dist) candidates.push_back({es, us, pre});
          }
        }
      }
    }
    VolumeCalibration best;
    std::size_t best_score = 0;
    for (const auto& v : candidates) {
      VolumeCalibration c;
      c.variant = v;
      for (int k = 1; k <= kPublishedCount; ++k) {
        (matches_reference(k, evaluate_volume_formula(k, v)) ? c.matched : c.mismatched).push_back(k);
      }
      if (c.matched.size() > best_score) {
        best_score = c.matched.size();
        best = c;
      }
    }
    best.accepted = best.mismatched.size() <= 1;
    return best;
  }();
  return calibration;
}

double volume_from_eulerian(int k) {
  if (k < 1) throw ParameterError("volume_from_eulerian: k must be >= 1");
  if (k > kMaxClosedFormOrder) {
    throw UnsupportedOrderError(
        fmt::format("closed-form volumes offered up to k={}", kMaxClosedFormOrder));
  }
  const auto& cal = volume_formula_calibration();
  const double value = evaluate_volume_formula(k, cal.variant);
  if (k <= kPublishedCount) {
    const double ref = kPublished[k - 1].value;
    if (!cal.accepted || !matches_reference(k, value)) {
      throw FormulaMismatchError(
          fmt::format("Eulerian volume formula gives {:.10g} at k={}, reference list has {:.10g}",
                      value, k, ref),
          k, value, ref);
    }
  } else if (!cal.accepted) {
    throw FormulaMismatchError("no formula variant reproduces the reference list", k, value, 0.0);
  }
  return value;
}

VolumeTable verified_volumes() {
  VolumeTable t;
  for (int k = 1; k <= kMaxClosedFormOrder; ++k) {
    try {
      t.entries.push_back({k, volume_from_eulerian(k), VolumeSource::kEulerianFormula, 0.0});
    } catch (const FormulaMismatchError& e) {
      t.entries.push_back({k, e.reference_value(), VolumeSource::kReferenceList, 0.0});
    }
  }
  return t;
}

nlohmann::json MomentPrediction::to_json() const {
  nlohmann::json j{{"k", k},
                   {"value", value},
                   {"source", source},
                   {"std_error", std_error},
                   {"outside_connectivity_regime", outside_connectivity_regime}};
  if (correction) {
    j["empirical_correction"] = *correction;
    j["value_with_correction"] = value + *correction;
  }
  return j;
}

MomentPrediction expected_moment_1d(std::size_t n, double r, int k, const Moment1dOptions& options) {
  if (k < 1) throw ParameterError("expected_moment_1d: k must be >= 1");
  if (r < 0.0) throw ParameterError("expected_moment_1d: r must be >= 0");
  MomentPrediction p;
  p.k = k;
  const double nr = static_cast<double>(n) * r;
  p.outside_connectivity_regime = n > 1 && 2.0 * nr < std::log(static_cast<double>(n));
  if (k == 1) {
    p.source = "exact";
    return p;
  }
  if (k == 2) {
    p.value = 2.0 * nr;
    p.source = "exact";
    return p;
  }
  static const VolumeTable table = verified_volumes();
  const int order = k - 1;
  if (order <= table.order()) {
    p.value = std::pow(nr, order) * table.value(order);
    p.source = "closed-form";
  } else if (options.monte_carlo_fallback) {
    auto est = estimate_volume(order, options.samples, options.seed);
    p.value = std::pow(nr, order) * est.estimate;
    p.std_error = std::pow(nr, order) * est.std_error;
    p.source = "monte-carlo";
  } else {
    throw UnsupportedOrderError(fmt::format(
        "expected_moment_1d: k={} needs Vol(H_{}), table stops at {}; enable the Monte Carlo fallback",
        k, order, table.order()));
  }
  if (k == 4) p.correction = (2.0 * nr) * (2.0 * nr);
  return p;
}

nlohmann::json to_json(const VolumeTable& t) {
  auto arr = nlohmann::json::array();
  for (const auto& e : t.entries) {
    arr.push_back({{"k", e.k}, {"value", e.value}, {"source", to_string(e.source)},
                   {"std_error", e.std_error}});
  }
  return arr;
}

}  // namespace rgg
