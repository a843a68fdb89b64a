#include "rgg/radius_bound.hpp"

#include <cmath>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "rgg/errors.hpp"
#include "rgg/graph.hpp"
#include "rgg/moments2d.hpp"
#include "rgg/random.hpp"
#include "rgg/spectral.hpp"

namespace rgg {

GrowthFit fit_growth(std::span<const double> values, int first_order, int last_order, int d) {
  const int count = last_order - first_order + 1;
  if (count < 4) throw ParameterError("fit_growth: need at least 4 consecutive orders");
  if (first_order < 1 || static_cast<std::size_t>(count) > values.size()) {
    throw ParameterError("fit_growth: order range outside the table");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < count; ++i) {
    if (!(values[i] > 0.0)) throw ParameterError("fit_growth: values must be positive");
    const double x = first_order + i;
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  const double slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / count;

  GrowthFit fit;
  fit.d = d;
  fit.first_order = first_order;
  fit.last_order = last_order;
  fit.c = std::exp(slope);
  fit.beta = std::exp(intercept);
  double ss = 0;
  for (int i = 0; i < count; ++i) {
    const double e = std::log(values[i]) - (intercept + slope * (first_order + i));
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / count);
  for (int i = 0; i + 1 < count; ++i) fit.ratios.push_back(values[i + 1] / values[i]);
  const auto nr = fit.ratios.size();
  fit.ratio_trend_rising = nr >= 3 && fit.ratios[nr - 1] > fit.ratios[nr - 2] &&
                           fit.ratios[nr - 2] > fit.ratios[nr - 3];
  if (fit.ratio_trend_rising) {
    fit.note = fmt::format(
        "consecutive ratios still rising at the end of the range (last {:.4f}); the fitted "
        "c={:.4f} underestimates the asymptotic growth rate",
        fit.ratios.back(), fit.c);
  }
  return fit;
}

GrowthFit fit_growth(const VolumeTable& volumes, int first_order, int last_order) {
  if (first_order < 1 || last_order > volumes.order()) {
    throw ParameterError("fit_growth: order range outside the volume table");
  }
  auto v = volumes.values();
  return fit_growth(std::span<const double>(v).subspan(first_order - 1), first_order, last_order, 1);
}

nlohmann::json GrowthFit::to_json() const {
  return {{"d", d},
          {"beta", beta},
          {"c", c},
          {"fit_range", {first_order, last_order}},
          {"residual", residual},
          {"ratios", ratios},
          {"ratio_trend_rising", ratio_trend_rising},
          {"note", note}};
}

double lambda_max_bound(std::size_t n, double r, int d, double c_d) {
  if (r < 0.0 || c_d < 0.0 || d < 1) throw ParameterError("lambda_max_bound: bad arguments");
  return c_d * static_cast<double>(n) * std::pow(r, d);
}

double bound_slack(std::size_t n, double r, int d, double epsilon, double delta_exponent) {
  if (n < 1) throw ParameterError("bound_slack: n must be >= 1");
  const double nd = static_cast<double>(n);
  return epsilon * std::pow(r, d) * std::pow(nd, 1.0 - delta_exponent) * std::log(nd);
}

BoundCheck check_bound(std::size_t n, double r, int d, double c_d, double measured) {
  BoundCheck c;
  c.bound = lambda_max_bound(n, r, d, c_d);
  c.measured = measured;
  c.expected_degree = expected_degree(n, r, d);
  c.violated = measured > c.bound;
  c.below_expected_degree = c.bound < c.expected_degree;
  return c;
}

nlohmann::json BoundCheck::to_json() const {
  return {{"bound", bound},
          {"measured_lambda_max", measured},
          {"expected_degree", expected_degree},
          {"violated", violated},
          {"bound_below_expected_degree", below_expected_degree}};
}

DesignResult design_radius(std::size_t n, int d, double beta, double delta, double c_d,
                           std::string provenance) {
  if (!(beta > 0.0)) throw ParameterError("design_radius: beta must be > 0");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ParameterError("design_radius: delta must be in [0,1]");
  if (n < 1 || d < 1) throw ParameterError("design_radius: n and d must be >= 1");
  if (!(c_d > 0.0)) throw ParameterError("design_radius: c_d must be > 0");
  DesignResult out;
  out.n = n;
  out.d = d;
  out.beta = beta;
  out.delta = delta;
  out.c_d = c_d;
  out.c_d_provenance = std::move(provenance);
  out.r_max = std::pow(delta / (beta * c_d * static_cast<double>(n)), 1.0 / d);
  out.realizable = out.r_max < 0.5;
  return out;
}

nlohmann::json DesignResult::to_json() const {
  return {{"r_max", r_max}, {"delta", delta}, {"beta", beta},
          {"n", n},         {"d", d},         {"c_d", c_d},
          {"c_d_provenance", c_d_provenance}, {"realizable", realizable},
          {"bound_at_r_max", lambda_max_bound(n, r_max, d, c_d)}};
}

GrowthConstant default_growth_constant(int d, std::size_t samples, std::uint64_t seed) {
  if (d == 1) return {kPublishedGrowthConstant1d, "published (d=1)"};
  if (d == 2) {
    std::vector<double> coeffs{std::numbers::pi};
    for (int k = 3; k <= 6; ++k) {
      coeffs.push_back(expected_moment_2d_mc(1, 1.0, k, samples, derive_seed(seed, k)).coefficient);
    }
    auto fit = fit_growth(coeffs, 2, 6, 2);
    return {fit.c, fmt::format("fitted over Monte Carlo walk coefficients k=2..6 "
                               "({} samples, seed {}), not a published value", samples, seed)};
  }
  throw ParameterError(fmt::format("no default growth constant for d={}; pass c_d explicitly", d));
}

std::vector<SweepRow> bound_sweep(std::size_t n, int d, std::span<const double> targets, int seeds,
                                  double c_d, std::uint64_t master_seed) {
  if (n < 1 || d < 1 || seeds < 0) throw ParameterError("bound_sweep: bad arguments");
  for (double t : targets) {
    if (t < 0.0) throw ParameterError("bound_sweep: mean degree targets must be >= 0");
  }
  const std::size_t total = targets.size() * static_cast<std::size_t>(seeds);
  std::vector<SweepRow> rows(total);
  std::vector<std::optional<std::string>> failures(total);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(total); ++idx) {
    const std::size_t t = idx / seeds;
    auto& row = rows[idx];
    row.mean_degree_target = targets[t];
    row.seed = derive_seed(master_seed, static_cast<std::uint64_t>(idx));
    row.r = radius_for_mean_degree(n, targets[t], d);
    row.bound = lambda_max_bound(n, row.r, d, c_d);
    try {
      RggSpec spec{n, row.r, d, row.seed};
      Graph g = row.r > 0.0 ? build(spec) : empty_graph(spec, sample_uniform(n, d, row.seed));
      row.mean_degree = g.mean_degree();
      row.lambda_max = spectral_radius(g).lambda_max;
      row.violated = row.lambda_max > row.bound;
    } catch (const std::exception& e) {
      failures[idx] = e.what();
    }
  }
  for (const auto& f : failures) {
    if (f) throw Error("bound_sweep realization failed: " + *f);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "dbar,seed,lambda_max,bound,mean_degree,violated\n";
  for (const auto& r : rows) {
    out << fmt::format("{:.17g},{},{:.17g},{:.17g},{:.17g},{}\n", r.mean_degree_target, r.seed,
                       r.lambda_max, r.bound, r.mean_degree, r.violated ? 1 : 0);
  }
  if (!out) throw IoError("failed writing sweep CSV");
}

}  // namespace rgg
