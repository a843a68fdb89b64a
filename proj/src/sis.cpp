#include "rgg/sis.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "rgg/errors.hpp"
#include "rgg/random.hpp"
#include "rgg/spectral.hpp"

namespace rgg {

namespace {

constexpr std::size_t kMovingWindow = 100;
constexpr double kNearThreshold = 0.05;

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void EpidemicParams::validate(std::size_t n) const {
  if (!is_probability(beta)) throw ParameterError(fmt::format("beta={} outside [0,1]", beta));
  if (!is_probability(delta)) throw ParameterError(fmt::format("delta={} outside [0,1]", delta));
  if (p0.size() != n) {
    throw ParameterError(fmt::format("p0 has {} entries, graph has {} nodes", p0.size(), n));
  }
  for (double p : p0) {
    if (!is_probability(p)) throw ParameterError("initial probabilities must lie in [0,1]");
  }
  if (!(die_out_threshold > 0.0)) throw ParameterError("die-out threshold must be > 0");
}

std::string to_string(EpidemicOutcome o) {
  switch (o) {
    case EpidemicOutcome::kDiedOut:
      return "died-out";
    case EpidemicOutcome::kPersisted:
      return "persisted";
    case EpidemicOutcome::kHorizonReached:
      return "horizon-reached";
    case EpidemicOutcome::kIndeterminate:
      return "indeterminate";
  }
  return "unknown";
}

std::vector<double> Trajectory::mean_per_step() const {
  std::vector<double> m(rows(), 0.0);
  for (std::size_t k = 0; k < rows(); ++k) {
    auto r = row(k);
    double s = 0.0;
    for (double x : r) s += x;
    m[k] = s / static_cast<double>(n);
  }
  return m;
}

nlohmann::json Trajectory::summary_json() const {
  nlohmann::json j{{"outcome", to_string(outcome)},
                   {"steps_simulated", rows() == 0 ? 0 : rows() - 1},
                   {"clamp_count", clamp_count}};
  j["die_out_step"] = die_out_step ? nlohmann::json(*die_out_step) : nlohmann::json(nullptr);
  j["lambda_max"] = lambda_max ? nlohmann::json(*lambda_max) : nlohmann::json(nullptr);
  if (rows() > 0) {
    auto last = row(rows() - 1);
    j["final_max_p"] = *std::max_element(last.begin(), last.end());
    j["final_mean_p"] = mean_per_step().back();
  }
  return j;
}

std::size_t step(const Graph& g, std::span<const double> p, double beta, double delta,
                 std::span<double> out) {
  const std::size_t n = g.size();
  if (p.size() != n || out.size() != n) throw ParameterError("step: vector length != graph size");
  const auto count = static_cast<std::int64_t>(n);
  std::size_t clamps = 0;
#pragma omp parallel for schedule(static) reduction(+ : clamps)
  for (std::int64_t i = 0; i < count; ++i) {
    double escape = 1.0;
    for (NodeId j : g.neighbors(i)) escape *= 1.0 - beta * p[j];
    double next = (1.0 - escape) + (1.0 - delta) * p[i];
    if (next > 1.0) {
      next = 1.0;
      ++clamps;
    } else if (next < 0.0) {
      next = 0.0;
      ++clamps;
    }
    out[i] = next;
  }
  return clamps;
}

std::vector<double> step(const Graph& g, std::span<const double> p, const EpidemicParams& params) {
  for (double x : p) {
    if (!is_probability(x)) throw ParameterError("step: probabilities must lie in [0,1]");
  }
  std::vector<double> out(g.size());
  step(g, p, params.beta, params.delta, out);
  return out;
}

Trajectory simulate(const Graph& g, const EpidemicParams& params) {
  const std::size_t n = g.size();
  params.validate(n);
  Trajectory t;
  t.n = n;
  t.values.reserve((params.steps + 1) * n);
  t.values.insert(t.values.end(), params.p0.begin(), params.p0.end());

  auto died = [&](std::span<const double> p) {
    return p.empty() || *std::max_element(p.begin(), p.end()) < params.die_out_threshold;
  };
  if (died(params.p0)) {
    t.outcome = EpidemicOutcome::kDiedOut;
    t.die_out_step = 0;
    return t;
  }
  std::vector<double> current = params.p0, next(n);
  for (std::size_t k = 1; k <= params.steps; ++k) {
    t.clamp_count += step(g, current, params.beta, params.delta, next);
    std::swap(current, next);
    t.values.insert(t.values.end(), current.begin(), current.end());
    if (died(current)) {
      t.outcome = EpidemicOutcome::kDiedOut;
      t.die_out_step = k;
      return t;
    }
  }

  if (params.beta > 0.0) {
    const double lambda = spectral_radius(g).lambda_max;
    t.lambda_max = lambda;
    const double ratio = params.delta / params.beta;
    if (lambda > 0.0 && std::fabs(ratio - lambda) / lambda < kNearThreshold) {
      t.outcome = EpidemicOutcome::kIndeterminate;
      return t;
    }
  }
  // MA(h) - MA(h-1) = (mean[h] - mean[h - window]) / window.
  const auto means = t.mean_per_step();
  const std::size_t h = means.size() - 1;
  if (h >= kMovingWindow) {
    const double change = means[h] - means[h - kMovingWindow];
    const double tol = 1e-12 * std::max(1.0, std::fabs(means[h]));
    t.outcome = change >= -tol ? EpidemicOutcome::kPersisted : EpidemicOutcome::kHorizonReached;
  } else {
    t.outcome = EpidemicOutcome::kHorizonReached;
  }
  return t;
}

nlohmann::json ThresholdReport::to_json() const {
  return {{"lambda_max", lambda_max}, {"delta_over_beta", ratio}, {"satisfied", satisfied},
          {"iterations", iterations}};
}

ThresholdReport threshold_check(const Graph& g, double beta, double delta) {
  if (!(beta > 0.0)) throw ParameterError("threshold_check: beta must be > 0");
  auto radius = spectral_radius(g);
  ThresholdReport r;
  r.lambda_max = radius.lambda_max;
  r.iterations = radius.iterations;
  r.ratio = delta / beta;
  r.satisfied = r.lambda_max < r.ratio;
  return r;
}

std::vector<double> seed_infection(std::size_t n, double level, std::uint64_t seed) {
  if (!is_probability(level)) throw ParameterError("seed_infection: level must lie in [0,1]");
  SplitMix64 rng(seed);
  std::vector<double> p(n);
  for (double& x : p) x = level * rng.uniform();
  return p;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "step";
  for (std::size_t i = 0; i < t.n; ++i) out << ",p" << i;
  out << '\n';
  for (std::size_t k = 0; k < t.rows(); ++k) {
    out << k;
    for (double x : t.row(k)) out << ',' << fmt::format("{:.17g}", x);
    out << '\n';
  }
  if (!out) throw IoError("failed writing trajectory CSV");
}

Rgb heat_color(double v) {
  v = std::clamp(v, 0.0, 1.0);
  // Piecewise-linear "jet": blue, cyan, green, yellow, red.
  auto ramp = [](double x) { return static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(x, 0.0, 1.0))); };
  const double x = 4.0 * v;
  if (x < 1.0) return {0, ramp(x), 255};
  if (x < 2.0) return {0, 255, ramp(2.0 - x)};
  if (x < 3.0) return {ramp(x - 2.0), 255, 0};
  return {255, ramp(4.0 - x), 0};
}

void write_heatmap_ppm(std::ostream& out, const Trajectory& t) {
  const std::size_t width = t.rows();
  const std::size_t height = t.n;
  out << "P6\n" << width << ' ' << height << "\n255\n";
  std::vector<char> line(width * 3);
  for (std::size_t i = 0; i < height; ++i) {
    for (std::size_t k = 0; k < width; ++k) {
      auto c = heat_color(t.values[k * t.n + i]);
      line[3 * k] = static_cast<char>(c.r);
      line[3 * k + 1] = static_cast<char>(c.g);
      line[3 * k + 2] = static_cast<char>(c.b);
    }
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
  }
  if (!out) throw IoError("failed writing PPM heatmap");
}

}  // namespace rgg
