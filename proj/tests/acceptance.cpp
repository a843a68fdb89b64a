// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "rgg/graph.hpp"
#include "rgg/moments1d.hpp"
#include "rgg/moments2d.hpp"
#include "rgg/polytope.hpp"
#include "rgg/radius_bound.hpp"
#include "rgg/random.hpp"
#include "rgg/reference.hpp"
#include "rgg/sis.hpp"
#include "rgg/spectral.hpp"

using namespace rgg;

namespace {

constexpr std::uint64_t kMasterSeed = 1;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

bool within(double value, double target, double rel) {
  return std::abs(value - target) <= rel * std::abs(target);
}

std::vector<double> mean_moments(std::size_t n, double r, int d, int seeds, int K) {
  std::vector<double> mean(K, 0.0);
  for (int s = 0; s < seeds; ++s) {
    auto m = moments_by_walks(build(RggSpec{n, r, d, derive_seed(kMasterSeed, s)}), K);
    for (int k = 0; k < K; ++k) mean[k] += m[k] / seeds;
  }
  return mean;
}

Outcome moments_1d() {
  Outcome o;
  auto m = mean_moments(1000, 0.01, 1, 10, 4);
  o.require(std::abs(m[0]) <= 1e-12, fmt::format("m1={:.3g} (|.|<=1e-12)", m[0]));
  o.require(within(m[1], 20.0, 0.02), fmt::format("m2={:.4f} (20 +-2%)", m[1]));
  o.require(within(m[2], 300.0, 0.06), fmt::format("m3={:.2f} (300 +-6%)", m[2]));
  o.require(within(m[3], 5733.0, 0.12), fmt::format("m4={:.1f} (5733 +-12%)", m[3]));
  return o;
}

Outcome moments_2d() {
  Outcome o;
  const double r = std::sqrt(50.0 / (std::numbers::pi * 1000.0));
  auto m = mean_moments(1000, r, 2, 10, 4);
  o.require(within(m[1], 50.0, 0.02), fmt::format("m2={:.4f} (50 +-2%)", m[1]));
  o.require(within(m[2], 1464.1, 0.06), fmt::format("m3={:.1f} (1464.1 +-6%)", m[2]));
  o.require(within(m[3], 59452.0, 0.12), fmt::format("m4={:.0f} (59452 +-12%)", m[3]));
  return o;
}

Outcome volumes() {
  Outcome o;
  auto ref = reference_volumes();
  for (int k = 1; k <= 8; ++k) {
    auto e = estimate_volume(k, 10'000'000, derive_seed(kMasterSeed, k));
    const double z = e.std_error > 0 ? std::abs(e.estimate - ref.value(k)) / e.std_error : 0.0;
    const bool ok = e.std_error > 0 ? z <= 3.0 : e.estimate == ref.value(k);
    o.require(ok, fmt::format("H{}={:.5f} z={:.2f}", k, e.estimate, z));
  }
  o.require(estimate_volume(1, kMinVolumeSamples, 1).estimate == 2.0, "H1 exactly 2");
  o.require(std::abs(volume_from_eulerian(2) / 4.0 - 0.75) < 1e-15, "k=2 acceptance 3/4");
  return o;
}

Outcome coefficients_2d() {
  Outcome o;
  const double r = std::sqrt(50.0 / (std::numbers::pi * 1000.0));
  auto k3 = expected_moment_2d_mc(1000, r, 3, 1'000'000, derive_seed(kMasterSeed, 1003));
  auto k4 = expected_moment_2d_mc(1000, r, 4, 1'000'000, derive_seed(kMasterSeed, 1004));
  o.require(within(k3.coefficient, kTriangleCoefficient2d, 0.01),
            fmt::format("k=3 coefficient {:.4f} ({:.4f} +-1%)", k3.coefficient, kTriangleCoefficient2d));
  o.require(within(k4.coefficient, 14.2511, 0.02),
            fmt::format("k=4 coefficient {:.4f} (14.2511 +-2%)", k4.coefficient));
  return o;
}

Outcome growth_fit() {
  Outcome o;
  auto fit = fit_growth(reference_volumes(), 1, 9);
  o.require(fit.c >= 1.85 && fit.c <= 1.97, fmt::format("c1={:.4f} in [1.85,1.97]", fit.c));
  o.require(fit.beta >= 0.25 && fit.beta <= 0.45, fmt::format("beta1={:.4f} in [0.25,0.45]", fit.beta));
  o.require(fit.ratio_trend_rising && !fit.note.empty(), "rising-ratio note present");
  return o;
}

Outcome epidemics() {
  Outcome o;
  int persisted = 0, died = 0;
  double lmin = 1e300, lmax = 0.0;
  std::string b_failures;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto g = build(RggSpec{1000, 0.005, 1, s});
    auto p0 = seed_infection(1000, 0.01, derive_seed(s, 1));
    const double lambda = spectral_radius(g).lambda_max;
    lmin = std::min(lmin, lambda);
    lmax = std::max(lmax, lambda);

    EpidemicParams a{0.020, 0.018, p0, 1000};
    persisted += simulate(g, a).outcome == EpidemicOutcome::kPersisted;

    EpidemicParams b{0.020, 0.35, p0, 2000};
    auto tb = simulate(g, b);
    if (tb.outcome == EpidemicOutcome::kDiedOut) {
      ++died;
    } else {
      auto last = tb.row(tb.rows() - 1);
      b_failures += fmt::format(" seed {}: {} (lambda={:.2f}, max p={:.2g})", s,
                                to_string(tb.outcome), lambda,
                                *std::max_element(last.begin(), last.end()));
    }
  }
  o.require(persisted >= 9, fmt::format("A persisted {}/10 (>=9)", persisted));
  o.require(died == 10, fmt::format("B died out {}/10 (=10){}", died, b_failures));
  o.require(lmin >= 10.0 && lmax <= 25.0,
            fmt::format("lambda_max in [{:.2f}, {:.2f}] within [10,25]", lmin, lmax));
  return o;
}

Outcome sweep() {
  Outcome o;
  std::vector<double> targets;
  for (int t = 10; t <= 100; t += 10) targets.push_back(t);
  auto rows = bound_sweep(1000, 1, targets, 5, kPublishedGrowthConstant1d, kMasterSeed);
  auto path = std::filesystem::temp_directory_path() / "rgg_acceptance_bound.csv";
  {
    std::ofstream f(path);
    write_sweep_csv(f, rows);
  }
  std::size_t lines = 0;
  {
    std::ifstream f(path);
    for (std::string l; std::getline(f, l);) ++lines;
  }
  std::size_t below = 0, wrong_flag = 0, violations = 0;
  for (const auto& r : rows) {
    below += r.lambda_max < r.mean_degree - 1e-9;
    wrong_flag += r.violated != (r.lambda_max > kPublishedGrowthConstant1d * 1000.0 * r.r);
    violations += r.violated;
  }
  o.require(lines == rows.size() + 1 && rows.size() == 50, fmt::format("CSV rows {}", rows.size()));
  o.require(below == 0, fmt::format("lambda_max < mean degree in {} rows", below));
  o.require(wrong_flag == 0, fmt::format("{} mis-flagged ({} violations)", wrong_flag, violations));
  return o;
}

Outcome properties() {
  Outcome o;
  // Moment paths agree.
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto g = build(RggSpec{500, 0.02, 1, s});
    auto w = moments_by_walks(g, 6);
    auto e = moments_by_eigenvalues(g, 6);
    for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(w[k] - e[k]) / std::max(1.0, std::abs(w[k])));
  }
  o.require(worst <= 1e-8, fmt::format("walk vs eigen moments {:.1e}", worst));

  // SIS fixed point and beta = 0 decay.
  auto g = build(RggSpec{500, 0.01, 1, 4});
  std::vector<double> zero(500, 0.0), out(500);
  step(g, zero, 0.3, 0.2, out);
  bool fixed = out == zero;
  auto p0 = seed_infection(500, 0.7, 4);
  auto t = simulate(g, EpidemicParams{0.0, 0.2, p0, 30});
  bool decay = t.rows() == 31;
  for (std::size_t i = 0; decay && i < 500; ++i) {
    double x = p0[i];
    for (std::size_t k = 1; k <= 30; ++k) {
      x *= 0.8;
      decay = decay && t.row(k)[i] == x;
    }
  }
  o.require(fixed && decay, "SIS zero fixed point and beta=0 decay exact");

  // Design and bound invert each other.
  double inv = 0.0;
  for (int d = 1; d <= 3; ++d)
    for (double delta : {0.05, 0.35, 0.9}) {
      auto res = design_radius(1000, d, 0.02, delta, 1.9192);
      inv = std::max(inv, std::abs(0.02 * lambda_max_bound(1000, res.r_max, d, 1.9192) - delta));
    }
  o.require(inv <= 1e-12, fmt::format("design/bound inversion {:.1e}", inv));

  // Cell-list construction equals brute force.
  int mismatches = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 3;
    RggSpec spec{100 + 13u * trial, 0.01 + 0.016 * trial, d, derive_seed(9, trial)};
    auto pts = sample_uniform(spec.n, d, spec.seed);
    mismatches += !(build(spec, pts) == reference::build_brute_force(spec, pts));
  }
  o.require(mismatches == 0, fmt::format("cell list vs brute force: {} mismatches", mismatches));
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "1D moment table", 60, moments_1d},
      {2, "2D moment table", 120, moments_2d},
      {3, "volume list by Monte Carlo", 120, volumes},
      {4, "2D walk coefficients", 120, coefficients_2d},
      {5, "growth fit", 60, growth_fit},
      {6, "epidemic scenarios", 600, epidemics},
      {7, "spectral-radius sweep", 600, sweep},
      {8, "property spot-checks", 600, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.require(false, fmt::format("runtime over {:.0f} s", c.budget_s));
    failed += !o.pass;
    fmt::print("{} {} {} [{:.2f} s]: {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
