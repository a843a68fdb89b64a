#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rgg/errors.hpp"
#include "rgg/graph.hpp"
#include "rgg/moments1d.hpp"
#include "rgg/random.hpp"
#include "rgg/spectral.hpp"

using namespace rgg;

namespace {

// Permutations of {1..n} with exactly k ascents, by enumeration.
std::uint64_t eulerian_by_permutations(int n, int k) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  std::uint64_t count = 0;
  do {
    int ascents = 0;
    for (int i = 0; i + 1 < n; ++i) ascents += p[i] < p[i + 1];
    count += ascents == k;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

// Vol(H_k) = 2^k P(|U_1 + ... + U_k| <= 1), U_i ~ U[-1,1], via the Irwin-Hall CDF.
double irwin_hall_volume(int k) {
  auto cdf = [k](long double x) {
    long double s = 0.0L, binom = 1.0L;
    for (int j = 0; j <= k && j <= x; ++j) {
      s += ((j % 2) ? -1.0L : 1.0L) * binom * std::pow(x - j, static_cast<long double>(k));
      binom = binom * (k - j) / (j + 1);
    }
    return s / std::tgamma(static_cast<long double>(k + 1));
  };
  const long double lo = (k - 1) / 2.0L, hi = (k + 1) / 2.0L;
  return static_cast<double>(std::pow(2.0L, static_cast<long double>(k)) * (cdf(hi) - cdf(lo)));
}

}  // namespace

TEST_CASE("Eulerian numbers") {
  CHECK(eulerian(0, 0) == 1);
  CHECK(eulerian(3, 0) == 1);
  CHECK(eulerian(3, 1) == 4);
  CHECK(eulerian(3, 2) == 1);
  CHECK(eulerian(4, 1) == 11);
  for (int n = 1; n <= 8; ++n)
    for (int k = 0; k < n; ++k) CHECK(eulerian(n, k) == eulerian_by_permutations(n, k));

  EulerianTable t(20);
  std::uint64_t factorial = 1;
  for (int n = 1; n <= 20; ++n) {
    factorial *= static_cast<std::uint64_t>(n);
    auto row = t.row(n);
    CHECK(std::accumulate(row.begin(), row.end(), std::uint64_t{0}) == factorial);
    for (int k = 0; k < n; ++k) {
      CHECK(t(n, k) == t(n, n - 1 - k));
      CHECK(t(n, k) == eulerian(n, k));
    }
  }
  CHECK_THROWS_AS(eulerian(21, 0), ParameterError);
  CHECK_THROWS_AS(eulerian(4, 4), ParameterError);
  CHECK_THROWS_AS(eulerian(-1, 0), ParameterError);
}

TEST_CASE("reference volume list") {
  auto ref = reference_volumes();
  REQUIRE(ref.order() == 10);
  CHECK(ref.value(1) == 2.0);
  CHECK(ref.value(2) == 3.0);
  CHECK(ref.value(3) == doctest::Approx(16.0 / 3.0));
  CHECK(ref.value(4) == doctest::Approx(9.58333).epsilon(1e-6));
  CHECK(ref.value(6) == doctest::Approx(32.70555).epsilon(1e-6));
  CHECK(ref.value(8) == doctest::Approx(115.947));
  CHECK_THROWS_AS(ref.value(11), UnsupportedOrderError);
  CHECK_THROWS_AS(ref.value(0), UnsupportedOrderError);
}

TEST_CASE("exact volumes agree with the Irwin-Hall oracle") {
  for (int k = 1; k <= kMaxClosedFormOrder; ++k) {
    auto v = evaluate_volume_formula(k, volume_formula_calibration().variant);
    CHECK(v == doctest::Approx(irwin_hall_volume(k)).epsilon(1e-12));
  }
}

TEST_CASE("formula calibration against the reference list") {
  const auto& cal = volume_formula_calibration();
  CHECK(cal.accepted);
  CHECK(cal.mismatched == std::vector<int>{9});
  CHECK(cal.matched == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 10});
  CHECK(!cal.variant.describe().empty());

  CHECK(volume_from_eulerian(1) == doctest::Approx(2.0));
  CHECK(volume_from_eulerian(3) == doctest::Approx(5.3333).epsilon(1e-4));
  CHECK(volume_from_eulerian(5) == doctest::Approx(17.6).epsilon(1e-5));
  CHECK(volume_from_eulerian(11) == doctest::Approx(irwin_hall_volume(11)).epsilon(1e-12));
  try {
    volume_from_eulerian(9);
    FAIL("expected FormulaMismatchError");
  } catch (const FormulaMismatchError& e) {
    CHECK(e.order() == 9);
    CHECK(e.formula_value() == doctest::Approx(irwin_hall_volume(9)));
    CHECK(e.reference_value() == doctest::Approx(220.3238));
  }
  CHECK_THROWS_AS(volume_from_eulerian(kMaxClosedFormOrder + 1), UnsupportedOrderError);
}

TEST_CASE("verified volume table") {
  auto t = verified_volumes();
  REQUIRE(t.order() == kMaxClosedFormOrder);
  auto v = t.values();
  for (int k = 1; k <= 10; ++k) {
    CHECK(v[k - 1] == doctest::Approx(reference_volumes().value(k)).epsilon(1e-3));
  }
  for (int k = 1; k <= t.order(); ++k) {
    if (k > 1) {
      const double ratio = v[k - 1] / v[k - 2];
      CHECK(ratio > 1.0);
      CHECK(ratio < 2.0);
    }
  }
  CHECK(t.entry(9).source == VolumeSource::kReferenceList);
  CHECK(t.entry(8).source == VolumeSource::kEulerianFormula);
  CHECK(to_json(t).size() == static_cast<std::size_t>(t.order()));
}

TEST_CASE("expected 1D moments") {
  CHECK(expected_moment_1d(1000, 0.01, 1).value == 0.0);
  CHECK(expected_moment_1d(1000, 0.01, 2).value == doctest::Approx(20.0));
  CHECK(expected_moment_1d(1000, 0.01, 3).value == doctest::Approx(300.0));
  auto m4 = expected_moment_1d(1000, 0.01, 4);
  CHECK(m4.value == doctest::Approx(5333.33).epsilon(1e-5));
  REQUIRE(m4.correction.has_value());
  CHECK(*m4.correction == doctest::Approx(400.0));
  CHECK(expected_moment_1d(0, 0.01, 3).value == 0.0);
  CHECK_FALSE(expected_moment_1d(1000, 0.01, 3).outside_connectivity_regime);
  CHECK(expected_moment_1d(1000, 0.001, 3).outside_connectivity_regime);

  CHECK_THROWS_AS(expected_moment_1d(1000, 0.01, kMaxClosedFormOrder + 2), UnsupportedOrderError);
  Moment1dOptions mc;
  mc.monte_carlo_fallback = true;
  mc.samples = 1'000'000;
  auto p = expected_moment_1d(100, 0.01, kMaxClosedFormOrder + 2, mc);
  CHECK(p.source == "monte-carlo");
  CHECK(p.std_error > 0.0);
  CHECK(std::abs(p.value - irwin_hall_volume(kMaxClosedFormOrder + 1)) < 4.0 * p.std_error);
  CHECK_THROWS_AS(expected_moment_1d(1000, 0.01, 0), ParameterError);
}

TEST_CASE("empirical 1D moments track the prediction") {
  std::vector<double> mean(4, 0.0);
  for (std::uint64_t s = 1; s <= 10; ++s) {
    auto m = moments_by_walks(build(RggSpec{1000, 0.01, 1, derive_seed(1, s)}), 4);
    for (int k = 0; k < 4; ++k) mean[k] += m[k] / 10.0;
  }
  CHECK(std::abs(mean[0]) < 1e-12);
  CHECK(mean[1] == doctest::Approx(20.0).epsilon(0.02));
  CHECK(mean[2] == doctest::Approx(300.0).epsilon(0.05));
  // Finite-n excess at k = 4 stays below the mean-degree-squared correction.
  const auto p4 = expected_moment_1d(1000, 0.01, 4);
  CHECK(mean[3] > p4.value);
  CHECK(mean[3] < p4.value + 3.0 * *p4.correction);
}
