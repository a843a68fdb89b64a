#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rgg/errors.hpp"
#include "rgg/random.hpp"
#include "rgg/torus.hpp"

using namespace rgg;

TEST_CASE("sample_uniform stays in the unit cube and is reproducible") {
  auto one = sample_uniform(1, 1, 42);
  REQUIRE(one.size() == 1);
  CHECK(one.point(0)[0] >= 0.0);
  CHECK(one.point(0)[0] < 1.0);

  auto a = sample_uniform(500, 3, 9);
  auto b = sample_uniform(500, 3, 9);
  CHECK(a == b);
  CHECK_FALSE(a == sample_uniform(500, 3, 10));
}

TEST_CASE("sample_uniform coordinate means obey the law of large numbers") {
  auto cloud = sample_uniform(1000, 2, 2024);
  const double sigma = 1.0 / std::sqrt(12.0 * 1000.0);
  for (int axis = 0; axis < 2; ++axis) {
    double sum = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) sum += cloud.point(i)[axis];
    const double mean = sum / 1000.0;
    CHECK(mean >= 0.45);
    CHECK(mean <= 0.55);
    CHECK(std::fabs(mean - 0.5) <= 3.0 * sigma);
  }
}

TEST_CASE("sample_uniform histogram is flat") {
  auto cloud = sample_uniform(100000, 1, 5);
  int bins[10] = {};
  for (double c : cloud.coords()) {
    REQUIRE(c >= 0.0);
    REQUIRE(c < 1.0);
    ++bins[static_cast<int>(c * 10)];
  }
  for (int b : bins) {
    CHECK(std::fabs(b / 1e5 - 0.10) <= 0.015);
  }
}

TEST_CASE("sample_uniform rejects bad sizes") {
  CHECK_THROWS_AS(sample_uniform(0, 1, 1), ParameterError);
  CHECK_THROWS_AS(sample_uniform(3, 0, 1), ParameterError);
}

TEST_CASE("torus_distance examples") {
  CHECK(torus_distance(TorusPoint({0.1}), TorusPoint({0.9})) == doctest::Approx(0.2));
  CHECK(torus_distance(TorusPoint({0.0, 0.0}), TorusPoint({0.5, 0.5})) ==
        doctest::Approx(std::sqrt(0.5)));
  TorusPoint p({0.3, 0.7, 0.1});
  CHECK(torus_distance(p, p) == 0.0);
  CHECK_THROWS_AS(torus_distance(TorusPoint({0.1}), TorusPoint({0.1, 0.2})), ParameterError);
}

TEST_CASE("TorusPoint enforces canonical coordinates") {
  CHECK_THROWS_AS(TorusPoint({1.0}), ParameterError);
  CHECK_THROWS_AS(TorusPoint({-0.01}), ParameterError);
  CHECK_THROWS_AS(TorusPoint(std::vector<double>{}), ParameterError);
}

TEST_CASE("torus_distance is a metric on random triples") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    const int d = 1 + trial % 4;
    auto draw = [&] {
      std::vector<double> c(d);
      for (double& x : c) x = rng.uniform();
      return TorusPoint(c);
    };
    auto a = draw(), b = draw(), c = draw();
    const double ab = torus_distance(a, b), bc = torus_distance(b, c), ac = torus_distance(a, c);
    CHECK(ab == torus_distance(b, a));
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(ab >= 0.0);
    CHECK(ab <= std::sqrt(static_cast<double>(d)) * 0.5 + 1e-15);
  }
}

TEST_CASE("point CSV round-trips bit-exactly") {
  auto cloud = sample_uniform(64, 3, 11);
  std::stringstream s;
  write_points_csv(s, cloud);
  CHECK(s.str().rfind("# dim=3,n=64,seed=11\n", 0) == 0);
  auto back = read_points_csv(s);
  CHECK(back == cloud);

  std::stringstream bad("0.1,0.2\n");
  CHECK_THROWS_AS(read_points_csv(bad), IoError);
}
