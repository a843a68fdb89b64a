#include "rgg/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "rgg/errors.hpp"
#include "rgg/random.hpp"

namespace rgg {

namespace {

void check_coordinate(double c) {
  if (!(c >= 0.0 && c < 1.0)) {
    throw ParameterError(fmt::format("torus coordinate {} outside [0,1)", c));
  }
}

}  // namespace

TorusPoint::TorusPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ParameterError("torus point needs dimension >= 1");
  for (double c : coords_) check_coordinate(c);
}

PointCloud::PointCloud(int dim, std::vector<double> coords, std::uint64_t seed)
    : dim_(dim), coords_(std::move(coords)), seed_(seed) {
  if (dim_ < 1) throw ParameterError("point cloud dimension must be >= 1");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0) {
    throw ParameterError("coordinate count is not a multiple of the dimension");
  }
  for (double c : coords_) check_coordinate(c);
}

TorusPoint PointCloud::at(std::size_t i) const {
  auto p = point(i);
  return TorusPoint(std::vector<double>(p.begin(), p.end()));
}

PointCloud sample_uniform(std::size_t n, int d, std::uint64_t seed) {
  if (n < 1) throw ParameterError("sample_uniform: n must be >= 1");
  if (d < 1) throw ParameterError("sample_uniform: d must be >= 1");
  SplitMix64 rng(seed);
  std::vector<double> coords(n * static_cast<std::size_t>(d));
  for (double& c : coords) c = rng.uniform();
  return PointCloud(d, std::move(coords), seed);
}

double torus_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ParameterError(
        fmt::format("torus_distance: dimension mismatch ({} vs {})", a.size(), b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double delta = std::fabs(a[i] - b[i]);
    delta = std::min(delta, 1.0 - delta);
    sum += delta * delta;
  }
  return std::sqrt(sum);
}

double torus_distance(const TorusPoint& a, const TorusPoint& b) {
  return torus_distance(a.coords(), b.coords());
}

void write_points_csv(std::ostream& out, const PointCloud& cloud) {
  out << fmt::format("# dim={},n={},seed={}\n", cloud.dim(), cloud.size(), cloud.seed());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (c) out << ',';
      out << fmt::format("{:.17g}", p[c]);
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing point CSV");
}

PointCloud read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw IoError("point CSV: missing '# dim=...,n=...,seed=...' header");
  }
  int dim = 0;
  unsigned long long n = 0, seed = 0;
  if (std::sscanf(line.c_str(), "# dim=%d,n=%llu,seed=%llu", &dim, &n, &seed) != 3) {
    throw IoError("point CSV: malformed header: " + line);
  }
  std::vector<double> coords;
  coords.reserve(n * static_cast<std::size_t>(std::max(dim, 0)));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    int count = 0;
    while (std::getline(row, cell, ',')) {
      coords.push_back(std::stod(cell));
      ++count;
    }
    if (count != dim) throw IoError("point CSV: row with wrong number of coordinates");
  }
  if (coords.size() != n * static_cast<std::size_t>(dim)) {
    throw IoError("point CSV: row count does not match header");
  }
  return PointCloud(dim, std::move(coords), seed);
}

}  // namespace rgg
