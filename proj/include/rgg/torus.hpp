#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace rgg {

/// A point of the d-dimensional unit torus, coordinates in canonical [0,1).
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<double> coords);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

 private:
  std::vector<double> coords_;
};

/// n points of equal dimension stored row-major (point, then coordinate).
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(int dim, std::vector<double> coords, std::uint64_t seed = 0);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  int dim() const noexcept { return dim_; }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords_).subspan(i * dim_, dim_);
  }
  TorusPoint at(std::size_t i) const;
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
  std::uint64_t seed_ = 0;
};

/// n i.i.d. uniform points on [0,1)^d. Values are drawn from one SplitMix64
/// stream seeded with `seed`, in row-major order.
PointCloud sample_uniform(std::size_t n, int d, std::uint64_t seed);

/// Periodic Euclidean distance: per-axis min(|a-b|, 1-|a-b|), then the 2-norm.
double torus_distance(std::span<const double> a, std::span<const double> b);
double torus_distance(const TorusPoint& a, const TorusPoint& b);

/// CSV layout: one comment line `# dim=D,n=N,seed=S`, then one point per row
/// with comma-separated coordinates printed to 17 significant digits.
void write_points_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_points_csv(std::istream& in);

}  // namespace rgg
