#include "rgg/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rgg/errors.hpp"
#include "rgg/moments2d.hpp"
#include "rgg/random.hpp"

namespace rgg::reference {

Graph build_brute_force(const RggSpec& spec, PointCloud positions) {
  spec.validate();
  if (positions.size() != spec.n || positions.dim() != spec.d) {
    throw ParameterError("positions do not match spec");
  }
  std::vector<std::vector<NodeId>> lists(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = i + 1; j < spec.n; ++j) {
      if (torus_distance(positions.point(i), positions.point(j)) <= spec.r) {
        lists[i].push_back(static_cast<NodeId>(j));
        lists[j].push_back(static_cast<NodeId>(i));
      }
    }
  }
  std::vector<std::size_t> offsets{0};
  std::vector<NodeId> flat;
  for (const auto& l : lists) {
    flat.insert(flat.end(), l.begin(), l.end());
    offsets.push_back(flat.size());
  }
  return Graph(spec, std::move(positions), std::move(offsets), std::move(flat));
}

std::vector<unsigned __int128> closed_walk_totals(const Graph& g, int max_order) {
  if (max_order < 1) throw ParameterError("max order must be >= 1");
  const std::size_t n = g.size();
  std::vector<unsigned __int128> totals(max_order, 0);
  std::vector<std::uint64_t> walks(n), next(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(walks.begin(), walks.end(), 0);
    walks[s] = 1;
    for (int k = 1; k <= max_order; ++k) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t u = 0; u < n; ++u) {
        if (walks[u] == 0) continue;
        for (NodeId v : g.neighbors(u)) {
          if (__builtin_add_overflow(next[v], walks[u], &next[v])) {
            throw OverflowError("walk count overflow");
          }
        }
      }
      std::swap(walks, next);
      totals[k - 1] += walks[s];
    }
  }
  return totals;
}

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (NodeId j : g.neighbors(i)) {
      if (j <= i) continue;
      for (NodeId k : g.neighbors(j)) {
        if (k <= j) continue;
        auto ni = g.neighbors(i);
        if (std::binary_search(ni.begin(), ni.end(), k)) ++total;
      }
    }
  }
  return total;
}

std::size_t volume_acceptances(int k, std::size_t samples, std::uint64_t seed) {
  std::size_t accepted = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    auto rng = stream(seed, i);
    double x = rng.uniform(-1.0, 1.0);
    for (int step = 1; step < k; ++step) x += rng.uniform(-1.0, 1.0);
    if (std::fabs(x) <= 1.0) ++accepted;
  }
  return accepted;
}

double walk_integral_sum_2d(int k, std::size_t samples, std::uint64_t seed) {
  constexpr std::size_t kBlock = 4096;
  double total = 0.0;
  for (std::size_t b = 0; b * kBlock < samples; ++b) {
    double s = 0.0;
    for (std::size_t i = b * kBlock; i < std::min(samples, (b + 1) * kBlock); ++i) {
      auto rng = stream(seed, i);
      double x = 0.0, y = 0.0;
      for (int j = 0; j < k - 2; ++j) {
        const double eta = std::sqrt(rng.uniform());
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        x += eta * std::cos(phi);
        y += eta * std::sin(phi);
      }
      s += lens_area(std::hypot(x, y), 1.0, LensSupport::kFullOverlap);
    }
    total += s;
  }
  return total;
}

std::size_t sis_step(const Graph& g, std::span<const double> p, double beta, double delta,
                     std::span<double> out) {
  std::size_t clamps = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double escape = 1.0;
    for (NodeId j : g.neighbors(i)) escape *= 1.0 - beta * p[j];
    double next = (1.0 - escape) + (1.0 - delta) * p[i];
    if (next > 1.0 || next < 0.0) ++clamps;
    out[i] = std::clamp(next, 0.0, 1.0);
  }
  return clamps;
}

}  // namespace rgg::reference
