#pragma once

// Serial reference kernels. Each mirrors an OpenMP kernel of the library
// without any threading; tests assert the parallel results equal these and
// the benchmark compares their timings.

#include <cstdint>
#include <span>
#include <vector>

#include "rgg/graph.hpp"

namespace rgg::reference {

/// O(n^2) all-pairs construction.
Graph build_brute_force(const RggSpec& spec, PointCloud positions);

std::vector<unsigned __int128> closed_walk_totals(const Graph& g, int max_order);

std::uint64_t count_triangles(const Graph& g);

/// Accepted chain count of the Vol(H_k(1)) oracle.
std::size_t volume_acceptances(int k, std::size_t samples, std::uint64_t seed);

/// Sum of lens areas (unit radius) of the 2D walk integral, block order.
double walk_integral_sum_2d(int k, std::size_t samples, std::uint64_t seed);

std::size_t sis_step(const Graph& g, std::span<const double> p, double beta, double delta,
                     std::span<double> out);

}  // namespace rgg::reference
