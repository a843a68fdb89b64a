#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "rgg/torus.hpp"

namespace rgg {

using NodeId = std::uint32_t;

/// Parameters of G(chi_n; r) on the d-dimensional unit torus.
struct RggSpec {
  std::size_t n = 0;
  double r = 0.0;
  int d = 1;
  std::uint64_t seed = 0;

  /// Throws ParameterError unless n >= 1, d >= 1 and 0 < r < 0.5.
  void validate() const;
};

/// Immutable adjacency of one RGG realization. Neighbor lists are sorted,
/// symmetric and free of self-loops; stored in compressed-row form.
class Graph {
 public:
  Graph() = default;
  Graph(RggSpec spec, PointCloud positions, std::vector<std::size_t> offsets,
        std::vector<NodeId> neighbors);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const NodeId> neighbors(std::size_t i) const {
    return std::span<const NodeId>(neighbors_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
  }
  std::size_t degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  double mean_degree() const noexcept {
    return size() == 0 ? 0.0 : static_cast<double>(neighbors_.size()) / size();
  }
  std::size_t max_degree() const noexcept;

  const RggSpec& spec() const noexcept { return spec_; }
  const PointCloud& positions() const noexcept { return positions_; }
  std::span<const std::size_t> offsets() const noexcept { return offsets_; }
  std::span<const NodeId> adjacency() const noexcept { return neighbors_; }

  /// Sorted (i, j) pairs with i < j.
  std::vector<std::pair<NodeId, NodeId>> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_;
  }

 private:
  RggSpec spec_;
  PointCloud positions_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

/// Samples positions from spec.seed and connects every pair at torus
/// distance <= r (closed ball).
Graph build(const RggSpec& spec);

/// Same, on caller-supplied positions (spec.n and spec.d must match).
/// Uses periodic cell lists; falls back to all-pairs when fewer than three
/// cells fit per axis. Parallel over nodes.
Graph build(const RggSpec& spec, PointCloud positions);

/// Graph with the given positions and no edges.
Graph empty_graph(const RggSpec& spec, PointCloud positions);

/// Volume of the unit ball in R^d: pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(int d);

/// n * V^(d) * r^d.
double expected_degree(const RggSpec& spec);
double expected_degree(std::size_t n, double r, int d);

/// Radius giving a prescribed expected degree: (mean_degree / (n V^(d)))^{1/d}.
double radius_for_mean_degree(std::size_t n, double mean_degree, int d);

std::uint64_t count_triangles(const Graph& g);
std::vector<std::size_t> degree_sequence(const Graph& g);

/// Checks symmetry, sortedness, no self-loops and the distance rule
/// j in N_i <=> torus_distance(x_i, x_j) <= r. Throws ParameterError.
void validate_graph(const Graph& g);

/// Edge list: one `i j` per line, i < j, lexicographically sorted.
void write_edge_list(std::ostream& out, const Graph& g);
std::vector<std::pair<NodeId, NodeId>> read_edge_list(std::istream& in);

/// Rebuilds a Graph from replayed edges; validates against the positions.
Graph graph_from_edges(const RggSpec& spec, PointCloud positions,
                       std::span<const std::pair<NodeId, NodeId>> edges);

}  // namespace rgg
