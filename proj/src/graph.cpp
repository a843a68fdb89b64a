#include "rgg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "rgg/errors.hpp"

namespace rgg {

void RggSpec::validate() const {
  if (n < 1) throw ParameterError("RGG needs n >= 1");
  if (d < 1) throw ParameterError("RGG needs dimension d >= 1");
  if (!(r > 0.0)) throw ParameterError(fmt::format("connectivity radius r={} must be > 0", r));
  if (!(r < 0.5)) {
    throw ParameterError(fmt::format(
        "connectivity radius r={} must be < 0.5 (the ball would overlap itself on the torus)", r));
  }
  if (n > static_cast<std::size_t>(UINT32_MAX)) throw ParameterError("n exceeds 32-bit node ids");
}

Graph::Graph(RggSpec spec, PointCloud positions, std::vector<std::size_t> offsets,
             std::vector<NodeId> neighbors)
    : spec_(spec),
      positions_(std::move(positions)),
      offsets_(std::move(offsets)),
      neighbors_(std::move(neighbors)) {
  if (offsets_.empty()) offsets_.push_back(0);
  if (offsets_.back() != neighbors_.size()) throw ParameterError("malformed adjacency offsets");
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t i = 0; i < size(); ++i) best = std::max(best, degree(i));
  return best;
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(edge_count());
  for (std::size_t i = 0; i < size(); ++i) {
    for (NodeId j : neighbors(i)) {
      if (j > i) out.emplace_back(static_cast<NodeId>(i), j);
    }
  }
  return out;
}

namespace {

Graph assemble(const RggSpec& spec, PointCloud positions,
               std::vector<std::vector<NodeId>>& lists) {
  std::vector<std::size_t> offsets(lists.size() + 1, 0);
  for (std::size_t i = 0; i < lists.size(); ++i) offsets[i + 1] = offsets[i] + lists[i].size();
  std::vector<NodeId> flat;
  flat.reserve(offsets.back());
  for (auto& l : lists) {
    flat.insert(flat.end(), l.begin(), l.end());
    std::vector<NodeId>().swap(l);
  }
  return Graph(spec, std::move(positions), std::move(offsets), std::move(flat));
}

void check_positions(const RggSpec& spec, const PointCloud& positions) {
  spec.validate();
  if (positions.size() != spec.n || positions.dim() != spec.d) {
    throw ParameterError(fmt::format("positions ({} points, d={}) do not match spec (n={}, d={})",
                                     positions.size(), positions.dim(), spec.n, spec.d));
  }
}

std::vector<std::vector<NodeId>> all_pairs(const RggSpec& spec, const PointCloud& pts) {
  const auto n = static_cast<std::int64_t>(spec.n);
  std::vector<std::vector<NodeId>> lists(spec.n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    auto pi = pts.point(i);
    for (std::int64_t j = 0; j < n; ++j) {
      if (j != i && torus_distance(pi, pts.point(j)) <= spec.r) {
        lists[i].push_back(static_cast<NodeId>(j));
      }
    }
  }
  return lists;
}

// Cells per axis: width 1/m >= r, total cell count bounded by ~4n.
int cells_per_axis(const RggSpec& spec) {
  auto m = static_cast<long long>(std::floor(1.0 / spec.r));
  const double cap = std::max(64.0, 4.0 * static_cast<double>(spec.n));
  const auto by_count = static_cast<long long>(std::floor(std::pow(cap, 1.0 / spec.d)));
  m = std::min(m, by_count);
  return static_cast<int>(std::max(m, 0LL));
}

std::vector<std::vector<NodeId>> cell_list(const RggSpec& spec, const PointCloud& pts, int m) {
  const int d = spec.d;
  std::size_t total_cells = 1;
  for (int a = 0; a < d; ++a) total_cells *= static_cast<std::size_t>(m);

  auto cell_coord = [m](double c) { return std::min(static_cast<int>(c * m), m - 1); };
  std::vector<std::size_t> cell_of(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    auto p = pts.point(i);
    std::size_t idx = 0;
    for (int a = d - 1; a >= 0; --a) idx = idx * m + cell_coord(p[a]);
    cell_of[i] = idx;
  }
  // Counting sort of nodes by cell.
  std::vector<std::size_t> start(total_cells + 1, 0);
  for (auto c : cell_of) ++start[c + 1];
  for (std::size_t c = 0; c < total_cells; ++c) start[c + 1] += start[c];
  std::vector<NodeId> members(spec.n);
  {
    auto fill = start;
    for (std::size_t i = 0; i < spec.n; ++i) members[fill[cell_of[i]]++] = static_cast<NodeId>(i);
  }

  std::size_t stencil_size = 1;
  for (int a = 0; a < d; ++a) stencil_size *= 3;

  const auto n = static_cast<std::int64_t>(spec.n);
  std::vector<std::vector<NodeId>> lists(spec.n);
#pragma omp parallel
  {
    std::vector<int> home(d), probe(d);
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
      auto pi = pts.point(i);
      for (int a = 0; a < d; ++a) home[a] = cell_coord(pi[a]);
      auto& out = lists[i];
      for (std::size_t s = 0; s < stencil_size; ++s) {
        std::size_t rest = s;
        for (int a = 0; a < d; ++a) {
          int off = static_cast<int>(rest % 3) - 1;
          rest /= 3;
          probe[a] = (home[a] + off + m) % m;
        }
        std::size_t idx = 0;
        for (int a = d - 1; a >= 0; --a) idx = idx * m + probe[a];
        for (std::size_t k = start[idx]; k < start[idx + 1]; ++k) {
          NodeId j = members[k];
          if (j != static_cast<NodeId>(i) && torus_distance(pi, pts.point(j)) <= spec.r) {
            out.push_back(j);
          }
        }
      }
      std::sort(out.begin(), out.end());
    }
  }
  return lists;
}

}  // namespace

Graph build(const RggSpec& spec) {
  spec.validate();
  return build(spec, sample_uniform(spec.n, spec.d, spec.seed));
}

Graph build(const RggSpec& spec, PointCloud positions) {
  check_positions(spec, positions);
  const int m = cells_per_axis(spec);
  auto lists = m < 3 ? all_pairs(spec, positions) : cell_list(spec, positions, m);
  return assemble(spec, std::move(positions), lists);
}

Graph empty_graph(const RggSpec& spec, PointCloud positions) {
  std::vector<std::size_t> offsets(positions.size() + 1, 0);
  return Graph(spec, std::move(positions), std::move(offsets), {});
}

double unit_ball_volume(int d) {
  if (d < 1) throw ParameterError("unit_ball_volume: d must be >= 1");
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double expected_degree(std::size_t n, double r, int d) {
  if (r < 0.0) throw ParameterError("expected_degree: r must be >= 0");
  return static_cast<double>(n) * unit_ball_volume(d) * std::pow(r, d);
}

double expected_degree(const RggSpec& spec) {
  spec.validate();
  return expected_degree(spec.n, spec.r, spec.d);
}

double radius_for_mean_degree(std::size_t n, double mean_degree, int d) {
  if (n < 1 || mean_degree < 0.0) throw ParameterError("radius_for_mean_degree: bad arguments");
  return std::pow(mean_degree / (static_cast<double>(n) * unit_ball_volume(d)), 1.0 / d);
}

std::uint64_t count_triangles(const Graph& g) {
  const auto n = static_cast<std::int64_t>(g.size());
  std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total)
  for (std::int64_t i = 0; i < n; ++i) {
    auto ni = g.neighbors(i);
    for (NodeId j : ni) {
      if (j <= i) continue;
      auto nj = g.neighbors(j);
      // Count common neighbors k > j.
      auto a = std::upper_bound(ni.begin(), ni.end(), j);
      auto b = std::upper_bound(nj.begin(), nj.end(), j);
      while (a != ni.end() && b != nj.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++total;
          ++a;
          ++b;
        }
      }
    }
  }
  return total;
}

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = g.degree(i);
  return out;
}

void validate_graph(const Graph& g) {
  const auto& pts = g.positions();
  if (pts.size() != g.size()) throw ParameterError("graph/positions size mismatch");
  const double r = g.spec().r;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto ni = g.neighbors(i);
    if (!std::is_sorted(ni.begin(), ni.end()) ||
        std::adjacent_find(ni.begin(), ni.end()) != ni.end()) {
      throw ParameterError(fmt::format("neighbor list of {} not strictly sorted", i));
    }
    for (NodeId j : ni) {
      if (j == i) throw ParameterError(fmt::format("self-loop at {}", i));
      if (j >= g.size()) throw ParameterError("neighbor id out of range");
      auto nj = g.neighbors(j);
      if (!std::binary_search(nj.begin(), nj.end(), static_cast<NodeId>(i))) {
        throw ParameterError(fmt::format("edge {}-{} not symmetric", i, j));
      }
      if (torus_distance(pts.point(i), pts.point(j)) > r) {
        throw ParameterError(fmt::format("edge {}-{} longer than r", i, j));
      }
    }
    // Degree must equal the number of points within r.
    std::size_t within = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (j != i && torus_distance(pts.point(i), pts.point(j)) <= r) ++within;
    }
    if (within != ni.size()) throw ParameterError(fmt::format("node {} misses neighbors", i));
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
  if (!out) throw IoError("failed writing edge list");
}

std::vector<std::pair<NodeId, NodeId>> read_edge_list(std::istream& in) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    unsigned long i = 0, j = 0;
    if (std::sscanf(line.c_str(), "%lu %lu", &i, &j) != 2) {
      throw IoError("edge list: malformed line: " + line);
    }
    if (i >= j) throw IoError("edge list: expected i < j on line: " + line);
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  }
  return edges;
}

Graph graph_from_edges(const RggSpec& spec, PointCloud positions,
                       std::span<const std::pair<NodeId, NodeId>> edges) {
  check_positions(spec, positions);
  std::vector<std::vector<NodeId>> lists(spec.n);
  for (auto [i, j] : edges) {
    if (j >= spec.n) throw ParameterError("edge endpoint out of range");
    lists[i].push_back(j);
    lists[j].push_back(i);
  }
  for (auto& l : lists) std::sort(l.begin(), l.end());
  Graph g = assemble(spec, std::move(positions), lists);
  validate_graph(g);
  return g;
}

}  // namespace rgg
