#include "rgg/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "rgg/errors.hpp"

namespace rgg {

std::string to_string(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::kEigen:
      return "eigen";
    case SpectralMethod::kWalkTrace:
      return "walk-trace";
    case SpectralMethod::kPowerIteration:
      return "power-iteration";
  }
  return "unknown";
}

std::vector<unsigned __int128> closed_walk_totals(const Graph& g, int max_order) {
  if (max_order < 1) throw ParameterError("walk moments need max order K >= 1");
  const std::size_t n = g.size();
  std::vector<unsigned __int128> totals(max_order, 0);
  std::atomic<bool> overflow{false};

#pragma omp parallel
  {
    std::vector<unsigned __int128> local(max_order, 0);
    // Sparse propagation: `walks` holds the number of walks of the current
    // length from the start vertex, `active` the vertices where it is nonzero.
    std::vector<std::uint64_t> walks(n, 0), next(n, 0);
    std::vector<NodeId> active, next_active;

#pragma omp for schedule(dynamic, 16)
    for (std::int64_t start = 0; start < static_cast<std::int64_t>(n); ++start) {
      if (overflow.load(std::memory_order_relaxed)) continue;
      active.assign(1, static_cast<NodeId>(start));
      walks[start] = 1;
      for (int k = 1; k <= max_order; ++k) {
        if (k == max_order) {
          // Only the return count is needed on the last step.
          std::uint64_t back = 0;
          for (NodeId v : g.neighbors(start)) {
            if (__builtin_add_overflow(back, walks[v], &back)) overflow = true;
          }
          local[k - 1] += back;
          break;
        }
        next_active.clear();
        for (NodeId u : active) {
          const std::uint64_t w = walks[u];
          for (NodeId v : g.neighbors(u)) {
            if (next[v] == 0) next_active.push_back(v);
            if (__builtin_add_overflow(next[v], w, &next[v])) overflow = true;
          }
        }
        for (NodeId u : active) walks[u] = 0;
        std::swap(walks, next);
        std::swap(active, next_active);
        local[k - 1] += walks[start];
      }
      for (NodeId u : active) walks[u] = 0;
    }
#pragma omp critical(rgg_walk_totals)
    for (int k = 0; k < max_order; ++k) totals[k] += local[k];
  }
  if (overflow) {
    throw OverflowError(fmt::format(
        "closed-walk counts overflow 64 bits at order <= {}; lower K", max_order));
  }
  return totals;
}

std::vector<double> moments_by_walks(const Graph& g, int max_order) {
  auto totals = closed_walk_totals(g, max_order);
  std::vector<double> m(max_order, 0.0);
  if (g.size() == 0) return m;
  for (int k = 0; k < max_order; ++k) {
    m[k] = static_cast<double>(static_cast<long double>(totals[k]) /
                               static_cast<long double>(g.size()));
  }
  return m;
}

std::vector<double> adjacency_eigenvalues(const Graph& g, std::size_t max_nodes) {
  const std::size_t n = g.size();
  if (n > max_nodes) {
    throw SizeError(fmt::format(
        "dense eigensolve capped at n={} (graph has {}); use moments_by_walks", max_nodes, n));
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(i)) a(i, j) = 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw ConvergenceError("dense eigensolve failed", 0.0);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<double> moments_by_eigenvalues(const Graph& g, int max_order, std::size_t max_nodes) {
  if (max_order < 1) throw ParameterError("eigenvalue moments need max order K >= 1");
  auto ev = adjacency_eigenvalues(g, max_nodes);
  std::vector<double> m(max_order, 0.0);
  if (ev.empty()) return m;
  for (int k = 1; k <= max_order; ++k) {
    long double sum = 0.0L;
    for (double l : ev) sum += std::pow(static_cast<long double>(l), k);
    m[k - 1] = static_cast<double>(sum / ev.size());
  }
  return m;
}

namespace {

void multiply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  const auto n = static_cast<std::int64_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (NodeId j : g.neighbors(i)) s += x[j];
    y[i] = s;
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

RadiusResult spectral_radius(const Graph& g, const PowerIterationOptions& opts) {
  if (!(opts.tol > 0.0)) throw ParameterError("spectral_radius: tol must be > 0");
  const std::size_t n = g.size();
  RadiusResult result;
  if (n == 0 || g.edge_count() == 0) return result;

  std::vector<double> v(n), av(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = 1.0 + 1e-3 * static_cast<double>((i * 7919) % 101) / 101.0;
  }
  double norm = std::sqrt(dot(v, v));
  for (double& x : v) x /= norm;

  double lambda = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    multiply(g, v, av);
    const double next = dot(v, av);  // Rayleigh quotient, ||v|| = 1
    result.iterations = it;
    const bool converged = it > 1 && std::fabs(next - lambda) <= opts.tol * std::fabs(next);
    lambda = next;
    if (converged) {
      double res = 0.0;
      for (std::size_t i = 0; i < n; ++i) res += (av[i] - lambda * v[i]) * (av[i] - lambda * v[i]);
      result.lambda_max = lambda;
      result.residual = std::sqrt(res);
      return result;
    }
    // Shifted step v <- (A + I) v keeps the Perron value strictly dominant
    // even when a bipartite component has -lambda_max in its spectrum.
    for (std::size_t i = 0; i < n; ++i) av[i] += v[i];
    norm = std::sqrt(dot(av, av));
    for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / norm;
  }
  throw ConvergenceError(
      fmt::format("power iteration did not converge in {} iterations (estimate {})",
                  opts.max_iterations, lambda),
      lambda);
}

SpectralSummary summarize(const Graph& g, int max_order, const PowerIterationOptions& opts) {
  SpectralSummary s;
  s.moments = moments_by_walks(g, max_order);
  s.method = SpectralMethod::kWalkTrace;
  auto radius = spectral_radius(g, opts);
  s.lambda_max = radius.lambda_max;
  s.radius_method = SpectralMethod::kPowerIteration;
  s.iterations = radius.iterations;
  s.residual = radius.residual;
  return s;
}

nlohmann::json to_json(const SpectralSummary& s) {
  return {{"moments", s.moments},       {"lambda_max", s.lambda_max},
          {"method", to_string(s.method)}, {"radius_method", to_string(s.radius_method)},
          {"iterations", s.iterations}, {"residual", s.residual}};
}

}  // namespace rgg
