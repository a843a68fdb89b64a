#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rgg/graph.hpp"
#include "vendor_json.hpp"

namespace rgg {

enum class SpectralMethod { kEigen, kWalkTrace, kPowerIteration };

std::string to_string(SpectralMethod m);

/// Empirical moments m_1..m_K of A(G) plus the spectral radius.
struct SpectralSummary {
  std::vector<double> moments;  // moments[k-1] = m_k
  double lambda_max = 0.0;
  SpectralMethod method = SpectralMethod::kWalkTrace;         // how the moments were obtained
  SpectralMethod radius_method = SpectralMethod::kPowerIteration;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Exact closed-walk totals trace(A^k), k = 1..K, in 128-bit integers.
/// Throws OverflowError if a per-vertex walk count exceeds 64 bits.
std::vector<unsigned __int128> closed_walk_totals(const Graph& g, int max_order);

/// m_k = trace(A^k) / n via neighbor propagation from every start vertex.
/// Parallel over start vertices; the integer reduction makes the result
/// independent of the thread count.
std::vector<double> moments_by_walks(const Graph& g, int max_order);

/// m_k from a dense symmetric eigendecomposition. Throws SizeError when
/// n > max_nodes.
std::vector<double> moments_by_eigenvalues(const Graph& g, int max_order,
                                           std::size_t max_nodes = 4000);

/// All eigenvalues in ascending order (dense; same size cap).
std::vector<double> adjacency_eigenvalues(const Graph& g, std::size_t max_nodes = 4000);

struct PowerIterationOptions {
  double tol = 1e-8;
  std::size_t max_iterations = 100000;
};

struct RadiusResult {
  double lambda_max = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;  // ||Av - lambda v|| / ||v||
};

/// Perron eigenvalue of A by power iteration on A + I from a strictly
/// positive start vector. Stops once the Rayleigh quotient changes by less
/// than tol (relative). Throws ConvergenceError carrying the last estimate.
RadiusResult spectral_radius(const Graph& g, const PowerIterationOptions& opts = {});

/// Moments by walk counting and lambda_max by power iteration.
SpectralSummary summarize(const Graph& g, int max_order, const PowerIterationOptions& opts = {});

nlohmann::json to_json(const SpectralSummary& s);

}  // namespace rgg
