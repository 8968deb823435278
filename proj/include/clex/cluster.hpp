#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "clex/catalog.hpp"
#include "clex/estimate.hpp"
#include "clex/graph.hpp"
#include "clex/montecarlo.hpp"
#include "clex/potential.hpp"

namespace clex {

enum class IntegrationMethod { Auto, Exact1D, MonteCarlo };

struct IntegrationOptions {
  IntegrationMethod method = IntegrationMethod::Auto;
  McOptions mc;
  CoefficientTable* table = nullptr;
};

// Positions use the first p.dimension coordinates of each point.
double phi_value(const Potential& p, std::span<const Point> points);
// Sum over connected graphs on the points of the product of f (n <= 7).
double phi_T_value(const Potential& p, std::span<const Point> points);
// Same quantity from the set recursion phi(S) = sum over partitions of prod phi_T.
double phi_T_recursive(const Potential& p, std::span<const Point> points);
// Sum over spanning trees of the product of fbar (matrix-tree theorem).
double tree_sum_fbar(const Potential& p, std::span<const Point> points);
double graph_product(const Graph& g, const Potential& p, std::span<const Point> points);

// Exact integral of the product of f over edges, whites pinned at `roots`. On a ring the
// normalized measure dx/L is used when `normalized` is set.
CoefficientEstimate graph_weight_exact_1d(const Graph& g, const Potential& p,
                                          std::span<const double> roots,
                                          std::optional<double> ring_length = std::nullopt,
                                          bool normalized = false);

// Chooses the exact path in one dimension when possible, Monte Carlo otherwise. The
// stream index decorrelates Monte Carlo seeds across graphs of one sum.
CoefficientEstimate graph_weight(const Graph& g, const Potential& p, std::span<const Point> roots,
                                 const IntegrationOptions& options, std::uint64_t stream = 0);

bool uses_exact_path(const Potential& p, const IntegrationOptions& options);

// b_n: (1/n!) sum over connected graphs on n vertices, vertex 0 at the origin.
CoefficientEstimate mayer_b_n(const Potential& p, int n, const IntegrationOptions& options = {});
// beta_n: (1/n!) sum over 2-connected graphs on n + 1 vertices, vertex 0 at the origin.
CoefficientEstimate irreducible_beta_n(const Potential& p, int n,
                                       const IntegrationOptions& options = {});
// a_m: integral of the inversion kernel A_m(0; x_1..x_m) over x, i.e. minus the sum over
// graphs on {0..m} whose restriction to [m] is connected and with vertex 0 adjacent to [m].
CoefficientEstimate activity_kernel(const Potential& p, int m,
                                    const IntegrationOptions& options = {});

std::vector<CoefficientEstimate> cluster_table(const Potential& p, int max_order,
                                               const IntegrationOptions& options = {});
std::vector<CoefficientEstimate> irreducible_table(const Potential& p, int max_order,
                                                   const IntegrationOptions& options = {});

// Sum of w(g) over the given graphs, each scaled by `scale`.
CoefficientEstimate weighted_graph_sum(std::span<const Graph> graphs, const Potential& p,
                                       std::span<const Point> roots,
                                       const IntegrationOptions& options, double scale = 1.0,
                                       std::uint64_t stream_base = 0);

double factorial(int n);

}  // namespace clex
