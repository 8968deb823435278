#pragma once

#include <span>
#include <vector>

#include "clex/cluster.hpp"
#include "clex/series.hpp"

namespace clex {

// Per-order values of a correlation function at fixed white positions. Activity series
// read z^n sum_k values[k] z^k, density series read sum_k values[k] rho^k; values[k] is
// (1/k!) times the sum over graphs with k black vertices, so order 0 is the value of the
// single graph without blacks.
struct CorrelationSeries {
  int n_points = 0;
  std::vector<Point> positions;
  SeriesVariable variable = SeriesVariable::Activity;
  std::vector<double> values;
  std::vector<double> std_errors;

  int order() const noexcept { return static_cast<int>(values.size()) - 1; }
};

// Difference and Cauchy product; variables must match.
CorrelationSeries operator-(const CorrelationSeries& a, const CorrelationSeries& b);
CorrelationSeries product(const CorrelationSeries& a, const CorrelationSeries& b);

// Truncated correlations: connected graphs with the points as whites.
CorrelationSeries u_n_activity(const Potential& p, std::span<const Point> positions, int K,
                               const IntegrationOptions& options = {});
// Correlation functions: graphs in which every black reaches a white.
CorrelationSeries rho_n_activity(const Potential& p, std::span<const Point> positions, int K,
                                 const IntegrationOptions& options = {});
// Same series assembled from u over set partitions of the points.
CorrelationSeries rho_n_from_u(const Potential& p, std::span<const Point> positions, int K,
                               const IntegrationOptions& options = {});
// Articulation-free graphs, n >= 2 points.
CorrelationSeries h_n_density(const Potential& p, std::span<const Point> positions, int K,
                              const IntegrationOptions& options = {});
// 2-connected graphs with whites at 0 and r e_1.
CorrelationSeries c2_density(const Potential& p, double r, int K,
                             const IntegrationOptions& options = {});
CorrelationSeries h2_density(const Potential& p, double r, int K,
                             const IntegrationOptions& options = {});

struct OzResidual {
  int order = 0;
  std::vector<double> r;
  std::vector<double> residual;   // h_k - c_k - sum_j c_j * h_{k-1-j}
  std::vector<double> std_error;  // zero on the exact path
  double max_abs = 0.0;
  // max |residual| / std_error over points with nonzero error; 0 on the exact path.
  double max_sigma = 0.0;
};

// Convolutions are integrated as glued graphs with a black vertex joining the factors.
OzResidual oz_residual_order(const Potential& p, int k, std::span<const double> r_grid,
                             const IntegrationOptions& options = {});

struct DerivativeRoute {
  double articulation_free = 0.0;
  double two_connected = 0.0;
  double nodal = 0.0;
  double residual() const noexcept { return articulation_free - two_connected - nodal; }
};

// Order-k value of h^(2) split into 2-connected and nodal graphs (k <= 1).
DerivativeRoute h2_derivative_route(const Potential& p, double r, int k,
                                    const IntegrationOptions& options = {});

// Grand-canonical rho^(n) on a ring of length L (d = 1) with the particle sum truncated
// at N_max.
double gc_correlation_oracle(const Potential& p, std::span<const double> positions, double z,
                             double L, int N_max);
// z-series coefficients c_0..c_order of rho^(n) = z^n sum_k c_k z^k on the ring.
std::vector<double> gc_correlation_series(const Potential& p, std::span<const double> positions,
                                          double L, int order);

// Integral over the line of |c_k(r)| for k = 0..K, trapezoidal on a grid of spacing dr
// (d = 1, compact support).
std::vector<double> c_abs_integrals(const Potential& p, int K, double dr,
                                    const IntegrationOptions& options = {});

}  // namespace clex
