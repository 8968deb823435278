#include "clex/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "clex/exact1d.hpp"

namespace clex {

namespace {

enum Family : std::uint64_t { kU = 1, kRho = 2, kH = 3, kC = 4, kConv = 5, kNodal = 6 };

std::uint64_t stream_base(Family family, int order, int part = 0) {
  return (static_cast<std::uint64_t>(family) << 32) + (static_cast<std::uint64_t>(order) << 24) +
         (static_cast<std::uint64_t>(part) << 12);
}

void check_points(std::span<const Point> positions, int K) {
  if (positions.empty()) throw std::invalid_argument("at least one white point is required");
  if (K < 0) throw std::invalid_argument("order must be nonnegative");
  if (static_cast<int>(positions.size()) + K > kExhaustiveCap)
    throw EnumerationTooLarge("points plus order exceed the enumeration cap",
                              std::ldexp(1.0, pair_count(static_cast<int>(positions.size()) + K)));
}

CorrelationSeries graph_series(const Potential& p, std::span<const Point> positions, int K,
                               GraphClass cls, SeriesVariable variable, Family family,
                               const IntegrationOptions& options) {
  check_points(positions, K);
  const int n = static_cast<int>(positions.size());
  CorrelationSeries s;
  s.n_points = n;
  s.positions.assign(positions.begin(), positions.end());
  s.variable = variable;
  for (int k = 0; k <= K; ++k) {
    const auto graphs = enumerate_bicolored(n, k, cls).collect();
    const auto e = weighted_graph_sum(graphs, p, positions, options, 1.0 / factorial(k),
                                      stream_base(family, k));
    s.values.push_back(e.value);
    s.std_errors.push_back(e.std_error);
  }
  return s;
}

std::vector<Point> pair_points(double r) { return {Point{0.0, 0.0, 0.0}, Point{r, 0.0, 0.0}}; }

void set_partitions(int n, const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      visit(blocks);
      return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i].push_back(v);
      rec(v + 1);
      blocks[i].pop_back();
    }
    blocks.push_back({v});
    rec(v + 1);
    blocks.pop_back();
  };
  rec(0);
}

// Vertices: whites 0, 1, the joining vertex 2, then the blacks of `left`, then of `right`.
Graph glue(const Graph& left, const Graph& right) {
  const int j = left.black_count();
  const int l = right.black_count();
  Graph g(3 + j + l, 2);
  auto map_left = [](int v) { return v == 0 ? 0 : v == 1 ? 2 : v + 1; };
  auto map_right = [j](int v) { return v == 0 ? 2 : v == 1 ? 1 : v + 1 + j; };
  for (auto [a, b] : left.edges()) g.add_edge(map_left(a), map_left(b));
  for (auto [a, b] : right.edges()) g.add_edge(map_right(a), map_right(b));
  return g;
}

void check_ring(const Potential& p, std::span<const double> positions, double L) {
  if (p.dimension != 1) throw std::invalid_argument("grand-canonical oracle is one-dimensional");
  if (!(L > 0.0)) throw std::invalid_argument("ring length must be positive");
  if (positions.empty()) throw std::invalid_argument("at least one point is required");
}

// Integral over N ring coordinates of the Boltzmann factor of the whites plus N blacks.
double ring_boltzmann(const Potential& p, std::span<const double> whites, int N, double L) {
  CellProblem problem;
  problem.n_vertices = static_cast<int>(whites.size()) + N;
  problem.white_positions.assign(whites.begin(), whites.end());
  problem.ring_length = L;
  for (int j = 1; j < problem.n_vertices; ++j)
    for (int i = 0; i < j; ++i) problem.terms.push_back({i, j, PairFactor::Boltzmann});
  return integrate_cells(p, problem);
}

// Canonical integrals Q_N = int prod (1 + f) over N ring coordinates.
double ring_partition(const Potential& p, int N, double L) {
  if (N == 0) return 1.0;
  const double origin[] = {0.0};
  return L * ring_boltzmann(p, origin, N - 1, L);
}

}  // namespace

CorrelationSeries operator-(const CorrelationSeries& a, const CorrelationSeries& b) {
  if (a.variable != b.variable) throw std::domain_error("series variables differ");
  CorrelationSeries out = a;
  const int k = std::min(a.order(), b.order());
  out.values.resize(static_cast<std::size_t>(k) + 1);
  out.std_errors.resize(static_cast<std::size_t>(k) + 1);
  for (int i = 0; i <= k; ++i) {
    out.values[i] = a.values[i] - b.values[i];
    out.std_errors[i] = std::hypot(a.std_errors[i], b.std_errors[i]);
  }
  return out;
}

CorrelationSeries product(const CorrelationSeries& a, const CorrelationSeries& b) {
  if (a.variable != b.variable) throw std::domain_error("series variables differ");
  CorrelationSeries out;
  out.n_points = a.n_points + b.n_points;
  out.positions = a.positions;
  out.positions.insert(out.positions.end(), b.positions.begin(), b.positions.end());
  out.variable = a.variable;
  const int k = std::min(a.order(), b.order());
  out.values.assign(static_cast<std::size_t>(k) + 1, 0.0);
  out.std_errors.assign(static_cast<std::size_t>(k) + 1, 0.0);
  for (int i = 0; i <= k; ++i)
    for (int j = 0; i + j <= k; ++j) {
      out.values[i + j] += a.values[i] * b.values[j];
      out.std_errors[i + j] = std::hypot(out.std_errors[i + j],
                                         std::hypot(a.std_errors[i] * b.values[j],
                                                    a.values[i] * b.std_errors[j]));
    }
  return out;
}

CorrelationSeries u_n_activity(const Potential& p, std::span<const Point> positions, int K,
                               const IntegrationOptions& options) {
  return graph_series(p, positions, K, GraphClass::Connected, SeriesVariable::Activity, kU,
                      options);
}

CorrelationSeries rho_n_activity(const Potential& p, std::span<const Point> positions, int K,
                                 const IntegrationOptions& options) {
  return graph_series(p, positions, K, GraphClass::BlackToWhiteConnected,
                      SeriesVariable::Activity, kRho, options);
}

CorrelationSeries rho_n_from_u(const Potential& p, std::span<const Point> positions, int K,
                               const IntegrationOptions& options) {
  check_points(positions, K);
  const int n = static_cast<int>(positions.size());
  CorrelationSeries total;
  total.n_points = n;
  total.positions.assign(positions.begin(), positions.end());
  total.variable = SeriesVariable::Activity;
  total.values.assign(static_cast<std::size_t>(K) + 1, 0.0);
  total.std_errors.assign(static_cast<std::size_t>(K) + 1, 0.0);
  set_partitions(n, [&](const std::vector<std::vector<int>>& blocks) {
    CorrelationSeries term;
    bool first = true;
    for (const auto& block : blocks) {
      std::vector<Point> pts;
      for (int v : block) pts.push_back(positions[v]);
      auto u = u_n_activity(p, pts, K, options);
      term = first ? u : product(term, u);
      first = false;
    }
    for (int k = 0; k <= K; ++k) {
      total.values[k] += term.values[k];
      total.std_errors[k] = std::hypot(total.std_errors[k], term.std_errors[k]);
    }
  });
  return total;
}

CorrelationSeries h_n_density(const Potential& p, std::span<const Point> positions, int K,
                              const IntegrationOptions& options) {
  if (positions.size() < 2) throw std::invalid_argument("h^(n) needs at least two points");
  return graph_series(p, positions, K, GraphClass::ArticulationFree, SeriesVariable::Density, kH,
                      options);
}

CorrelationSeries c2_density(const Potential& p, double r, int K,
                             const IntegrationOptions& options) {
  const auto pts = pair_points(r);
  return graph_series(p, pts, K, GraphClass::Biconnected, SeriesVariable::Density, kC, options);
}

CorrelationSeries h2_density(const Potential& p, double r, int K,
                             const IntegrationOptions& options) {
  return h_n_density(p, pair_points(r), K, options);
}

OzResidual oz_residual_order(const Potential& p, int k, std::span<const double> r_grid,
                             const IntegrationOptions& options) {
  if (k < 0) throw std::invalid_argument("order must be nonnegative");
  if (k + 2 > kExhaustiveCap)
    throw EnumerationTooLarge("order exceeds the enumeration cap", std::ldexp(1.0, pair_count(k + 2)));
  OzResidual out;
  out.order = k;
  std::vector<Graph> glued;
  std::vector<double> weights;
  for (int j = 0; j < k; ++j) {
    const int l = k - 1 - j;
    const auto cs = enumerate_bicolored(2, j, GraphClass::Biconnected).collect();
    const auto hs = enumerate_bicolored(2, l, GraphClass::ArticulationFree).collect();
    for (const auto& c : cs)
      for (const auto& h : hs) {
        glued.push_back(glue(c, h));
        weights.push_back(1.0 / (factorial(j) * factorial(l)));
      }
  }
  for (double r : r_grid) {
    const auto h = h2_density(p, r, k, options);
    const auto c = c2_density(p, r, k, options);
    const auto pts = pair_points(r);
    CoefficientEstimate conv = CoefficientEstimate::exact(0.0);
    for (std::size_t i = 0; i < glued.size(); ++i)
      accumulate(conv, graph_weight(glued[i], p, pts, options, stream_base(kConv, k) + i),
                 weights[i]);
    const double res = h.values[k] - c.values[k] - conv.value;
    const double err = std::hypot(std::hypot(h.std_errors[k], c.std_errors[k]), conv.std_error);
    out.r.push_back(r);
    out.residual.push_back(res);
    out.std_error.push_back(err);
    out.max_abs = std::max(out.max_abs, std::abs(res));
    if (err > 0.0) out.max_sigma = std::max(out.max_sigma, std::abs(res) / err);
  }
  return out;
}

DerivativeRoute h2_derivative_route(const Potential& p, double r, int k,
                                    const IntegrationOptions& options) {
  if (k < 0 || k > 1) throw std::invalid_argument("derivative route is implemented for k <= 1");
  const auto pts = pair_points(r);
  DerivativeRoute out;
  out.articulation_free = h2_density(p, r, k, options).values[k];
  out.two_connected = c2_density(p, r, k, options).values[k];
  std::vector<Graph> nodal;
  for (const Graph& g : enumerate_bicolored(2, k, GraphClass::ArticulationFree))
    if ((nodal_vertices(g) & ~g.white_vertices()) != 0) nodal.push_back(g);
  out.nodal =
      weighted_graph_sum(nodal, p, pts, options, 1.0 / factorial(k), stream_base(kNodal, k)).value;
  return out;
}

std::vector<double> gc_correlation_series(const Potential& p, std::span<const double> positions,
                                          double L, int order) {
  check_ring(p, positions, L);
  if (order < 0 || order > 6) throw std::invalid_argument("series order must be in [0, 6]");
  // numerator a_N = I_N / N!, denominator q_N = Q_N / N!; quotient by long division.
  std::vector<double> a, q;
  for (int N = 0; N <= order; ++N) {
    a.push_back(ring_boltzmann(p, positions, N, L) / factorial(N));
    q.push_back(ring_partition(p, N, L) / factorial(N));
  }
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  for (int k = 0; k <= order; ++k) {
    double acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= q[j] * c[k - j];
    c[k] = acc / q[0];
  }
  return c;
}

double gc_correlation_oracle(const Potential& p, std::span<const double> positions, double z,
                             double L, int N_max) {
  check_ring(p, positions, L);
  if (N_max < 0 || N_max > 6) throw std::invalid_argument("N_max must be in [0, 6]");
  double num = 0.0;
  double den = 0.0;
  double zn = 1.0;
  for (int N = 0; N <= N_max; ++N) {
    num += zn * ring_boltzmann(p, positions, N, L) / factorial(N);
    den += zn * ring_partition(p, N, L) / factorial(N);
    zn *= z;
  }
  return std::pow(z, static_cast<double>(positions.size())) * num / den;
}

std::vector<double> c_abs_integrals(const Potential& p, int K, double dr,
                                    const IntegrationOptions& options) {
  if (p.dimension != 1) throw std::invalid_argument("c integrals are computed on the line");
  const auto support = p.support_radius();
  if (!support) throw std::invalid_argument("potential has unbounded support");
  if (!(dr > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  const double r_max = (K + 1) * *support;
  const int n = static_cast<int>(std::ceil(r_max / dr));
  std::vector<double> out(static_cast<std::size_t>(K) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    const double r = std::min(i * dr, r_max);
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    const auto c = c2_density(p, r, K, options);
    for (int k = 0; k <= K; ++k) out[k] += 2.0 * w * dr * std::abs(c.values[k]);
  }
  return out;
}

}  // namespace clex
