#include "clex/cluster.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "clex/exact1d.hpp"

namespace clex {

namespace {

std::vector<double> pair_values(const Potential& p, std::span<const Point> points, bool bar) {
  const auto n = points.size();
  std::vector<double> f(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = distance(points[i], points[j], p.dimension);
      f[i * n + j] = f[j * n + i] = bar ? mayer_fbar(p, r) : mayer_f(p, r);
    }
  return f;
}

double determinant(std::vector<double> a, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double m = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= m * a[c * n + k];
    }
  }
  return det;
}

std::string method_tag(const Potential& p, const IntegrationOptions& options) {
  if (uses_exact_path(p, options)) return "exact";
  return "mc";
}

template <class Compute>
CoefficientEstimate cached(const Potential& p, int order, CoefficientKind kind,
                           const IntegrationOptions& options, Compute&& compute) {
  CoefficientKey key{p.content_hash(), p.beta, order, kind, method_tag(p, options)};
  if (options.table)
    if (auto hit = options.table->find(key)) return *hit;
  CoefficientEstimate e = compute();
  if (options.table) options.table->insert(key, e);
  return e;
}

const Point kOrigin{0.0, 0.0, 0.0};

}  // namespace

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double phi_value(const Potential& p, std::span<const Point> points) {
  const auto n = points.size();
  double phi = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      phi *= p.boltzmann(distance(points[i], points[j], p.dimension));
  return phi;
}

double graph_product(const Graph& g, const Potential& p, std::span<const Point> points) {
  double w = 1.0;
  for (auto [i, j] : g.edges()) w *= mayer_f(p, distance(points[i], points[j], p.dimension));
  return w;
}

double phi_T_value(const Potential& p, std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  const auto f = pair_values(p, points, false);
  double total = 0.0;
  for (const Graph& g : enumerate(n, GraphClass::Connected)) {
    double w = 1.0;
    for (auto [i, j] : g.edges()) w *= f[static_cast<std::size_t>(i * n + j)];
    total += w;
  }
  return total;
}

double phi_T_recursive(const Potential& p, std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  if (n == 0) return 0.0;
  if (n > kMaxVertices) throw std::invalid_argument("too many points");
  const auto f = pair_values(p, points, false);
  const std::size_t full = std::size_t{1} << n;
  std::vector<double> phi(full, 1.0);
  std::vector<double> phit(full, 0.0);
  for (std::size_t s = 1; s < full; ++s) {
    const int top = 31 - std::countl_zero(static_cast<std::uint32_t>(s));
    const std::size_t rest = s & ~(std::size_t{1} << top);
    double v = phi[rest];
    for (std::size_t r = rest; r; r &= r - 1) v *= 1.0 + f[static_cast<std::size_t>(top * n + std::countr_zero(r))];
    phi[s] = v;
  }
  for (std::size_t s = 1; s < full; ++s) {
    const std::size_t low = s & (~s + 1);
    const std::size_t others = s & ~low;
    double acc = phi[s];
    for (std::size_t t = (others - 1) & others;; t = (t - 1) & others) {
      const std::size_t part = t | low;
      if (part != s) acc -= phit[part] * phi[s & ~part];
      if (t == 0) break;
    }
    phit[s] = acc;
  }
  return phit[full - 1];
}

double tree_sum_fbar(const Potential& p, std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  if (n <= 1) return 1.0;
  const auto w = pair_values(p, points, true);
  const int m = n - 1;
  std::vector<double> lap(static_cast<std::size_t>(m * m), 0.0);
  for (int i = 1; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) diag += w[static_cast<std::size_t>(i * n + j)];
    lap[static_cast<std::size_t>((i - 1) * m + (i - 1))] = diag;
    for (int j = 1; j < n; ++j)
      if (j != i) lap[static_cast<std::size_t>((i - 1) * m + (j - 1))] = -w[static_cast<std::size_t>(i * n + j)];
  }
  return determinant(std::move(lap), m);
}

CoefficientEstimate graph_weight_exact_1d(const Graph& g, const Potential& p,
                                          std::span<const double> roots,
                                          std::optional<double> ring_length, bool normalized) {
  if (static_cast<int>(roots.size()) != g.white_count())
    throw std::invalid_argument("one root position per white vertex is required");
  CellProblem problem;
  problem.n_vertices = g.size();
  problem.white_positions.assign(roots.begin(), roots.end());
  problem.ring_length = ring_length;
  for (auto [i, j] : g.edges()) problem.terms.push_back({i, j, PairFactor::Mayer});
  double value = integrate_cells(p, problem);
  if (normalized) {
    if (!ring_length) throw std::invalid_argument("normalized measure needs a ring length");
    value /= std::pow(*ring_length, g.black_count());
  }
  return CoefficientEstimate::exact(value);
}

bool uses_exact_path(const Potential& p, const IntegrationOptions& options) {
  switch (options.method) {
    case IntegrationMethod::Exact1D: return true;
    case IntegrationMethod::MonteCarlo: return false;
    case IntegrationMethod::Auto:
      if (p.dimension != 1 || !p.piecewise_constant()) return false;
      try {
        commensurate_unit(p, std::nullopt);
        return true;
      } catch (const NeedsMonteCarlo&) {
        return false;
      }
  }
  return false;
}

CoefficientEstimate graph_weight(const Graph& g, const Potential& p, std::span<const Point> roots,
                                 const IntegrationOptions& options, std::uint64_t stream) {
  if (uses_exact_path(p, options)) {
    std::vector<double> x;
    for (const auto& r : roots) x.push_back(r[0]);
    return graph_weight_exact_1d(g, p, x);
  }
  McOptions mc = options.mc;
  mc.seed = options.mc.seed + (stream << 20);
  return graph_weight_mc(g, p, p.dimension, roots, mc);
}

CoefficientEstimate weighted_graph_sum(std::span<const Graph> graphs, const Potential& p,
                                       std::span<const Point> roots,
                                       const IntegrationOptions& options, double scale,
                                       std::uint64_t stream_base) {
  CoefficientEstimate total = CoefficientEstimate::exact(0.0);
  if (!uses_exact_path(p, options)) {
    total.method = EstimateMethod::MonteCarlo;
    total.seed = options.mc.seed;
  }
  std::uint64_t stream = stream_base;
  for (const Graph& g : graphs) accumulate(total, graph_weight(g, p, roots, options, stream++), scale);
  return total;
}

CoefficientEstimate mayer_b_n(const Potential& p, int n, const IntegrationOptions& options) {
  if (n < 1) throw std::invalid_argument("order must be at least 1");
  if (n == 1) return CoefficientEstimate::exact(1.0);
  return cached(p, n, CoefficientKind::ClusterB, options, [&] {
    auto graphs = enumerate(n, GraphClass::Connected).collect();
    for (auto& g : graphs) g.set_white_count(1);
    const Point root[] = {kOrigin};
    return weighted_graph_sum(graphs, p, root, options, 1.0 / factorial(n),
                              static_cast<std::uint64_t>(n) << 24);
  });
}

CoefficientEstimate irreducible_beta_n(const Potential& p, int n, const IntegrationOptions& options) {
  if (n < 1) throw std::invalid_argument("order must be at least 1");
  return cached(p, n, CoefficientKind::IrreducibleBeta, options, [&] {
    auto graphs = enumerate(n + 1, GraphClass::Biconnected).collect();
    for (auto& g : graphs) g.set_white_count(1);
    const Point root[] = {kOrigin};
    return weighted_graph_sum(graphs, p, root, options, 1.0 / factorial(n),
                              (static_cast<std::uint64_t>(n) << 24) + (1ULL << 23));
  });
}

CoefficientEstimate activity_kernel(const Potential& p, int m, const IntegrationOptions& options) {
  if (m < 1) throw std::invalid_argument("kernel order must be at least 1");
  return cached(p, m, CoefficientKind::ActivityKernel, options, [&] {
    std::vector<Graph> graphs;
    const VertexSet rest = first_vertices(m + 1) & ~vertex_bit(0);
    for (Graph g : enumerate(m + 1, GraphClass::All)) {
      if ((g.neighbors(0) & rest) == 0 || !is_connected(g, rest)) continue;
      g.set_white_count(1);
      graphs.push_back(g);
    }
    const Point root[] = {kOrigin};
    return weighted_graph_sum(graphs, p, root, options, -1.0,
                              (static_cast<std::uint64_t>(m) << 24) + (1ULL << 22));
  });
}

std::vector<CoefficientEstimate> cluster_table(const Potential& p, int max_order,
                                               const IntegrationOptions& options) {
  std::vector<CoefficientEstimate> out;
  for (int n = 1; n <= max_order; ++n) out.push_back(mayer_b_n(p, n, options));
  return out;
}

std::vector<CoefficientEstimate> irreducible_table(const Potential& p, int max_order,
                                                   const IntegrationOptions& options) {
  std::vector<CoefficientEstimate> out;
  for (int n = 1; n <= max_order; ++n) out.push_back(irreducible_beta_n(p, n, options));
  return out;
}

}  // namespace clex
