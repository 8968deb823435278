#pragma once

// Brute-force and closed-form reference values, written without the library's graph code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

struct EdgeList {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Edges of the graph on n vertices encoded by `mask` over pairs (i < j) in row order.
inline EdgeList decode(int n, std::uint64_t mask) {
  EdgeList g{n, {}};
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (mask >> bit & 1U) g.edges.emplace_back(i, j);
  return g;
}

inline int components(const EdgeList& g, int removed = -1) {
  std::vector<int> parent(static_cast<std::size_t>(g.n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : g.edges)
    if (a != removed && b != removed) parent[find(a)] = find(b);
  int count = 0;
  for (int v = 0; v < g.n; ++v)
    if (v != removed && find(v) == v) ++count;
  return count;
}

inline bool connected(const EdgeList& g) { return g.n <= 1 || components(g) == 1; }

inline bool biconnected(const EdgeList& g) {
  if (g.n < 2 || !connected(g)) return false;
  if (g.n == 2) return true;
  for (int v = 0; v < g.n; ++v)
    if (components(g, v) != 1) return false;
  return true;
}

inline bool tree(const EdgeList& g) {
  return connected(g) && static_cast<int>(g.edges.size()) == g.n - 1;
}

inline std::uint64_t count_graphs(int n, const std::function<bool(const EdgeList&)>& keep) {
  const int pairs = n * (n - 1) / 2;
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << pairs); ++m)
    if (keep(decode(n, m))) ++count;
  return count;
}

inline std::vector<std::vector<int>> adjacency(const EdgeList& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.n));
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

// Every simple path from `from` to `to`, as vertex sets (bitmasks).
inline std::vector<std::uint32_t> simple_paths(const EdgeList& g, int from, int to) {
  const auto adj = adjacency(g);
  std::vector<std::uint32_t> out;
  std::function<void(int, std::uint32_t)> walk = [&](int v, std::uint32_t seen) {
    if (v == to) {
      out.push_back(seen);
      return;
    }
    for (int w : adj[v])
      if (!(seen >> w & 1U)) walk(w, seen | (1U << w));
  };
  walk(from, 1U << from);
  return out;
}

// Connected, and every black vertex reaches two distinct whites along paths sharing only
// the black vertex. Whites are 0..whites-1.
inline bool articulation_free(const EdgeList& g, int whites) {
  if (!connected(g)) return false;
  for (int v = whites; v < g.n; ++v) {
    bool ok = false;
    for (int a = 0; a < whites && !ok; ++a)
      for (int b = a + 1; b < whites && !ok; ++b) {
        const auto pa = simple_paths(g, v, a);
        const auto pb = simple_paths(g, v, b);
        for (auto x : pa) {
          for (auto y : pb)
            if ((x & y) == (1U << v)) {
              ok = true;
              break;
            }
          if (ok) break;
        }
      }
    if (!ok) return false;
  }
  return true;
}

// Vertices lying on every path between some pair of whites.
inline std::uint32_t nodal(const EdgeList& g, int whites) {
  std::uint32_t out = 0;
  for (int a = 0; a < whites; ++a)
    for (int b = a + 1; b < whites; ++b) {
      const auto paths = simple_paths(g, a, b);
      if (paths.empty()) continue;
      std::uint32_t common = ~0U;
      for (auto p : paths) common &= p;
      out |= common & ~(1U << a) & ~(1U << b);
    }
  return out;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline double bell(int n) {
  std::vector<std::vector<double>> s(static_cast<std::size_t>(n) + 1,
                                     std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  s[0][0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= i; ++k) s[i][k] = k * s[i - 1][k] + s[i - 1][k - 1];
  double b = 0.0;
  for (int k = 0; k <= n; ++k) b += s[n][k];
  return b;
}

// Number of enriched trees on the root plus n labels: n! [x^n] R(x) where
// R = exp(e^{x R} - 1), by fixed-point iteration on truncated series.
inline double enriched_tree_count(int n) {
  const std::size_t K = static_cast<std::size_t>(n) + 1;
  auto mul = [K](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(K, 0.0);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; i + j < K; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  auto exp_series = [&](const std::vector<double>& a) {  // a[0] == 0
    std::vector<double> out(K, 0.0), term(K, 0.0);
    out[0] = term[0] = 1.0;
    for (std::size_t k = 1; k < K; ++k) {
      term = mul(term, a);
      for (auto& t : term) t /= double(k);
      for (std::size_t i = 0; i < K; ++i) out[i] += term[i];
    }
    return out;
  };
  std::vector<double> R(K, 0.0);
  R[0] = 1.0;
  for (std::size_t it = 0; it <= K; ++it) {
    std::vector<double> T(K, 0.0);
    for (std::size_t i = 1; i < K; ++i) T[i] = R[i - 1];
    auto inner = exp_series(T);
    inner[0] = 0.0;
    R = exp_series(inner);
  }
  return factorial(n) * R[static_cast<std::size_t>(n)];
}

// Hard rods, sigma = 1.
namespace tonks {
// Pressure-activity coefficients from beta P = W(z).
inline double b(int n) { return std::pow(-double(n), n - 1) / factorial(n); }
// Irreducible coefficients from B_n = 1 for all n.
inline double beta(int n) { return -(n + 1.0) / n; }
// Ring partition function Z_N = L (L - N)^{N-1} / N!.
inline double log_z(int N, double L) {
  return std::log(L) + (N - 1) * std::log(L - N) - std::lgamma(N + 1.0);
}
// (f * f)(r) on the line.
inline double ff(double r) { return std::max(0.0, 2.0 - std::abs(r)); }
// Activity as a function of density: rho/(1-rho) exp(rho/(1-rho)), coefficients 0..K.
inline std::vector<double> z_of_rho(int K) {
  std::vector<double> u(static_cast<std::size_t>(K) + 1, 0.0);  // rho/(1-rho)
  for (int n = 1; n <= K; ++n) u[n] = 1.0;
  std::vector<double> out(u.size(), 0.0), term(u.size(), 0.0);
  term[0] = 1.0;
  std::vector<double> e(u.size(), 0.0);
  for (int k = 0; k <= K; ++k) {
    for (std::size_t i = 0; i < u.size(); ++i) e[i] += term[i] / factorial(k);
    std::vector<double> next(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; i + j < u.size(); ++j) next[i + j] += term[i] * u[j];
    term = next;
  }
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; i + j < u.size(); ++j) out[i + j] += u[i] * e[j];
  return out;
}
}  // namespace tonks

// Hard spheres, sigma = 1, d = 3.
namespace spheres {
// Overlap volume of two unit-diameter-range balls (radius 1) at distance r.
inline double overlap(double r) {
  return r >= 2.0 ? 0.0 : std::numbers::pi / 12.0 * (4.0 + r) * (2.0 - r) * (2.0 - r);
}
inline double B2() { return 2.0 * std::numbers::pi / 3.0; }
inline double B3() { return 5.0 * std::numbers::pi * std::numbers::pi / 18.0; }
// PY virial-route compressibility factor.
inline double py_virial_pressure(double rho) {
  const double eta = std::numbers::pi * rho / 6.0;
  return rho * (1.0 + 2.0 * eta + 3.0 * eta * eta) / ((1.0 - eta) * (1.0 - eta));
}
}  // namespace spheres

}  // namespace oracle
