#include "clex/canonical.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "clex/cluster.hpp"
#include "clex/convergence.hpp"
#include "clex/exact1d.hpp"
#include "clex/graph.hpp"

namespace clex {

namespace {

void require_periodic(Boundary b) {
  if (b != Boundary::Periodic)
    throw std::invalid_argument("free boundaries are not supported: the expansion needs a periodic box");
}

void require_line(const Potential& p) {
  if (p.dimension != 1) throw std::invalid_argument("canonical expansion is implemented in d = 1");
}

// Sum over graphs of the class on `size` labels of the ring integral with label 0 at 0.
double pinned_ring_sum(const Potential& p, int size, GraphClass cls, double L) {
  double total = 0.0;
  const double root[] = {0.0};
  for (Graph g : enumerate(size, cls)) {
    g.set_white_count(1);
    total += graph_weight_exact_1d(g, p, root, L).value;
  }
  return total;
}

// Normalized partition functions Xi_j, j = 0..m, from the exponential formula.
std::vector<double> normalized_partition_functions(const std::vector<double>& zetas, int m) {
  // zetas[s] = zeta of an s-polymer, zetas[1] = 1.
  std::vector<double> a(static_cast<std::size_t>(m) + 1, 0.0);
  for (int s = 1; s <= m; ++s) a[s] = zetas[s] / factorial(s);
  std::vector<double> b(static_cast<std::size_t>(m) + 1, 0.0);
  b[0] = 1.0;
  for (int n = 1; n <= m; ++n) {
    double acc = 0.0;
    for (int j = 1; j <= n; ++j) acc += j * a[j] * b[n - j];
    b[n] = acc / n;
  }
  for (int n = 0; n <= m; ++n) b[n] *= factorial(n);
  return b;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// phi_T of a hard-core overlap graph: connected spanning subgraphs with sign (-1)^{|E|}.
class OverlapPhiT {
 public:
  double operator()(int n, const std::vector<std::uint32_t>& adj) {
    std::uint64_t key = static_cast<std::uint64_t>(n);
    for (int i = 0; i < n; ++i) key = key * 0x9E3779B97F4A7C15ULL ^ adj[i];
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const std::size_t full = std::size_t{1} << n;
    std::vector<double> phi(full, 0.0);
    std::vector<double> phit(full, 0.0);
    for (std::size_t s = 1; s < full; ++s) {
      bool independent = true;
      for (std::size_t r = s; r && independent; r &= r - 1)
        if (adj[std::countr_zero(r)] & s) independent = false;
      phi[s] = independent ? 1.0 : 0.0;
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
    memo_.emplace(key, phit[full - 1]);
    return phit[full - 1];
  }

 private:
  std::map<std::uint64_t, double> memo_;
};

struct PolymerSums {
  int k;
  std::uint32_t full;
  std::vector<std::uint32_t> polymers;
  std::vector<double> zeta_of;
  OverlapPhiT phit;
  std::vector<int> chosen;
  double total = 0.0;

  void weigh(std::uint32_t covered) {
    if (covered != full) return;
    const int n = static_cast<int>(chosen.size());
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      w *= zeta_of[chosen[i]];
      for (int j = 0; j < n; ++j)
        if (i != j && (polymers[chosen[i]] & polymers[chosen[j]])) adj[i] |= 1U << j;
    }
    total += w * phit(n, adj) / factorial(n);
  }

  void all_sequences(std::uint32_t covered, int remaining) {
    weigh(covered);
    if (remaining == 0) return;
    for (int i = 0; i < static_cast<int>(polymers.size()); ++i) {
      chosen.push_back(i);
      all_sequences(covered | polymers[i], remaining - 1);
      chosen.pop_back();
    }
  }

  void restricted(std::uint32_t covered, int budget, std::uint32_t used) {
    if (budget == 0) {
      weigh(covered);
      return;
    }
    for (int i = 0; i < static_cast<int>(polymers.size()); ++i) {
      const int cost = std::popcount(polymers[i]) - 1;
      if ((used >> i & 1U) || cost > budget) continue;
      chosen.push_back(i);
      restricted(covered | polymers[i], budget - cost, used | (1U << i));
      chosen.pop_back();
    }
  }
};

PolymerSums make_polymer_sums(const Potential& p, int k, double L) {
  require_line(p);
  if (k < 1 || k > kMaxCanonicalOrder) throw std::invalid_argument("canonical order must be in [1, 4]");
  PolymerSums s{k, (1U << (k + 1)) - 1, {}, {}, {}, {}, 0.0};
  std::vector<double> zetas(static_cast<std::size_t>(k) + 2, 1.0);
  for (int m = 2; m <= k + 1; ++m) zetas[m] = zeta(p, m, L).value;
  for (std::uint32_t v = 1; v <= s.full; ++v)
    if (std::popcount(v) >= 2) {
      s.polymers.push_back(v);
      s.zeta_of.push_back(zetas[std::popcount(v)]);
    }
  return s;
}

}  // namespace

PolymerActivity zeta(const Potential& p, int size, double L, Boundary boundary) {
  require_periodic(boundary);
  require_line(p);
  if (size < 1 || size > kMaxPolymerSize) throw std::invalid_argument("polymer size must be in [1, 5]");
  if (size == 1) return {1, 1.0, L, boundary};
  const double value = pinned_ring_sum(p, size, GraphClass::Connected, L) / std::pow(L, size - 1);
  return {size, value, L, boundary};
}

double prefactor_P(int N, double L, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= (N - i) / L;
  return v;
}

CanonicalCoefficient canonical_B_k(const Potential& p, int k, int N, double L, Boundary boundary) {
  require_periodic(boundary);
  require_line(p);
  if (k < 1 || k > kMaxCanonicalOrder) throw std::invalid_argument("canonical order must be in [1, 4]");
  if (k >= N) throw std::invalid_argument("canonical order must be below the particle number");
  std::vector<double> zetas(static_cast<std::size_t>(k) + 2, 1.0);
  for (int m = 2; m <= k + 1; ++m) zetas[m] = zeta(p, m, L).value;
  const auto xi = normalized_partition_functions(zetas, k + 1);
  double s = 0.0;
  for (int j = 2; j <= k + 1; ++j)
    s += binomial(k + 1, j) * (((k + 1 - j) % 2) ? -1.0 : 1.0) * std::log(xi[j]);
  CanonicalCoefficient out;
  out.k = k;
  out.B = std::pow(L, k) / factorial(k) * s;
  out.B_star = pinned_ring_sum(p, k + 1, GraphClass::Biconnected, L) / factorial(k);
  out.remainder = out.B - out.B_star;
  return out;
}

double polymer_cluster_sum(const Potential& p, int k, double L, int max_length) {
  auto sums = make_polymer_sums(p, k, L);
  sums.all_sequences(0, max_length);
  return std::pow(L, k) / factorial(k) * sums.total;
}

double restricted_polymer_sum(const Potential& p, int k, double L) {
  auto sums = make_polymer_sums(p, k, L);
  sums.restricted(0, k, 0);
  return std::pow(L, k) / factorial(k) * sums.total;
}

CanonicalFreeEnergy canonical_free_energy(const Potential& p, int N, double L, int K,
                                          Boundary boundary) {
  require_periodic(boundary);
  require_line(p);
  if (N < 1) throw std::invalid_argument("need at least one particle");
  if (K < 0 || K >= N) throw std::invalid_argument("truncation order must satisfy 0 <= K < N");
  if (K > kMaxCanonicalOrder) throw std::invalid_argument("truncation order above 4 is not supported");
  CanonicalFreeEnergy out;
  out.N = N;
  out.L = L;
  out.K = K;
  out.ideal_part = N * std::log(L) - std::lgamma(N + 1.0);
  out.log_z = out.ideal_part;
  for (int k = 1; k <= K; ++k) {
    const double b = canonical_B_k(p, k, N, L).B;
    const double pk = prefactor_P(N, L, k);
    const double term = N / (k + 1.0) * pk * b;
    out.B.push_back(b);
    out.P.push_back(pk);
    out.terms.push_back(term);
    out.log_z += term;
  }
  out.per_volume = out.log_z / L;

  std::vector<std::pair<double, double>> pts;
  for (int k = 1; k <= K; ++k)
    if (out.terms[k - 1] != 0.0) pts.emplace_back(k, std::log(std::abs(out.terms[k - 1])));
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = static_cast<double>(pts.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / m;
    out.fit_c = -slope;
    out.fit_C = std::exp(icpt);
    out.remainder_estimate = out.fit_c > 0.0
                                 ? out.fit_C * std::exp(-out.fit_c * (K + 1)) / (1.0 - std::exp(-out.fit_c))
                                 : std::numeric_limits<double>::infinity();
  } else if (pts.empty()) {
    out.remainder_estimate = 0.0;
  } else {
    out.remainder_estimate = std::numeric_limits<double>::infinity();
  }
  if (!p.is_ideal()) {
    const auto cert = canonical_radius(p, 1);
    out.within_certificate = (N / L) * cert.integral <= cert.bound_value;
  }
  return out;
}

double direct_logZ_oracle(const Potential& p, int N, double L) {
  require_line(p);
  if (N < 0 || N > kMaxOracleParticles)
    throw std::invalid_argument("exact partition-function oracle supports N <= 4");
  if (N == 0) return 0.0;
  CellProblem problem;
  problem.n_vertices = N;
  problem.white_positions = {0.0};
  problem.ring_length = L;
  for (int j = 1; j < N; ++j)
    for (int i = 0; i < j; ++i) problem.terms.push_back({i, j, PairFactor::Boltzmann});
  const double integral = integrate_cells(p, problem);
  return std::log(L * integral) - std::lgamma(N + 1.0);
}

CoefficientEstimate direct_logZ_mc(const Potential& p, int N, double L, std::uint64_t samples,
                                   std::uint64_t seed) {
  require_line(p);
  if (N < 1 || N > kMaxMonteCarloParticles)
    throw std::invalid_argument("Monte Carlo partition-function oracle supports N <= 8");
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  std::mt19937_64 rng(seed);
  std::vector<double> x(static_cast<std::size_t>(N), 0.0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 1; i < N; ++i) x[i] = L * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double w = 1.0;
    for (int i = 0; i < N && w != 0.0; ++i)
      for (int j = i + 1; j < N; ++j) {
        w *= p.boltzmann(periodic_distance(x[i] - x[j], L));
        if (w == 0.0) break;
      }
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / double(samples);
  const double var = std::max(0.0, sum_sq / double(samples) - mean * mean);
  const double se = std::sqrt(var / double(samples - 1));
  CoefficientEstimate e;
  e.value = N * std::log(L) - std::lgamma(N + 1.0) + std::log(mean);
  e.std_error = se / mean;
  e.method = EstimateMethod::MonteCarlo;
  e.samples = samples;
  e.seed = seed;
  return e;
}

double tonks_logZ(int N, double L, double sigma) {
  if (N == 0) return 0.0;
  if (!(L > N * sigma)) throw std::domain_error("ring too short for N hard rods");
  return std::log(L) + (N - 1) * std::log(L - N * sigma) - std::lgamma(N + 1.0);
}

}  // namespace clex
