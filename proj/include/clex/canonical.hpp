#pragma once

#include <vector>

#include "clex/estimate.hpp"
#include "clex/potential.hpp"

namespace clex {

enum class Boundary { Periodic, Free };

inline constexpr int kMaxCanonicalOrder = 4;
inline constexpr int kMaxPolymerSize = kMaxCanonicalOrder + 1;
inline constexpr int kMaxOracleParticles = 4;
inline constexpr int kMaxMonteCarloParticles = 8;

struct PolymerActivity {
  int size = 1;
  double value = 1.0;
  double volume = 0.0;
  Boundary boundary = Boundary::Periodic;
};

// Sum over connected graphs on `size` labels of the ring integral of prod f, each
// coordinate with measure dx/L.
PolymerActivity zeta(const Potential& p, int size, double L, Boundary boundary = Boundary::Periodic);

struct CanonicalCoefficient {
  int k = 0;
  double B = 0.0;       // all polymer clusters covering [k+1]
  double B_star = 0.0;  // 2-connected graphs on k+1 labels
  double remainder = 0.0;
};

CanonicalCoefficient canonical_B_k(const Potential& p, int k, int N, double L,
                                   Boundary boundary = Boundary::Periodic);

// (N-1)(N-2)...(N-k) / L^k.
double prefactor_P(int N, double L, int k);

// Truncated sum over ordered polymer sequences (length <= max_length) covering [k+1],
// weighted by phi_T of their overlap graph, scaled to B(k).
double polymer_cluster_sum(const Potential& p, int k, double L, int max_length);
// Same, restricted to distinct polymers with sum(|V_i| - 1) = k.
double restricted_polymer_sum(const Potential& p, int k, double L);

struct CanonicalFreeEnergy {
  int N = 0;
  double L = 0.0;
  int K = 0;
  double log_z = 0.0;
  double per_volume = 0.0;
  double ideal_part = 0.0;
  std::vector<double> B;      // B(1..K) at index k - 1
  std::vector<double> P;      // P(1..K)
  std::vector<double> terms;  // N/(k+1) P(k) B(k)
  // Empirical fit |term_k| ~ C e^{-c k}; remainder = sum over k > K of the fit.
  double fit_C = 0.0;
  double fit_c = 0.0;
  double remainder_estimate = 0.0;
  bool within_certificate = true;
};

CanonicalFreeEnergy canonical_free_energy(const Potential& p, int N, double L, int K,
                                          Boundary boundary = Boundary::Periodic);

// log Z from the exact ring integral of prod (1 + f) (N <= 4).
double direct_logZ_oracle(const Potential& p, int N, double L);
// Monte Carlo estimate of log Z with uniform positions (N <= 8).
CoefficientEstimate direct_logZ_mc(const Potential& p, int N, double L, std::uint64_t samples,
                                   std::uint64_t seed);
// Closed form for hard rods on a ring: Z = L (L - N sigma)^{N-1} / N!.
double tonks_logZ(int N, double L, double sigma);

}  // namespace clex
