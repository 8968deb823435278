#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "clex/graph.hpp"
#include "clex/series.hpp"

namespace clex {

class MissingKernelOrder : public std::out_of_range {
 public:
  MissingKernelOrder(const std::string& what, int available)
      : std::out_of_range(what), available_(available) {}
  int available_order() const noexcept { return available_; }

 private:
  int available_;
};

// Integrated inversion kernels a_m (index 0 unused): A(0; z) = sum_m a_m z^m / m!.
template <class T>
struct KernelTable {
  std::vector<T> a;
  int order() const noexcept { return static_cast<int>(a.size()) - 1; }
};

template <class T>
T factorial_as(int n) {
  T f(1);
  for (int k = 2; k <= n; ++k) f *= T(k);
  return f;
}

template <class T>
TruncatedSeries<T> kernel_series(const KernelTable<T>& kernels, int order) {
  if (kernels.order() < order)
    throw MissingKernelOrder("kernel table is shorter than the requested order", kernels.order());
  TruncatedSeries<T> s(order, SeriesVariable::Activity);
  for (int m = 1; m <= order; ++m) s[m] = kernels.a[m] / factorial_as<T>(m);
  return s;
}

// Density series of T(rho) = z / rho as a sum over enriched trees: each clique J
// contributes a_{|J|}.
template <class T>
TruncatedSeries<T> enriched_tree_invert(const KernelTable<T>& kernels, int order) {
  if (kernels.order() < order)
    throw MissingKernelOrder("kernel table is shorter than the requested order", kernels.order());
  TruncatedSeries<T> t(order, SeriesVariable::Density);
  t[0] = T(1);
  for (int n = 1; n <= order; ++n) {
    T sum(0);
    auto stream = enumerate_enriched_trees(n);
    while (auto et = stream.next()) {
      T w(1);
      for (const auto& cliques : et->child_partitions)
        for (const auto& clique : cliques) w *= kernels.a[clique.size()];
      sum += w;
    }
    t[n] = sum / factorial_as<T>(n);
  }
  return t;
}

// T - exp(A(0; rho T)); vanishes when T solves the inversion fixed point.
template <class T>
TruncatedSeries<T> fixed_point_residual(const KernelTable<T>& kernels,
                                        const TruncatedSeries<T>& tbar) {
  const int k = tbar.order();
  const auto a = kernel_series(kernels, k);
  const auto z = TruncatedSeries<T>::identity(k, SeriesVariable::Density) * tbar;
  return tbar - series_exp(series_compose(a, z));
}

// -A(0; rho T(rho)): the density series whose coefficients are beta_n.
template <class T>
TruncatedSeries<T> two_connected_from_composition(const TruncatedSeries<T>& a_series,
                                                  const TruncatedSeries<T>& tbar) {
  if (a_series.variable() != SeriesVariable::Activity || tbar.variable() != SeriesVariable::Density)
    throw std::domain_error("expected A in activity and T in density");
  const int k = std::min(a_series.order(), tbar.order());
  const auto z = TruncatedSeries<T>::identity(k, SeriesVariable::Density) * tbar.truncated(k);
  return -series_compose(a_series, z);
}

// Series in rho of the 2-connected generating function sum_n beta_{n-1} rho^n / n.
template <class T>
TruncatedSeries<T> two_connected_series(std::span<const T> beta, int order) {
  TruncatedSeries<T> b(order, SeriesVariable::Density);
  for (int n = 2; n <= order; ++n) {
    if (static_cast<std::size_t>(n - 1) > beta.size())
      throw MissingKernelOrder("beta table is shorter than the requested order",
                               static_cast<int>(beta.size()));
    b[n] = beta[n - 2] / T(n);
  }
  return b;
}

// C^o + B(C^o) - B^o(C^o) - C in the activity variable. `cluster` holds b_1..b_K as
// coefficients 1..K, `beta` holds beta_1..beta_{K-1}.
template <class T>
TruncatedSeries<T> dissymmetry_residual(const TruncatedSeries<T>& cluster, std::span<const T> beta,
                                        int order) {
  if (cluster.variable() != SeriesVariable::Activity)
    throw std::domain_error("connected series must be in the activity");
  const auto c = cluster.truncated(order);
  const auto rho = rooting(c);
  const auto b = two_connected_series(beta, order);
  const auto b_rooted = rooting(b);
  return rho + series_compose(b, rho) - series_compose(b_rooted, rho) - c;
}

template <class T>
struct EquationOfState {
  TruncatedSeries<T> pressure;             // beta P as a series in rho
  TruncatedSeries<T> excess_free_energy;   // -B(rho); ideal part rho ln rho - rho kept symbolic
  TruncatedSeries<T> log_fugacity_ratio;   // ln(z / rho) = -B'(rho)
  std::vector<T> virial;                   // virial[n] = B_n for n >= 2
};

// Pressure P = rho - rho B'(rho) + B(rho) from beta_1..beta_K, valid to order K + 1.
template <class T>
EquationOfState<T> eos_and_free_energy(std::span<const T> beta, int order) {
  if (static_cast<int>(beta.size()) < order)
    throw MissingKernelOrder("beta table is shorter than the requested order",
                             static_cast<int>(beta.size()));
  const int k = order + 1;
  const auto b = two_connected_series(beta.first(static_cast<std::size_t>(order)), k);
  const auto rho = TruncatedSeries<T>::identity(k, SeriesVariable::Density);
  const auto b_prime = series_derivative(b);
  TruncatedSeries<T> b_prime_full(k, SeriesVariable::Density);
  for (int n = 0; n <= b_prime.order(); ++n) b_prime_full[n] = b_prime[n];
  auto pressure = rho - rho * b_prime_full + b;
  std::vector<T> virial(static_cast<std::size_t>(k) + 1, T(0));
  for (int n = 2; n <= k; ++n) virial[n] = pressure[n];
  return {pressure, -b, -b_prime_full.truncated(order), virial};
}

}  // namespace clex
