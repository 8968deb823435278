#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "clex/cluster.hpp"
#include "clex/exact1d.hpp"
#include "clex/species.hpp"
#include "oracles.hpp"

using namespace clex;

namespace {

IntegrationOptions mc_options(std::uint64_t seed, std::uint64_t samples = 200000) {
  IntegrationOptions o;
  o.method = IntegrationMethod::MonteCarlo;
  o.mc.seed = seed;
  o.mc.samples = samples;
  return o;
}

Graph rooted(int n, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<std::pair<int, int>> e(edges);
  return Graph::from_edges(n, e, 1);
}

const Point kOrigin{0.0, 0.0, 0.0};

}  // namespace

TEST_CASE("phi examples") {
  const auto rods = Potential::hard_rod();
  const Point one[] = {{0.0, 0.0, 0.0}};
  CHECK(phi_value(rods, one) == 1.0);
  CHECK(phi_T_value(rods, one) == 1.0);
  const Point two[] = {{0.0, 0.0, 0.0}, {0.5, 0.0, 0.0}};
  CHECK(phi_value(rods, two) == 0.0);
  CHECK(phi_T_value(rods, two) == -1.0);
}

TEST_CASE("phi decomposes over set partitions into phi_T") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  for (const auto& p : {Potential::hard_rod(), Potential::square_well(1.0, 1.5, 1.0, 1),
                        Potential::lennard_jones(1.0, 1.0, 3)}) {
    for (int trial = 0; trial < 200; ++trial) {
      Point x[3];
      for (auto& pt : x) pt = {pos(rng), pos(rng), pos(rng)};
      auto pt = [&](std::initializer_list<int> idx) {
        std::vector<Point> v;
        for (int i : idx) v.push_back(x[i]);
        return phi_T_value(p, v);
      };
      const double expanded = pt({0, 1, 2}) + pt({0, 1}) * pt({2}) + pt({0, 2}) * pt({1}) +
                              pt({1, 2}) * pt({0}) + pt({0}) * pt({1}) * pt({2});
      CHECK(std::abs(phi_value(p, x) - expanded) < 1e-12 * std::max(1.0, std::abs(expanded)));
    }
  }
}

TEST_CASE("phi_T enumeration agrees with the set recursion") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(-1.5, 1.5);
  const auto sw = Potential::square_well(1.0, 1.5, 1.0, 1);
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Point> x(static_cast<std::size_t>(n));
      for (auto& pt : x) pt = {pos(rng), 0.0, 0.0};
      CHECK(phi_T_value(sw, x) == doctest::Approx(phi_T_recursive(sw, x)).epsilon(1e-10));
    }
}

TEST_CASE("exact 1D weights") {
  const auto rods = Potential::hard_rod();
  const double root[] = {0.0};
  CHECK(graph_weight_exact_1d(rooted(2, {{0, 1}}), rods, root).value == -2.0);
  const auto tri = graph_weight_exact_1d(rooted(3, {{0, 1}, {1, 2}, {0, 2}}), rods, root);
  CHECK(tri.value == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(tri.std_error == 0.0);
  CHECK(tri.method == EstimateMethod::Exact1D);

  // Isolated black vertex on a ring with the normalized measure.
  CHECK(graph_weight_exact_1d(rooted(2, {}), rods, root, 10.0, true).value ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("exact 1D path integral matches the convolution oracle") {
  // Path root-1-2 with vertex 2 free: integral of f(x) f(x-y) = (-2)(-2).
  const auto rods = Potential::hard_rod();
  const double root[] = {0.0};
  CHECK(graph_weight_exact_1d(rooted(3, {{0, 1}, {1, 2}}), rods, root).value ==
        doctest::Approx(4.0).epsilon(1e-14));
  // Two whites at distance r joined through one black: (f*f)(r).
  for (double r : {0.0, 0.5, 1.25, 1.9, 2.5}) {
    const std::pair<int, int> e[] = {{0, 2}, {1, 2}};
    const double roots[] = {0.0, r};
    CHECK(graph_weight_exact_1d(Graph::from_edges(3, e, 2), rods, roots).value ==
          doctest::Approx(oracle::tonks::ff(r)).epsilon(1e-13));
  }
}

TEST_CASE("non-commensurate parameters need Monte Carlo") {
  const auto sw = Potential::square_well(1.0, std::numbers::sqrt2, 1.0, 1);
  const double root[] = {0.0};
  CHECK_THROWS_AS(graph_weight_exact_1d(rooted(2, {{0, 1}}), sw, root), NeedsMonteCarlo);
  CHECK_THROWS_AS(graph_weight_exact_1d(rooted(2, {{0, 1}}), Potential::lennard_jones(1.0, 1.0, 1, 1.0, 2.5), root),
                  NeedsMonteCarlo);
}

TEST_CASE("Monte Carlo weight examples") {
  const auto hs = Potential::hard_sphere(1.0, 3);
  const Point roots[] = {kOrigin};
  const auto edge = graph_weight_mc(rooted(2, {{0, 1}}), hs, 3, roots, mc_options(11).mc);
  CHECK(edge.method == EstimateMethod::MonteCarlo);
  CHECK(std::abs(edge.value + 4.0 * std::numbers::pi / 3.0) <= 3.0 * edge.std_error + 1e-10 * std::abs(edge.value));

  const auto zero = graph_weight_mc(rooted(2, {{0, 1}}), Potential::ideal(3), 3, roots, mc_options(11).mc);
  CHECK(zero.value == 0.0);

  const auto rods = Potential::hard_rod();
  const auto tri = graph_weight_mc(rooted(3, {{0, 1}, {1, 2}, {0, 2}}), rods, 1, roots, mc_options(12).mc);
  CHECK(tri.std_error > 0.0);
  CHECK(std::abs(tri.value + 3.0) <= 3.0 * tri.std_error);
}

TEST_CASE("Monte Carlo agrees with the exact path on small graphs") {
  for (const auto& p : {Potential::hard_rod(), Potential::square_well(1.0, 1.5, 1.0, 1)}) {
    std::uint64_t seed = 100;
    for (int blacks = 1; blacks <= 3; ++blacks)
      for (const Graph& g0 : enumerate(blacks + 1, GraphClass::Connected)) {
        Graph g = g0;
        g.set_white_count(1);
        const double root[] = {0.0};
        const Point proot[] = {kOrigin};
        const double exact = graph_weight_exact_1d(g, p, root).value;
        const auto mc = graph_weight_mc(g, p, 1, proot, mc_options(++seed, 40000).mc);
        CHECK(std::abs(mc.value - exact) <= 3.0 * mc.std_error + 1e-12 * std::abs(exact));
      }
  }
}

TEST_CASE("same seed gives bit-identical Monte Carlo estimates") {
  const auto hs = Potential::hard_sphere(1.0, 3);
  auto o = mc_options(42, 20000);
  o.mc.shards = 4;
  const auto a = irreducible_beta_n(hs, 2, o);
  const auto b = irreducible_beta_n(hs, 2, o);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  o.mc.seed = 43;
  CHECK(irreducible_beta_n(hs, 2, o).value != a.value);
}

TEST_CASE("cluster coefficients examples") {
  const auto rods = Potential::hard_rod();
  CHECK(mayer_b_n(rods, 1).value == 1.0);
  CHECK(mayer_b_n(Potential::lennard_jones(1.0, 1.0, 3), 1).value == 1.0);
  CHECK(mayer_b_n(rods, 2).value == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(irreducible_beta_n(rods, 1).value == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(irreducible_beta_n(rods, 2).value == doctest::Approx(-1.5).epsilon(1e-14));
  for (int n = 2; n <= 4; ++n) {
    CHECK(mayer_b_n(Potential::ideal(1), n).value == 0.0);
    CHECK(irreducible_beta_n(Potential::ideal(1), n - 1).value == 0.0);
  }
}

TEST_CASE("hard-rod coefficients match the Tonks closed forms") {
  const auto rods = Potential::hard_rod();
  for (int n = 1; n <= 5; ++n) {
    CHECK(mayer_b_n(rods, n).value == doctest::Approx(oracle::tonks::b(n)).epsilon(1e-11));
    const double b = mayer_b_n(rods, n).value;
    CHECK((n % 2 == 1 ? b > 0.0 : b < 0.0));
  }
  for (int n = 1; n <= 4; ++n)
    CHECK(irreducible_beta_n(rods, n).value == doctest::Approx(oracle::tonks::beta(n)).epsilon(1e-11));
  const double kernels[] = {2.0, -5.0, 26.0, -206.0};
  for (int m = 1; m <= 4; ++m)
    CHECK(activity_kernel(rods, m).value == doctest::Approx(kernels[m - 1]).epsilon(1e-11));
}

TEST_CASE("cluster table from inverting rho(z) through irreducible coefficients") {
  // z(rho) = rho exp(-B'(rho)); its inverse rho(z) = sum n b_n z^n.
  for (const auto& p : {Potential::hard_rod(), Potential::square_well(1.0, 1.5, 1.0, 1)}) {
    const int K = 4;
    const auto beta = irreducible_table(p, K - 1);
    TruncatedSeries<double> minus_bprime(K - 1, SeriesVariable::Density);
    for (int n = 1; n <= K - 1; ++n) minus_bprime[n] = -beta[n - 1].value;
    const auto e = series_exp(minus_bprime);
    TruncatedSeries<double> z(K, SeriesVariable::Density);
    for (int n = 1; n <= K; ++n) z[n] = e[n - 1];
    const auto rho = lagrange_invert(z);
    const auto b = cluster_table(p, K);
    for (int n = 1; n <= K; ++n)
      CHECK(rho[n] / n == doctest::Approx(b[n - 1].value).epsilon(1e-9));
  }
}

TEST_CASE("hard-sphere second virial coefficient by Monte Carlo") {
  const auto hs = Potential::hard_sphere(1.0, 3);
  const auto b1 = irreducible_beta_n(hs, 1, mc_options(9));
  CHECK(std::abs(b1.value + 2.0 * oracle::spheres::B2()) <= 3.0 * b1.std_error + 1e-10 * std::abs(b1.value));
  const auto b2 = irreducible_beta_n(hs, 2, mc_options(10));
  // B_3 = -(2/3) beta_2.
  CHECK(std::abs(-2.0 / 3.0 * b2.value - oracle::spheres::B3()) <= 3.0 * 2.0 / 3.0 * b2.std_error);
}

TEST_CASE("coefficient table memoizes") {
  CoefficientTable table;
  IntegrationOptions o;
  o.table = &table;
  const auto rods = Potential::hard_rod();
  const auto first = irreducible_beta_n(rods, 3, o);
  const auto misses = table.misses();
  const auto second = irreducible_beta_n(rods, 3, o);
  CHECK(first.value == second.value);
  CHECK(table.hits() >= 1);
  CHECK(table.misses() == misses);
}

TEST_CASE("relative error threshold raises NonConvergence") {
  auto o = mc_options(1, 50);
  o.mc.max_relative_error = 1e-6;
  CHECK_THROWS_AS(irreducible_beta_n(Potential::hard_sphere(1.0, 3), 2, o), NonConvergence);
}
