#include <doctest.h>

#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "clex/convergence.hpp"

using namespace clex;

namespace {

std::vector<Point> random_points(std::mt19937_64& rng, int n, int d, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<Point> x(static_cast<std::size_t>(n), Point{0.0, 0.0, 0.0});
  for (auto& p : x)
    for (int k = 0; k < d; ++k) p[k] = u(rng);
  return x;
}

}  // namespace

TEST_CASE("tree-graph inequality is an equality for two particles with V >= 0") {
  const auto hs = Potential::hard_sphere(1.0, 3);
  for (double r : {0.3, 0.99, 1.5}) {
    const Point x[] = {{0.0, 0.0, 0.0}, {r, 0.0, 0.0}};
    const auto c = tree_graph_check(hs, x);
    CHECK(c.lhs == c.rhs);
    CHECK(c.holds);
  }
}

TEST_CASE("tree-graph inequality holds on random configurations") {
  std::mt19937_64 rng(2024);
  struct Case {
    Potential p;
    int d;
    double box;
  };
  const Case cases[] = {{Potential::hard_sphere(1.0, 3), 3, 1.2},
                        {Potential::hard_rod(), 1, 2.0},
                        {Potential::square_well(1.0, 1.5, 1.0, 1), 1, 2.0},
                        {Potential::square_well(1.0, 1.5, 1.0, 3), 3, 1.5}};
  for (const auto& c : cases)
    for (int n = 2; n <= 5; ++n)
      for (int i = 0; i < 500; ++i) {
        const auto x = random_points(rng, n, c.d, c.box);
        const auto t = tree_graph_check(c.p, x);
        CHECK(t.holds);
        CHECK(t.lhs <= t.rhs * (1.0 + 1e-12));
      }
}

TEST_CASE("activity radius examples") {
  auto c = activity_radius(Potential::hard_rod(), 1);
  CHECK(c.bound_value == doctest::Approx(1.0 / (2.0 * std::numbers::e)).epsilon(1e-10));
  CHECK(c.weight_a == 1.0);
  CHECK(c.kind == ConditionKind::ActivityScalar);

  c = activity_radius(Potential::hard_sphere(1.0, 3), 3);
  CHECK(c.bound_value == doctest::Approx(3.0 / (4.0 * std::numbers::pi * std::numbers::e)).epsilon(1e-10));

  c = activity_radius(Potential::ideal(3), 3);
  CHECK(c.unbounded);
  CHECK(std::isinf(c.bound_value));
}

TEST_CASE("activity certificate is self-verifying") {
  for (const auto& p : {Potential::hard_rod(), Potential::square_well(1.0, 1.5, 1.0, 1),
                        Potential::hard_sphere(1.0, 3)}) {
    const auto c = activity_radius(p, p.dimension);
    CHECK(activity_condition_holds(c.bound_value * (1.0 - 1e-9), 1.0, c.integral, c.stability));
    for (double a = 0.05; a < 5.0; a += 0.05)
      CHECK_FALSE(activity_condition_holds(c.bound_value * (1.0 + 1e-3), a, c.integral, c.stability));
  }
}

TEST_CASE("canonical radius") {
  const auto c = canonical_radius(Potential::hard_rod(), 1);
  CHECK(c.kind == ConditionKind::CanonicalDensity);
  CHECK(c.bound_value > 0.0);
  CHECK(c.bound_value < 1.0);
  CHECK(canonical_condition_holds(c.bound_value, c.weight_a, c.stability));
  CHECK_FALSE(canonical_condition_holds(c.bound_value * (1.0 + 1e-6), c.weight_a, c.stability));
  CHECK(c.bound_value == canonical_radius(Potential::hard_rod(), 1).bound_value);
  CHECK(c.max_parameter() == doctest::Approx(c.bound_value / c.integral));

  // Doubling sigma doubles C and halves the certified density.
  const auto wide = canonical_radius(Potential::hard_rod(2.0), 1);
  CHECK(wide.bound_value == doctest::Approx(c.bound_value).epsilon(1e-12));
  CHECK(wide.max_parameter() == doctest::Approx(c.max_parameter() / 2.0).epsilon(1e-12));

  const auto sw = canonical_radius(Potential::square_well(1.0, 1.5, 1.0, 1), 1);
  CHECK(sw.bound_value > 0.0);
  CHECK(sw.bound_value < c.bound_value);
}

TEST_CASE("doubling sigma halves the certified activity") {
  const auto a = activity_radius(Potential::hard_rod(1.0), 1);
  const auto b = activity_radius(Potential::hard_rod(2.0), 1);
  CHECK(b.bound_value == doctest::Approx(a.bound_value / 2.0).epsilon(1e-12));
}

TEST_CASE("tree series tail matches the Lambert W closed form") {
  CHECK(tree_series_tail(0.0) == 0.0);
  for (double y : {1e-3, 0.05, 0.1, 0.2, 0.3, 0.35}) {
    const double T = -boost::math::lambert_w0(-y);
    CHECK(tree_series_tail(y) == doctest::Approx(T / y - 1.0).epsilon(1e-12));
  }
  // First terms: y + (3/2) y^2.
  CHECK(tree_series_tail(1e-4) == doctest::Approx(1e-4 + 1.5e-8).epsilon(1e-10));
}

TEST_CASE("rooted tree fixpoint") {
  const auto rods = Potential::hard_rod();
  const double zmax = activity_radius(rods, 1).bound_value;
  auto r = rooted_tree_fixpoint(rods, 0.0);
  CHECK(r.value == 1.0);
  CHECK(r.converged);

  r = rooted_tree_fixpoint(rods, zmax / 2.0);
  CHECK(r.converged);
  CHECK(r.residual < 1e-12);
  CHECK(r.value == doctest::Approx(std::log(r.value) / (2.0 * zmax / 2.0) ).epsilon(1e-10));

  r = rooted_tree_fixpoint(rods, zmax);
  CHECK(r.value == doctest::Approx(std::numbers::e).epsilon(1e-3));

  double last = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto t = rooted_tree_fixpoint(rods, zmax * i / 20.0);
    CHECK(t.value > last);
    last = t.value;
  }

  CHECK_THROWS_AS(rooted_tree_fixpoint(rods, zmax * 1.01), FixedPointMissing);
  CHECK_THROWS(rooted_tree_fixpoint(rods, -0.1));
}
