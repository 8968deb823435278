#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "clex/potential.hpp"

using namespace clex;

namespace {

std::vector<Potential> sample_potentials() {
  return {Potential::hard_rod(),
          Potential::hard_sphere(1.0, 3),
          Potential::square_well(1.0, 1.5, 1.0, 1),
          Potential::square_well(1.0, 1.5, 1.0, 3),
          Potential::square_well(1.0, 2.0, 0.7, 3, 2.0),
          Potential::lennard_jones(1.0, 1.0, 3),
          Potential::lennard_jones(1.0, 1.0, 1, 1.0, 2.5)};
}

}  // namespace

TEST_CASE("mayer function examples") {
  const auto hs = Potential::hard_sphere(1.0, 3);
  CHECK(mayer_f(hs, 0.5) == -1.0);
  CHECK(mayer_f(hs, 2.0) == 0.0);
  CHECK(mayer_fbar(hs, 0.5) == 1.0);
  CHECK(mayer_fbar(hs, 2.0) == 0.0);

  const auto lj = Potential::lennard_jones(1.0, 1.0, 3);
  const double rmin = std::pow(2.0, 1.0 / 6.0);
  CHECK(mayer_f(lj, rmin) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK(mayer_fbar(lj, rmin) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("mayer function bounds hold at random radii") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0.0, 4.0);
  for (const auto& p : sample_potentials()) {
    const auto s = stability_profile(p);
    for (int i = 0; i < 10000; ++i) {
      const double r = radius(rng);
      const double f = mayer_f(p, r);
      const double fb = mayer_fbar(p, r);
      CHECK(f >= -1.0);
      CHECK(fb >= 0.0);
      CHECK(fb <= 1.0);
      if (p.energy(r) >= 0.0) CHECK(fb == doctest::Approx(-f).epsilon(1e-14));
      CHECK(std::abs(f) <= std::exp(s.B_star) * fb * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("square well values by region") {
  const auto sw = Potential::square_well(1.0, 1.5, 1.0, 1);
  CHECK(mayer_f(sw, 0.9) == -1.0);
  CHECK(mayer_f(sw, 1.2) == doctest::Approx(std::exp(1.0) - 1.0));
  CHECK(mayer_f(sw, 1.6) == 0.0);
  CHECK(sw.breakpoints() == std::vector<double>{1.0, 1.5});
  CHECK(*sw.support_radius() == 1.5);
}

TEST_CASE("stability profiles") {
  auto s = stability_profile(Potential::hard_sphere(1.0, 3));
  CHECK(s.B == 0.0);
  CHECK(s.B_star == 0.0);
  s = stability_profile(Potential::hard_rod());
  CHECK(s.B == 0.0);

  s = stability_profile(Potential::square_well(1.0, 1.5, 1.0, 1));
  CHECK(s.B == doctest::Approx(1.5));
  CHECK(s.B_star == doctest::Approx(1.0));
  s = stability_profile(Potential::square_well(1.0, 1.5, 1.0, 3));
  CHECK(s.B == doctest::Approx(31.5));
  CHECK(s.B_star == doctest::Approx(1.0));

  s = stability_profile(Potential::lennard_jones(1.0, 1.0, 3));
  CHECK(s.B_star == doctest::Approx(1.0));
  CHECK(s.B > 0.0);

  s = stability_profile(Potential::square_well(1.0, 1.5, 2.0, 1, 0.5));
  CHECK(s.B_star == doctest::Approx(1.0));

  CHECK_THROWS_AS(stability_profile(Potential::lennard_jones(1.0, 1.0, 1)), UnsupportedStability);
  CHECK_NOTHROW(stability_profile(Potential::lennard_jones(1.0, 1.0, 1, 1.0, 2.5)));
}

TEST_CASE("square-well packing bound holds for a dense 1D chain") {
  // Every particle of a chain at spacing sigma sees two neighbours within 1.5 sigma.
  const auto sw = Potential::square_well(1.0, 1.5, 1.0, 1);
  const double B = stability_profile(sw).B;
  for (int n = 2; n <= 20; ++n) {
    double energy = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) energy += sw.energy(double(j - i));
    CHECK(energy >= -B * n);
  }
}

TEST_CASE("cbar integral closed forms") {
  CHECK(cbar_integral(Potential::hard_rod(), 1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(cbar_integral(Potential::hard_sphere(1.0, 3), 3) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-10));
  CHECK(cbar_integral(Potential::hard_sphere(2.0, 3), 3) ==
        doctest::Approx(32.0 * std::numbers::pi / 3.0).epsilon(1e-10));
  CHECK(cbar_integral(Potential::ideal(1), 1) == 0.0);

  const auto sw = Potential::square_well(1.0, 1.5, 1.0, 1);
  CHECK(cbar_integral(sw, 1) == doctest::Approx(2.0 * (1.0 + 0.5 * (1.0 - std::exp(-1.0)))).epsilon(1e-10));
  CHECK(abs_f_integral(sw, 1) == doctest::Approx(2.0 * (1.0 + 0.5 * (std::exp(1.0) - 1.0))).epsilon(1e-10));
}

TEST_CASE("Lennard-Jones integral is finite in 3D") {
  const double c = cbar_integral(Potential::lennard_jones(1.0, 1.0, 3), 3);
  CHECK(std::isfinite(c));
  CHECK(c > 4.0 * std::numbers::pi / 3.0 * 0.8);
}

TEST_CASE("validation rejects bad parameters") {
  CHECK_THROWS(Potential::hard_rod(-1.0).validate());
  CHECK_THROWS(Potential::square_well(1.0, 0.9, 1.0, 1).validate());
  CHECK_THROWS(Potential::square_well(1.0, 1.5, -1.0, 1).validate());
  CHECK_NOTHROW(Potential::square_well(1.0, 1.5, 1.0, 1).validate());
}

TEST_CASE("kind names and hashes") {
  for (auto k : {PotentialKind::Ideal, PotentialKind::HardRod, PotentialKind::HardSphere,
                 PotentialKind::SquareWell, PotentialKind::LennardJones})
    CHECK(parse_potential_kind(to_string(k)) == k);
  CHECK_THROWS(parse_potential_kind("morse"));
  const auto a = Potential::square_well(1.0, 1.5, 1.0, 1);
  auto b = a;
  CHECK(a.content_hash() == b.content_hash());
  b.beta = 2.0;
  CHECK(a.content_hash() != b.content_hash());
}
