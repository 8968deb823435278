#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clex {

enum class PotentialKind { Ideal, HardRod, HardSphere, SquareWell, LennardJones };

std::string to_string(PotentialKind kind);
PotentialKind parse_potential_kind(const std::string& name);

class UnsupportedStability : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotTempered : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Radial pair potential V(r). Lengths in units of sigma, energies in units of 1/beta
// unless epsilon and beta are given explicitly.
struct Potential {
  PotentialKind kind = PotentialKind::Ideal;
  double sigma = 1.0;
  double epsilon = 0.0;
  double lambda = 1.0;
  double beta = 1.0;
  int dimension = 1;
  std::optional<double> cutoff;

  static Potential ideal(int dimension = 1);
  static Potential hard_rod(double sigma = 1.0);
  static Potential hard_sphere(double sigma = 1.0, int dimension = 3);
  static Potential square_well(double sigma, double lambda, double epsilon, int dimension = 1,
                               double beta = 1.0);
  static Potential lennard_jones(double sigma, double epsilon, int dimension = 3,
                                 double beta = 1.0, std::optional<double> cutoff = std::nullopt);

  void validate() const;

  // V(r); +infinity inside a hard core (r < sigma).
  double energy(double r) const;
  // e^{-beta V(r)}.
  double boltzmann(double r) const;
  bool has_hard_core() const noexcept;
  bool is_ideal() const noexcept { return kind == PotentialKind::Ideal; }
  bool piecewise_constant() const noexcept;
  // Radii where f jumps, ascending.
  std::vector<double> breakpoints() const;
  // f vanishes for r >= support radius; nullopt when f has unbounded support.
  std::optional<double> support_radius() const;

  std::string canonical_string() const;
  std::uint64_t content_hash() const;
};

double mayer_f(const Potential& p, double r);
double mayer_fbar(const Potential& p, double r);

// Both constants are dimensionless (already multiplied by beta).
struct StabilityProfile {
  double B = 0.0;
  double B_star = 0.0;
};

StabilityProfile stability_profile(const Potential& p);

double surface_area(int dimension);
// Integral of fbar over R^d.
double cbar_integral(const Potential& p, int dimension);
// Integral of |f| over R^d.
double abs_f_integral(const Potential& p, int dimension);

std::uint64_t fnv1a(const std::string& text);

}  // namespace clex
