#include "clex/potential.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace clex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Rigorous upper bound on the Lennard-Jones stability constant in units of epsilon.
constexpr double kLennardJonesStability = 14.316;

double lj_value(double sigma, double epsilon, double r) {
  const double s6 = std::pow(sigma / r, 6);
  return 4.0 * epsilon * (s6 * s6 - s6);
}

std::vector<double> quadrature_splits(const Potential& p) {
  std::vector<double> splits{0.0};
  switch (p.kind) {
    case PotentialKind::Ideal: break;
    case PotentialKind::HardRod:
    case PotentialKind::HardSphere: splits.push_back(p.sigma); break;
    case PotentialKind::SquareWell:
      splits.push_back(p.sigma);
      splits.push_back(p.lambda * p.sigma);
      break;
    case PotentialKind::LennardJones: {
      std::vector<double> pts{0.5 * p.sigma, p.sigma, std::pow(2.0, 1.0 / 6.0) * p.sigma,
                              2.0 * p.sigma, 4.0 * p.sigma};
      for (double x : pts)
        if (!p.cutoff || x < *p.cutoff) splits.push_back(x);
      if (p.cutoff) splits.push_back(*p.cutoff);
      break;
    }
  }
  return splits;
}

template <class F>
double radial_integral(const Potential& p, int d, F&& g) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&](double r) { return std::pow(r, d - 1) * g(r); };
  const auto splits = quadrature_splits(p);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < splits.size(); ++i)
    total += gauss_kronrod<double, 61>::integrate(integrand, splits[i], splits[i + 1], 15, 1e-14);
  if (!p.support_radius()) {
    boost::math::quadrature::exp_sinh<double> tail;
    const double a = splits.back();
    total += tail.integrate([&](double r) { return integrand(r); }, a, kInf);
  }
  total *= surface_area(d);
  if (!std::isfinite(total)) throw NotTempered("potential is not tempered: divergent integral");
  return total;
}

}  // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Ideal: return "ideal";
    case PotentialKind::HardRod: return "hard-rod";
    case PotentialKind::HardSphere: return "hard-sphere";
    case PotentialKind::SquareWell: return "square-well";
    case PotentialKind::LennardJones: return "lennard-jones";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(const std::string& name) {
  for (auto k : {PotentialKind::Ideal, PotentialKind::HardRod, PotentialKind::HardSphere,
                 PotentialKind::SquareWell, PotentialKind::LennardJones})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown potential kind: " + name);
}

Potential Potential::ideal(int dimension) {
  Potential p;
  p.dimension = dimension;
  p.validate();
  return p;
}

Potential Potential::hard_rod(double sigma) {
  Potential p;
  p.kind = PotentialKind::HardRod;
  p.sigma = sigma;
  p.validate();
  return p;
}

Potential Potential::hard_sphere(double sigma, int dimension) {
  Potential p;
  p.kind = PotentialKind::HardSphere;
  p.sigma = sigma;
  p.dimension = dimension;
  p.validate();
  return p;
}

Potential Potential::square_well(double sigma, double lambda, double epsilon, int dimension,
                                 double beta) {
  Potential p;
  p.kind = PotentialKind::SquareWell;
  p.sigma = sigma;
  p.lambda = lambda;
  p.epsilon = epsilon;
  p.dimension = dimension;
  p.beta = beta;
  p.validate();
  return p;
}

Potential Potential::lennard_jones(double sigma, double epsilon, int dimension, double beta,
                                   std::optional<double> cutoff) {
  Potential p;
  p.kind = PotentialKind::LennardJones;
  p.sigma = sigma;
  p.epsilon = epsilon;
  p.dimension = dimension;
  p.beta = beta;
  p.cutoff = cutoff;
  p.validate();
  return p;
}

void Potential::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (dimension < 1 || dimension > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (kind == PotentialKind::HardRod && dimension != 1)
    throw std::invalid_argument("hard rods live in one dimension");
  if (kind == PotentialKind::SquareWell && !(lambda > 1.0))
    throw std::invalid_argument("square-well range lambda must exceed 1");
  if (cutoff && !(*cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");
}

double Potential::energy(double r) const {
  switch (kind) {
    case PotentialKind::Ideal: return 0.0;
    case PotentialKind::HardRod:
    case PotentialKind::HardSphere: return r < sigma ? kInf : 0.0;
    case PotentialKind::SquareWell:
      if (r < sigma) return kInf;
      return r < lambda * sigma ? -epsilon : 0.0;
    case PotentialKind::LennardJones:
      if (cutoff && r >= *cutoff) return 0.0;
      if (r <= 0.0) return kInf;
      return lj_value(sigma, epsilon, r);
  }
  return 0.0;
}

double Potential::boltzmann(double r) const {
  const double v = energy(r);
  return std::isinf(v) ? 0.0 : std::exp(-beta * v);
}

bool Potential::has_hard_core() const noexcept {
  return kind == PotentialKind::HardRod || kind == PotentialKind::HardSphere ||
         kind == PotentialKind::SquareWell;
}

bool Potential::piecewise_constant() const noexcept { return kind != PotentialKind::LennardJones; }

std::vector<double> Potential::breakpoints() const {
  switch (kind) {
    case PotentialKind::Ideal: return {};
    case PotentialKind::HardRod:
    case PotentialKind::HardSphere: return {sigma};
    case PotentialKind::SquareWell: return {sigma, lambda * sigma};
    case PotentialKind::LennardJones: return {};
  }
  return {};
}

std::optional<double> Potential::support_radius() const {
  switch (kind) {
    case PotentialKind::Ideal: return 0.0;
    case PotentialKind::HardRod:
    case PotentialKind::HardSphere: return sigma;
    case PotentialKind::SquareWell: return lambda * sigma;
    case PotentialKind::LennardJones: return cutoff;
  }
  return std::nullopt;
}

std::string Potential::canonical_string() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "kind=%s;sigma=%.17g;epsilon=%.17g;lambda=%.17g;beta=%.17g;dimension=%d;cutoff=%.17g",
                to_string(kind).c_str(), sigma, epsilon, lambda, beta, dimension,
                cutoff ? *cutoff : -1.0);
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Potential::content_hash() const { return fnv1a(canonical_string()); }

double mayer_f(const Potential& p, double r) { return p.boltzmann(r) - 1.0; }

double mayer_fbar(const Potential& p, double r) {
  const double v = p.energy(r);
  if (std::isinf(v)) return 1.0;
  return -std::expm1(-p.beta * std::abs(v));
}

StabilityProfile stability_profile(const Potential& p) {
  switch (p.kind) {
    case PotentialKind::Ideal:
    case PotentialKind::HardRod:
    case PotentialKind::HardSphere: return {};
    case PotentialKind::SquareWell: {
      // Disjoint balls of radius sigma/2 around a particle and its neighbours fit in a
      // ball of radius (lambda + 1/2) sigma.
      const double neighbours =
          std::floor(std::pow(2.0 * p.lambda + 1.0, p.dimension) - 1.0 + 1e-9);
      return {p.beta * 0.5 * p.epsilon * neighbours, p.beta * p.epsilon};
    }
    case PotentialKind::LennardJones: {
      if (!p.cutoff && p.dimension != 3)
        throw UnsupportedStability(
            "unsupported stability derivation: Lennard-Jones without cutoff needs d = 3");
      const double rmin = std::pow(2.0, 1.0 / 6.0) * p.sigma;
      double depth = p.epsilon;
      if (p.cutoff && *p.cutoff <= rmin) depth = -lj_value(p.sigma, p.epsilon, *p.cutoff);
      depth = std::max(0.0, depth);
      const bool attractive = !p.cutoff || *p.cutoff > p.sigma;
      return {attractive ? p.beta * kLennardJonesStability * p.epsilon : 0.0, p.beta * depth};
    }
  }
  return {};
}

double surface_area(int dimension) {
  switch (dimension) {
    case 1: return 2.0;
    case 2: return 2.0 * std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi;
    default: throw std::invalid_argument("dimension must be 1, 2 or 3");
  }
}

double cbar_integral(const Potential& p, int dimension) {
  if (p.is_ideal()) return 0.0;
  return radial_integral(p, dimension, [&](double r) { return mayer_fbar(p, r); });
}

double abs_f_integral(const Potential& p, int dimension) {
  if (p.is_ideal()) return 0.0;
  return radial_integral(p, dimension, [&](double r) { return std::abs(mayer_f(p, r)); });
}

}  // namespace clex
