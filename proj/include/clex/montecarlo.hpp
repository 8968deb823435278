#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "clex/estimate.hpp"
#include "clex/graph.hpp"
#include "clex/potential.hpp"

namespace clex {

using Point = std::array<double, 3>;

struct McOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  int shards = 1;
  // Estimates with std_error / |value| above this raise NonConvergence.
  double max_relative_error = std::numeric_limits<double>::infinity();
};

// Displacement proposal with radial density proportional to fbar (histogrammed for
// smooth potentials) and uniform direction.
class RadialProposal {
 public:
  RadialProposal(const Potential& p, int dimension);

  // Draws a displacement into `out` and returns its density.
  double sample(std::mt19937_64& rng, Point& out) const;
  double density(double r) const;
  double mass() const noexcept { return mass_; }
  double max_radius() const noexcept { return edges_.back(); }

 private:
  int d_;
  std::vector<double> edges_;
  std::vector<double> cumulative_;
  std::vector<double> density_;
  double mass_ = 0.0;
};

// Untruncated Lennard-Jones tails are ignored beyond this radius (in units of sigma).
inline constexpr double kMonteCarloRange = 5.0;

double distance(const Point& a, const Point& b, int dimension);

CoefficientEstimate graph_weight_mc(const Graph& g, const Potential& p, int dimension,
                                    std::span<const Point> roots, const McOptions& options);

}  // namespace clex
