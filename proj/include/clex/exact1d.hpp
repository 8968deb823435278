#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "clex/potential.hpp"

namespace clex {

class NeedsMonteCarlo : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class PairFactor { Mayer, Boltzmann };  // f or 1 + f

struct PairTerm {
  int a = 0;
  int b = 0;
  PairFactor factor = PairFactor::Mayer;
};

// Integral over the black coordinates of a product of pair factors on the line or on a
// ring of circumference L. Vertices [0, white_positions.size()) are fixed.
struct CellProblem {
  int n_vertices = 0;
  std::vector<double> white_positions;
  std::vector<PairTerm> terms;
  std::optional<double> ring_length;
};

// Exact for piecewise-constant potentials whose breakpoints (and the ring length) are
// commensurate. Throws NeedsMonteCarlo otherwise.
double integrate_cells(const Potential& p, const CellProblem& problem);

// Grid unit delta such that every breakpoint and the ring length are integer multiples.
double commensurate_unit(const Potential& p, std::optional<double> ring_length);

double periodic_distance(double d, double ring_length);

}  // namespace clex
