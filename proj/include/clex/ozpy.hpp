#pragma once

#include <optional>
#include <span>
#include <vector>

#include "clex/correlations.hpp"
#include "clex/potential.hpp"

namespace clex {

struct RadialGrid {
  double dr = 0.005;
  int n_points = 4096;
  int dimension = 3;

  double r(int i) const noexcept { return i * dr; }
  double r_max() const noexcept { return dr * n_points; }
  void validate(double sigma) const;
};

struct PySolverOptions {
  double mixing = 0.5;
  double tol = 1e-10;
  long max_iter = 20000;
  bool ng_acceleration = false;
  // Largest accepted rho sigma^d.
  double density_cap = 0.9;
  // Optional d(r) on the grid; PY when absent.
  std::optional<std::vector<double>> bridge;
};

struct RadialFunctions {
  RadialGrid grid;
  double rho = 0.0;
  double beta = 1.0;
  std::vector<double> r, h, c, t, g, y, e;
  long iterations = 0;
  double residual = 0.0;
  bool negative_g = false;
};

// e^{-beta V} on the grid; points sitting on a discontinuity take the mean of both sides.
std::vector<double> boltzmann_on_grid(const Potential& p, const RadialGrid& grid);

// Picard iteration of y = 1 + d + rho [f y + d] * [e y - 1]. Throws NonConvergence.
RadialFunctions solve_py(const Potential& p, double rho, const RadialGrid& grid = {},
                         const PySolverOptions& options = {});

// c - f (1 + t) on the grid.
std::vector<double> closure_residual(const RadialFunctions& s);
// m(r) = sum_k rho^k c_k(r) - f(r)(1 + t(r)) at each series' separation, with t
// interpolated linearly from the solution.
std::vector<double> closure_remainder(const Potential& p, const RadialFunctions& s,
                                      std::span<const CorrelationSeries> c_series);

struct Thermodynamics {
  double pressure_virial = 0.0;  // beta P
  double compressibility = 0.0;  // d(beta P)/d rho = 1 - rho int c
  double B2_effective = 0.0;     // (beta P / rho - 1) / rho
};

Thermodynamics thermodynamics(const Potential& p, const RadialFunctions& s);

// max |h - c - rho c * h| recomputed on the grid.
double oz_self_consistency(const RadialFunctions& s);

}  // namespace clex
