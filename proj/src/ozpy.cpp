#include "clex/ozpy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clex/estimate.hpp"
#include "clex/radial_transform.hpp"

namespace clex {

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (std::isnan(d)) return d;
    m = std::max(m, d);
  }
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Ng extrapolation from the last three (input, output) pairs, newest first.
std::vector<double> ng_step(const std::vector<std::vector<double>>& in,
                            const std::vector<std::vector<double>>& out) {
  const std::size_t n = in[0].size();
  std::vector<double> d0(n), d01(n), d02(n);
  for (std::size_t i = 0; i < n; ++i) {
    d0[i] = out[0][i] - in[0][i];
    d01[i] = d0[i] - (out[1][i] - in[1][i]);
    d02[i] = d0[i] - (out[2][i] - in[2][i]);
  }
  const double a11 = dot(d01, d01), a12 = dot(d01, d02), a22 = dot(d02, d02);
  const double b1 = dot(d0, d01), b2 = dot(d0, d02);
  const double det = a11 * a22 - a12 * a12;
  if (!(std::abs(det) > 1e-30 * (a11 * a22 + 1e-300))) return out[0];
  const double c1 = (b1 * a22 - b2 * a12) / det;
  const double c2 = (a11 * b2 - a12 * b1) / det;
  std::vector<double> next(n);
  for (std::size_t i = 0; i < n; ++i)
    next[i] = (1.0 - c1 - c2) * out[0][i] + c1 * out[1][i] + c2 * out[2][i];
  return next;
}

double radial_integral(const RadialFunctions& s, std::span<const double> f) {
  const int d = s.grid.dimension;
  double acc = 0.0;
  for (int i = 0; i < s.grid.n_points; ++i) {
    const double w = (i == 0 || i == s.grid.n_points - 1) ? 0.5 : 1.0;
    acc += w * std::pow(s.r[i], d - 1) * f[i];
  }
  return surface_area(d) * s.grid.dr * acc;
}

}  // namespace

void RadialGrid::validate(double sigma) const {
  if (!(dr > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  if (dimension != 1 && dimension != 3) throw std::invalid_argument("radial grid needs d in {1, 3}");
  if (n_points < 4) throw std::invalid_argument("radial grid needs at least 4 points");
  if (r_max() < 10.0 * sigma) throw std::invalid_argument("radial grid must extend to 10 sigma");
}

std::vector<double> boltzmann_on_grid(const Potential& p, const RadialGrid& grid) {
  std::vector<double> e(static_cast<std::size_t>(grid.n_points));
  const auto breaks = p.breakpoints();
  for (int i = 0; i < grid.n_points; ++i) {
    const double r = grid.r(i);
    e[i] = p.boltzmann(r);
    for (double b : breaks)
      if (std::abs(r - b) <= 1e-9 * std::max(1.0, b)) {
        e[i] = 0.5 * (p.boltzmann(b * (1.0 - 1e-12)) + p.boltzmann(b * (1.0 + 1e-12)));
        break;
      }
  }
  return e;
}

RadialFunctions solve_py(const Potential& p, double rho, const RadialGrid& grid,
                         const PySolverOptions& options) {
  p.validate();
  if (grid.dimension != p.dimension)
    throw std::invalid_argument("grid and potential dimensions differ");
  grid.validate(p.sigma);
  if (rho < 0.0) throw std::invalid_argument("density must be nonnegative");
  if (rho * std::pow(p.sigma, grid.dimension) > options.density_cap)
    throw std::invalid_argument("density above the configured cap");
  if (!(options.mixing > 0.0 && options.mixing <= 1.0))
    throw std::invalid_argument("mixing must lie in (0, 1]");
  const auto n = static_cast<std::size_t>(grid.n_points);
  if (options.bridge && options.bridge->size() != n)
    throw std::invalid_argument("bridge function must be sampled on the grid");

  RadialTransform transform(grid.dimension, grid.n_points, grid.dr);
  RadialFunctions s;
  s.grid = grid;
  s.rho = rho;
  s.beta = p.beta;
  s.r.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.r[i] = grid.r(static_cast<int>(i));
  s.e = boltzmann_on_grid(p, grid);
  const std::vector<double> zero(n, 0.0);
  const auto& d = options.bridge ? *options.bridge : zero;

  std::vector<double> y(n, 1.0), c(n), h(n), t(n), y_new(n);
  auto apply = [&](const std::vector<double>& y_in) {
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = (s.e[i] - 1.0) * y_in[i] + d[i];
      h[i] = s.e[i] * y_in[i] - 1.0;
    }
    t = transform.convolve(c, h, rho);
    for (std::size_t i = 0; i < n; ++i) y_new[i] = 1.0 + t[i] + d[i];
  };

  std::vector<std::vector<double>> hist_in, hist_out;
  double residual = 0.0;
  for (long it = 1; it <= options.max_iter; ++it) {
    apply(y);
    residual = max_abs_diff(y_new, y);
    s.iterations = it;
    if (!std::isfinite(residual)) throw NonConvergence("PY iteration diverged", residual);
    if (residual < options.tol) {
      y = y_new;
      break;
    }
    if (options.ng_acceleration) {
      hist_in.insert(hist_in.begin(), y);
      hist_out.insert(hist_out.begin(), y_new);
      if (hist_in.size() > 3) {
        hist_in.pop_back();
        hist_out.pop_back();
      }
    }
    if (options.ng_acceleration && hist_in.size() == 3 && it % 4 == 0) {
      y = ng_step(hist_in, hist_out);
    } else {
      for (std::size_t i = 0; i < n; ++i)
        y[i] = options.mixing * y_new[i] + (1.0 - options.mixing) * y[i];
    }
    if (it == options.max_iter)
      throw NonConvergence("PY iteration did not converge within max_iter", residual);
  }
  apply(y);
  s.residual = max_abs_diff(y_new, y);
  s.y = y;
  s.c = c;
  s.h = h;
  s.t = t;
  s.g.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.g[i] = s.e[i] * y[i];
    if (s.g[i] < -1e-12) s.negative_g = true;
  }
  return s;
}

std::vector<double> closure_residual(const RadialFunctions& s) {
  std::vector<double> m(s.r.size());
  for (std::size_t i = 0; i < s.r.size(); ++i) m[i] = s.c[i] - (s.e[i] - 1.0) * (1.0 + s.t[i]);
  return m;
}

std::vector<double> closure_remainder(const Potential& p, const RadialFunctions& s,
                                      std::span<const CorrelationSeries> c_series) {
  std::vector<double> out;
  for (const auto& cs : c_series) {
    if (cs.n_points != 2 || cs.variable != SeriesVariable::Density)
      throw std::invalid_argument("closure remainder needs a two-point density series");
    const double r = std::hypot(cs.positions[1][0] - cs.positions[0][0],
                                cs.positions[1][1] - cs.positions[0][1],
                                cs.positions[1][2] - cs.positions[0][2]);
    const double x = r / s.grid.dr;
    const auto i = static_cast<std::size_t>(std::floor(x));
    if (i + 1 >= s.t.size()) throw std::out_of_range("separation outside the radial grid");
    const double w = x - double(i);
    const double t = (1.0 - w) * s.t[i] + w * s.t[i + 1];
    double c = 0.0;
    double rk = 1.0;
    for (double v : cs.values) {
      c += rk * v;
      rk *= s.rho;
    }
    out.push_back(c - mayer_f(p, r) * (1.0 + t));
  }
  return out;
}

Thermodynamics thermodynamics(const Potential& p, const RadialFunctions& s) {
  const int d = s.grid.dimension;
  const double dr = s.grid.dr;
  double sum = 0.0;
  for (std::size_t i = 1; i < s.r.size(); ++i) {
    const double r = s.r[i];
    const double de = p.boltzmann(r + 0.5 * dr) - p.boltzmann(r - 0.5 * dr);
    if (de != 0.0) sum += std::pow(r, d) * s.y[i] * de;
  }
  Thermodynamics out;
  out.pressure_virial = s.rho + s.rho * s.rho * surface_area(d) / (2.0 * d) * sum;
  out.compressibility = 1.0 - s.rho * radial_integral(s, s.c);
  out.B2_effective = s.rho > 0.0 ? (out.pressure_virial / s.rho - 1.0) / s.rho
                                 : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double oz_self_consistency(const RadialFunctions& s) {
  RadialTransform transform(s.grid.dimension, s.grid.n_points, s.grid.dr);
  const auto conv = transform.convolve(s.c, s.h, s.rho);
  double m = 0.0;
  // r = 0 is extrapolated in d = 3 and excluded there.
  const std::size_t start = s.grid.dimension == 3 ? 1 : 0;
  for (std::size_t i = start; i < s.r.size(); ++i) {
    const double d = std::abs(s.h[i] - s.c[i] - conv[i]);
    if (std::isnan(d)) return d;
    m = std::max(m, d);
  }
  return m;
}

}  // namespace clex
