#pragma once

#include <memory>
#include <span>
#include <vector>

namespace clex {

// Fourier transform of radial functions sampled at r_i = i dr, i = 0..n-1. In d = 3 the
// transform reduces to a sine series of r f(r) on the interior points; in d = 1 to a
// cosine series. Index m of the reciprocal grid sits at k(m); in d = 3 the k = 0 slot
// is not represented and stays zero.
class RadialTransform {
 public:
  RadialTransform(int dimension, int n, double dr);
  ~RadialTransform();
  RadialTransform(RadialTransform&&) noexcept;
  RadialTransform& operator=(RadialTransform&&) noexcept;
  RadialTransform(const RadialTransform&) = delete;
  RadialTransform& operator=(const RadialTransform&) = delete;

  int dimension() const noexcept { return d_; }
  int size() const noexcept { return n_; }
  double dr() const noexcept { return dr_; }
  double dk() const noexcept;
  double k(int m) const noexcept { return m * dk(); }

  std::vector<double> forward(std::span<const double> f);
  std::vector<double> inverse(std::span<const double> F);
  // rho (a * b) via the reciprocal grid.
  std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                               double scale = 1.0);

 private:
  struct Plan;
  int d_;
  int n_;
  double dr_;
  std::unique_ptr<Plan> plan_;
};

}  // namespace clex
