#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace clex {

enum class EstimateMethod { Exact1D, MonteCarlo, Quadrature };

std::string to_string(EstimateMethod m);
EstimateMethod parse_estimate_method(const std::string& name);

struct CoefficientEstimate {
  double value = 0.0;
  double std_error = 0.0;
  EstimateMethod method = EstimateMethod::Exact1D;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static CoefficientEstimate exact(double v) { return {v, 0.0, EstimateMethod::Exact1D, 0, 0}; }
  bool is_exact() const noexcept { return method != EstimateMethod::MonteCarlo; }
};

// Sum of independent estimates; errors add in quadrature.
inline CoefficientEstimate& accumulate(CoefficientEstimate& acc, const CoefficientEstimate& x,
                                       double scale = 1.0) {
  acc.value += scale * x.value;
  acc.std_error = std::hypot(acc.std_error, scale * x.std_error);
  if (x.method == EstimateMethod::MonteCarlo) acc.method = EstimateMethod::MonteCarlo;
  acc.samples += x.samples;
  return acc;
}

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

}  // namespace clex
