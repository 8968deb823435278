#include "clex/radial_transform.hpp"

#include <fftw3.h>

#include <numbers>
#include <stdexcept>

namespace clex {

namespace {

struct FftwFree {
  void operator()(double* p) const noexcept { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<double[], FftwFree>;

FftwBuffer allocate(int n) {
  auto* p = static_cast<double*>(fftw_malloc(sizeof(double) * static_cast<std::size_t>(n)));
  if (!p) throw std::bad_alloc();
  return FftwBuffer(p);
}

}  // namespace

struct RadialTransform::Plan {
  int length;
  FftwBuffer in;
  FftwBuffer out;
  fftw_plan plan = nullptr;

  Plan(int len, fftw_r2r_kind kind) : length(len), in(allocate(len)), out(allocate(len)) {
    plan = fftw_plan_r2r_1d(len, in.get(), out.get(), kind, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("FFTW plan creation failed");
  }
  ~Plan() { fftw_destroy_plan(plan); }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

RadialTransform::RadialTransform(int dimension, int n, double dr) : d_(dimension), n_(n), dr_(dr) {
  if (dimension != 1 && dimension != 3) throw std::invalid_argument("radial transform needs d in {1, 3}");
  if (n < 4) throw std::invalid_argument("radial grid needs at least 4 points");
  if (!(dr > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  plan_ = dimension == 3 ? std::make_unique<Plan>(n - 1, FFTW_RODFT00)
                         : std::make_unique<Plan>(n, FFTW_REDFT00);
}

RadialTransform::~RadialTransform() = default;
RadialTransform::RadialTransform(RadialTransform&&) noexcept = default;
RadialTransform& RadialTransform::operator=(RadialTransform&&) noexcept = default;

double RadialTransform::dk() const noexcept {
  return d_ == 3 ? std::numbers::pi / (n_ * dr_) : std::numbers::pi / ((n_ - 1) * dr_);
}

std::vector<double> RadialTransform::forward(std::span<const double> f) {
  if (static_cast<int>(f.size()) != n_) throw std::invalid_argument("grid size mismatch");
  std::vector<double> F(static_cast<std::size_t>(n_), 0.0);
  double* in = plan_->in.get();
  double* out = plan_->out.get();
  if (d_ == 3) {
    for (int i = 1; i < n_; ++i) in[i - 1] = i * dr_ * f[i];
    fftw_execute(plan_->plan);
    for (int m = 1; m < n_; ++m) F[m] = 2.0 * std::numbers::pi * dr_ / k(m) * out[m - 1];
  } else {
    for (int i = 0; i < n_; ++i) in[i] = f[i];
    fftw_execute(plan_->plan);
    for (int m = 0; m < n_; ++m) F[m] = dr_ * out[m];
  }
  return F;
}

std::vector<double> RadialTransform::inverse(std::span<const double> F) {
  if (static_cast<int>(F.size()) != n_) throw std::invalid_argument("grid size mismatch");
  std::vector<double> f(static_cast<std::size_t>(n_), 0.0);
  double* in = plan_->in.get();
  double* out = plan_->out.get();
  if (d_ == 3) {
    for (int m = 1; m < n_; ++m) in[m - 1] = k(m) * F[m];
    fftw_execute(plan_->plan);
    const double pref = dk() / (4.0 * std::numbers::pi * std::numbers::pi);
    for (int i = 1; i < n_; ++i) f[i] = pref * out[i - 1] / (i * dr_);
    f[0] = 3.0 * f[1] - 3.0 * f[2] + f[3];
  } else {
    for (int m = 0; m < n_; ++m) in[m] = F[m];
    fftw_execute(plan_->plan);
    for (int i = 0; i < n_; ++i) f[i] = dk() / (2.0 * std::numbers::pi) * out[i];
  }
  return f;
}

std::vector<double> RadialTransform::convolve(std::span<const double> a, std::span<const double> b,
                                              double scale) {
  auto A = forward(a);
  const auto B = forward(b);
  for (int m = 0; m < n_; ++m) A[m] *= scale * B[m];
  return inverse(A);
}

}  // namespace clex
