#include "clex/convergence.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "clex/cluster.hpp"

namespace clex {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kTailCutoff = 1e-16;
constexpr long kTailMaxTerms = 2'000'000;
// Keeps the tree series comfortably inside its disc of convergence.
constexpr double kMaxTreeArgument = 0.999 / kE;

double canonical_gap(double x, double c, double stability) {
  const double growth = std::exp(c + stability);
  const double y = x * growth;
  if (y > kMaxTreeArgument) return std::numeric_limits<double>::infinity();
  return growth * tree_series_tail(y) - c;
}

// Minimizes the canonical gap over c; returns {c, gap}.
std::pair<double, double> best_c(double x, double stability) {
  const double c_hi = std::log(kMaxTreeArgument / x) - stability;
  if (!(c_hi > 0.0)) return {0.0, std::numeric_limits<double>::infinity()};
  constexpr int kGrid = 200;
  int best = 1;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= kGrid; ++i) {
    const double g = canonical_gap(x, c_hi * i / kGrid, stability);
    if (g < best_gap) {
      best_gap = g;
      best = i;
    }
  }
  const double lo = c_hi * (best - 1) / kGrid;
  const double hi = c_hi * std::min(best + 1, kGrid) / kGrid;
  auto r = boost::math::tools::brent_find_minima(
      [&](double c) { return canonical_gap(x, c, stability); }, std::max(lo, 1e-300), hi, 50);
  if (r.second < best_gap) return {r.first, r.second};
  return {c_hi * best / kGrid, best_gap};
}

// Whether the pairs with nonzero fbar connect all points.
bool support_connected(const Potential& p, std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  std::vector<int> stack{0};
  std::vector<bool> seen(points.size(), false);
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j)
      if (!seen[j] && mayer_fbar(p, distance(points[i], points[j], p.dimension)) > 0.0) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
  }
  return reached == n;
}

}  // namespace

std::string to_string(ConditionKind kind) {
  return kind == ConditionKind::ActivityScalar ? "activity-scalar" : "canonical-density";
}

double ConvergenceCertificate::max_parameter() const {
  if (unbounded) return std::numeric_limits<double>::infinity();
  if (kind == ConditionKind::ActivityScalar) return bound_value;
  return bound_value / integral;
}

TreeGraphCheck tree_graph_check(const Potential& p, std::span<const Point> points) {
  const double n = static_cast<double>(points.size());
  // Both sides vanish identically when some point interacts with no cluster of the others.
  if (points.size() > 1 && !support_connected(p, points)) return {0.0, 0.0, true};
  const double lhs = std::abs(phi_T_recursive(p, points));
  const double rhs = std::exp(n * stability_profile(p).B) * tree_sum_fbar(p, points);
  return {lhs, rhs, lhs <= rhs * (1.0 + 1e-12)};
}

bool activity_condition_holds(double z, double a, double cbar, double stability) {
  return cbar * z * std::exp(a + stability) <= a;
}

ConvergenceCertificate activity_radius(const Potential& p, int dimension) {
  ConvergenceCertificate cert;
  cert.kind = ConditionKind::ActivityScalar;
  cert.integral = cbar_integral(p, dimension);
  cert.stability = stability_profile(p).B;
  cert.potential = p.canonical_string();
  cert.weight_a = 1.0;
  if (cert.integral == 0.0) {
    cert.unbounded = true;
    cert.bound_value = std::numeric_limits<double>::infinity();
    return cert;
  }
  cert.bound_value = 1.0 / (kE * cert.integral * std::exp(cert.stability));
  return cert;
}

double tree_series_tail(double y) {
  if (y < 0.0 || y > 1.0 / kE) throw std::domain_error("tree series argument outside [0, 1/e]");
  double sum = 0.0;
  double term = y;  // n = 2: 2^1 / 2! y
  for (long n = 2; n < kTailMaxTerms; ++n) {
    sum += term;
    if (term < kTailCutoff) break;
    term *= std::pow(1.0 + 1.0 / double(n), double(n - 1)) * y;
  }
  return sum;
}

bool canonical_condition_holds(double x, double c, double stability) {
  return canonical_gap(x, c, stability) <= 0.0;
}

ConvergenceCertificate canonical_radius(const Potential& p, int dimension) {
  ConvergenceCertificate cert;
  cert.kind = ConditionKind::CanonicalDensity;
  cert.integral = abs_f_integral(p, dimension);
  cert.stability = stability_profile(p).B;
  cert.potential = p.canonical_string();
  if (cert.integral == 0.0) {
    cert.unbounded = true;
    cert.bound_value = std::numeric_limits<double>::infinity();
    return cert;
  }
  double lo = 0.0;
  double hi = kMaxTreeArgument * std::exp(-cert.stability);
  double c_at_lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto [c, gap] = best_c(mid, cert.stability);
    if (gap <= 0.0) {
      lo = mid;
      c_at_lo = c;
    } else {
      hi = mid;
    }
  }
  cert.bound_value = lo;
  cert.weight_a = c_at_lo;
  return cert;
}

FixpointResult rooted_tree_fixpoint(const Potential& p, double z, double tol, long max_iter) {
  if (z < 0.0) throw std::invalid_argument("activity must be nonnegative");
  const double w = cbar_integral(p, p.dimension) * z * std::exp(stability_profile(p).B);
  FixpointResult out;
  double t = 1.0;
  for (long k = 1; k <= max_iter; ++k) {
    const double next = std::exp(w * t);
    if (next > kE * (1.0 + 1e-9))
      throw FixedPointMissing("fixed point does not exist: iteration exceeded e");
    const double step = std::abs(next - t);
    t = next;
    out.iterations = k;
    if (step <= tol * t) {
      out.converged = true;
      break;
    }
  }
  out.value = t;
  out.residual = std::abs(t - std::exp(w * t));
  return out;
}

}  // namespace clex
