#pragma once

#include <span>
#include <string>

#include "clex/montecarlo.hpp"
#include "clex/potential.hpp"

namespace clex {

struct TreeGraphCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// |sum over connected graphs of prod f| against e^{nB} times the spanning-tree sum of fbar.
TreeGraphCheck tree_graph_check(const Potential& p, std::span<const Point> points);

enum class ConditionKind { ActivityScalar, CanonicalDensity };

std::string to_string(ConditionKind kind);

struct ConvergenceCertificate {
  double bound_value = 0.0;  // max activity, or max rho * C for the canonical condition
  double weight_a = 0.0;     // optimal a (activity) or c (canonical)
  ConditionKind kind = ConditionKind::ActivityScalar;
  bool unbounded = false;
  double integral = 0.0;     // Cbar for the activity condition, C for the canonical one
  double stability = 0.0;    // beta B
  std::string potential;

  // Largest certified density (canonical) or activity (activity condition).
  double max_parameter() const;
};

// Cbar z e^{a + B} <= a.
bool activity_condition_holds(double z, double a, double cbar, double stability);
ConvergenceCertificate activity_radius(const Potential& p, int dimension);

// Sum over n >= 2 of n^{n-2}/(n-1)! y^{n-1}, i.e. T(y)/y - 1 with T(y) = y e^{T(y)}.
double tree_series_tail(double y);
// e^{c+B} (T(y)/y - 1) <= c with y = x e^{c+B}.
bool canonical_condition_holds(double x, double c, double stability);
ConvergenceCertificate canonical_radius(const Potential& p, int dimension);

struct FixpointResult {
  double value = 1.0;
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

class FixedPointMissing : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Smallest positive root of T = exp(Cbar z e^{B} T) by monotone iteration from 1.
FixpointResult rooted_tree_fixpoint(const Potential& p, double z, double tol = 1e-13,
                                    long max_iter = 20'000'000);

}  // namespace clex
