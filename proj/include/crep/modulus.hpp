#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "crep/reps.hpp"

namespace crep {

struct ModulusSample {
  double distance;
  double deviation;
};

/// Finite-sample version of f^K_L: the samples (d_K(pi, pi'), ||pi(a) - pi'(a)||)
/// and their running-max step function. Because it maximizes over a finite
/// subset of pairs it is a lower bound for the true supremum.
class EmpiricalModulus {
 public:
  explicit EmpiricalModulus(std::vector<ModulusSample> samples);

  std::span<const ModulusSample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double max_distance() const noexcept;
  double max_deviation() const noexcept;

  /// max{v_j : t_j <= t}; zero at t = 0 by convention.
  double step_eval(double t) const;

  /// Pointwise scaling of deviations (used for |lambda| identities).
  EmpiricalModulus scaled(double factor) const;

 private:
  std::vector<ModulusSample> samples_;  // sorted by distance
  std::vector<double> running_max_;
};

struct Breakpoint {
  double t;
  double value;
};

/// Piecewise-linear concave nondecreasing function with value 0 at 0, constant
/// beyond its last breakpoint.
class ConcaveFn {
 public:
  /// Validates the breakpoints; slack is the absolute tolerance for the
  /// monotonicity and concavity checks.
  explicit ConcaveFn(std::vector<Breakpoint> breakpoints, double slack = 1e-12);

  static ConcaveFn zero();
  /// min(slope * t, cap).
  static ConcaveFn capped_linear(double slope, double cap);

  std::span<const Breakpoint> breakpoints() const noexcept { return bp_; }
  double operator()(double t) const;
  /// Value on the constant tail.
  double sup() const noexcept { return bp_.back().value; }
  /// Segment slopes, first to last (nonincreasing).
  std::vector<double> slopes() const;

 private:
  std::vector<Breakpoint> bp_;
};

EmpiricalModulus empirical_modulus(std::span<const RepPair> pairs, const GeneratingSet& k,
                                   std::span<const AlgebraElement> l);

/// Same, reusing precomputed d_K per pair.
EmpiricalModulus empirical_modulus(std::span<const RepPair> pairs,
                                   std::span<const double> distances,
                                   std::span<const AlgebraElement> l);

/// Least concave nondecreasing majorant through (0, 0) of the samples.
ConcaveFn concave_majorant(const EmpiricalModulus& f);

/// outer o inner, exact on the piecewise-linear structure.
ConcaveFn compose_modulus(const ConcaveFn& outer, const ConcaveFn& inner);

/// Pointwise sum and nonnegative scaling; both preserve concavity.
ConcaveFn add(const ConcaveFn& f, const ConcaveFn& g);
ConcaveFn scale(const ConcaveFn& f, double factor);

inline constexpr std::size_t kUniformGridPoints = 64;

/// Union of all breakpoints plus kUniformGridPoints uniform points on [0, t_max].
std::vector<double> comparison_grid(std::span<const ConcaveFn* const> fns, double t_max);

struct CalculusReport {
  // Equalities: omega_{a + lambda 1} = omega_a = omega_{a*} and omega_{lambda a} = |lambda| omega_a.
  double unit_shift_residual = 0.0;
  double adjoint_residual = 0.0;
  double scaling_residual = 0.0;
  // One-sided: max(0, LHS - RHS) for the sum and product rules.
  double sum_residual = 0.0;
  double product_residual = 0.0;
  // omega of the unit, expected identically zero.
  double unit_modulus_sup = 0.0;
  std::size_t sample_pairs = 0;

  double max_equality_residual() const;
  double max_inequality_residual() const;
};

CalculusReport modulus_calculus_report(std::span<const RepPair> pairs, const GeneratingSet& k,
                                       const AlgebraElement& a, const AlgebraElement& b,
                                       Complex lambda);

/// max over the comparison grid of max(0, w^{K'}_a - w^K_a o w^{K'}_K).
double chain_inequality_check(std::span<const RepPair> pairs, const GeneratingSet& k,
                              const GeneratingSet& k2, const AlgebraElement& a);

/// max over pairs of max(0, d_{K'} - w^K_{K'}(d_K)).
double uniform_equivalence_residual(std::span<const RepPair> pairs, const GeneratingSet& k,
                                    const GeneratingSet& k2);

/// CSV with header t,step_value,hull_value on the comparison grid.
void write_modulus_csv(std::ostream& out, const EmpiricalModulus& f, const ConcaveFn& hull);

}  // namespace crep
