#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "crep/modulus.hpp"
#include "crep/transport.hpp"

namespace crep {

/// Real function sampled on a strictly increasing grid.
class GridFn {
 public:
  GridFn(std::vector<double> grid, std::vector<double> values);

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return grid_.size(); }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

/// Real-valued function on the points of a finite metric space.
class RealFunctionOnSpace {
 public:
  RealFunctionOnSpace(FiniteMetricSpace space, std::vector<double> values);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  /// max |f(x) - f(y)| / d(x, y) over x != y.
  double lipschitz_constant() const;

 private:
  FiniteMetricSpace space_;
  std::vector<double> values_;
};

/// h*(s) = max over grid points t of (s t - h(t)).
GridFn fenchel_conjugate(const GridFn& h, std::span<const double> s_grid);

/// Slopes of the lower convex hull of h ({0} for a single point).
std::vector<double> hull_slope_grid(const GridFn& h);

/// h** on h's grid. For a grid function this is its lower convex envelope: the
/// value at hull vertices is h itself, linear in between. The literal double
/// conjugate over hull_slope_grid(h) agrees with it to rounding.
GridFn biconjugate(const GridFn& h);

/// Literal double conjugate sup_s (s t - h*(s)) over the given slope grid.
GridFn double_conjugate(const GridFn& h, std::span<const double> s_grid);

/// delta(s) = 1/2 sup_{t >= 0} (omega(t) - s t).
double delta_from_modulus(const ConcaveFn& omega, double s);

/// Hull slopes of omega together with 0 and the largest slope.
std::vector<double> default_slope_grid(const ConcaveFn& omega);

/// delta sampled on a slope grid.
GridFn delta_on_grid(const ConcaveFn& omega, std::span<const double> s_grid);

/// omega(t) = min over the s-grid of (2 delta(s) + s t).
GridFn reconstruct_modulus(const GridFn& delta, std::span<const double> t_grid);

/// Concave majorant of the classical modulus of f on its space.
ConcaveFn classical_modulus(const RealFunctionOnSpace& f);

struct LipRegularization {
  RealFunctionOnSpace regularized;
  double delta;
  /// Largest |f_s(x) - f_s(y)| - s d(x, y), should be <= 0.
  double lipschitz_excess;
  /// ||f - f_s||_inf.
  double sup_deviation;
  bool lipschitz_certified;
  bool deviation_certified;
};

inline constexpr double kLipschitzTolerance = 1e-10;
inline constexpr double kDeviationTolerance = 1e-9;

/// f_s = delta(s) + min_y (f(y) + s d(., y)) with its certificates.
LipRegularization lip_regularize(const RealFunctionOnSpace& f, double s, const ConcaveFn& omega_f);

/// inf { ||f - u||_inf : Lip(u) <= s } by linear programming.
double distance_to_lipschitz_ball(const RealFunctionOnSpace& f, double s);

/// Pairs of representations of C(X) on a common C^m. Pairs cycle through point
/// representations, shared multiplicities with independent Haar conjugators,
/// independent multiplicities, and small perturbations of one another.
std::vector<RepPair> sample_commutative_pairs(const FiniteMetricSpace& x, std::size_t count,
                                              std::size_t ambient_dim, Seed seed);

/// Centered 1-Lipschitz functions (f_s / s) for every positive s in the slope
/// grid of omega_f.
std::vector<AlgebraElement> regularization_generators(const RealFunctionOnSpace& f,
                                                      const ConcaveFn& omega_f);

struct SandwichReport {
  /// max over samples of ||Delta u|| - omega_u(d_K) (real part).
  double real_residual = 0.0;
  /// max over samples of ||Delta f|| - 2 omega_f(d_K), f = u + i v.
  double complex_residual = 0.0;
  /// Same for the imaginary part alone.
  double imag_residual = 0.0;
  /// Step function of real-part Rep samples minus omega_u on the comparison grid.
  double real_step_residual = 0.0;
  double complex_step_residual = 0.0;
  std::size_t samples = 0;
  std::size_t generators = 0;
};

/// Checks omega_u^Rep <= omega_u and omega_f^Rep <= 2 omega_f on sampled pairs.
/// K is extended by the regularizations of u and v, which keeps every element
/// 1-Lipschitz; these are the functions the duality argument feeds into d_K.
SandwichReport sandwich_check(const RealFunctionOnSpace& u, const RealFunctionOnSpace& v,
                              std::span<const RepPair> pairs, const GeneratingSet& k);

/// CSV with header s_or_t,value.
void write_gridfn_csv(std::ostream& out, const GridFn& f);

}  // namespace crep
