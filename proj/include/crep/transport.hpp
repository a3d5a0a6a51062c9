#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crep/modulus.hpp"
#include "crep/reps.hpp"

namespace crep {

/// Finite metric space with labelled points and a row-major distance table.
class FiniteMetricSpace {
 public:
  static constexpr double kTriangleTolerance = 1e-12;

  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist);

  /// Points labelled "0".."n-1".
  static FiniteMetricSpace from_matrix(std::size_t n, std::vector<double> dist);

  /// Euclidean distances between n uniform points of the unit square.
  static FiniteMetricSpace random_euclidean(std::size_t n, Rng& rng);

  std::size_t size() const noexcept { return labels_.size(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  double dist(std::size_t x, std::size_t y) const { return d_[x * size() + y]; }
  std::span<const double> dist_row_major() const noexcept { return d_; }
  double diameter() const noexcept;
  /// Index of a label; throws UnknownPoint.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const FiniteMetricSpace&, const FiniteMetricSpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> d_;
};

/// Probability measure on a finite metric space.
class Measure {
 public:
  static constexpr double kMassTolerance = 1e-12;

  Measure(FiniteMetricSpace space, std::vector<double> weights);

  static Measure dirac(const FiniteMetricSpace& space, std::size_t x);
  static Measure random(const FiniteMetricSpace& space, Rng& rng);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  std::span<const double> weights() const noexcept { return w_; }

 private:
  FiniteMetricSpace space_;
  std::vector<double> w_;
};

/// C(X) = C^{|X|} as an algebra of |X| one-dimensional blocks.
FdAlgebra commutative_algebra(const FiniteMetricSpace& x);

/// Function on X as a diagonal algebra element.
AlgebraElement function_element(const FiniteMetricSpace& x, std::span<const Complex> values);
AlgebraElement function_element(const FiniteMetricSpace& x, std::span<const double> values);

/// The |X| distance functions d(x, .), a verified generating set of C(X).
GeneratingSet lipschitz_generators(const FiniteMetricSpace& x);

/// pi_x(f) = f(x) I on C^{ambient_mult}.
Representation point_rep(const FiniteMetricSpace& x, std::size_t point, std::size_t ambient_mult);
Representation point_rep(const FiniteMetricSpace& x, std::string_view label,
                         std::size_t ambient_mult);

/// max over the distance functions f of |f(x) - f(y)|.
double separating_sup(const FiniteMetricSpace& x, std::size_t p, std::size_t q);

/// Raw classical modulus samples (d(x, y), |f(x) - f(y)|) over ordered pairs x != y.
EmpiricalModulus function_modulus(const FiniteMetricSpace& x, std::span<const Complex> values);
EmpiricalModulus function_modulus(const FiniteMetricSpace& x, std::span<const double> values);

struct KantorovichResult {
  double value;
  /// Optimal 1-Lipschitz potential, shifted so that its minimum is zero.
  std::vector<double> potential;
};

/// sup over 1-Lipschitz f of sum_x f(x)(mu(x) - nu(x)), solved as a linear program.
KantorovichResult kantorovich(const Measure& mu, const Measure& nu);

/// Minimal transport cost over couplings of (mu, nu) via successive shortest
/// paths on the bipartite transport network; independent of kantorovich().
double kantorovich_primal_oracle(const Measure& mu, const Measure& nu);

/// Image measure f_* mu for a map given as target indices.
Measure pushforward(const Measure& mu, std::span<const std::size_t> map,
                    const FiniteMetricSpace& target);

}  // namespace crep
