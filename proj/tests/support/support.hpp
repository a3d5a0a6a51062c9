#pragma once

// Random instance generators and independent oracles shared by the unit and
// acceptance tests. Oracles avoid the library routine they check.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "crep/algebra.hpp"
#include "crep/modulus.hpp"
#include "crep/reps.hpp"

namespace support {

using crep::Complex;
using crep::Rng;

/// True iff f() throws crep::Error of the given kind.
template <class F>
bool throws_kind(F&& f, crep::ErrorKind kind) {
  try {
    f();
  } catch (const crep::Error& e) {
    return e.kind() == kind;
  }
  return false;
}

inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline crep::FdAlgebra random_algebra(Rng& rng, std::size_t max_blocks, std::size_t max_dim) {
  std::vector<std::size_t> dims(uniform_size(rng, 1, max_blocks));
  for (auto& d : dims) d = uniform_size(rng, 1, max_dim);
  return crep::FdAlgebra(dims);
}

inline std::vector<crep::AlgebraElement> random_elements(const crep::FdAlgebra& alg, Rng& rng,
                                                         std::size_t count) {
  std::vector<crep::AlgebraElement> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(crep::AlgebraElement::random(alg, rng));
  return out;
}

/// Two random elements generate any FdAlgebra almost surely; certified here.
inline crep::GeneratingSet random_generating_set(const crep::FdAlgebra& alg, Rng& rng,
                                                 std::size_t count = 2) {
  return crep::certify(crep::GeneratingSet(alg, random_elements(alg, rng, count)));
}

/// Unital *-homomorphism from `src` into a random target: each target block
/// holds a random nonzero multiplicity row over the source blocks.
inline crep::Homomorphism random_homomorphism(const crep::FdAlgebra& src, Rng& rng,
                                              std::size_t max_target_blocks = 2) {
  const std::size_t t = uniform_size(rng, 1, max_target_blocks);
  std::vector<std::vector<std::size_t>> c(t, std::vector<std::size_t>(src.block_count()));
  std::vector<std::size_t> dims(t);
  std::vector<crep::Unitary> w;
  for (std::size_t j = 0; j < t; ++j) {
    std::size_t dim = 0;
    while (dim == 0) {
      dim = 0;
      for (std::size_t i = 0; i < src.block_count(); ++i) {
        c[j][i] = uniform_size(rng, 0, 2);
        dim += c[j][i] * src.block_dim(i);
      }
    }
    dims[j] = dim;
    w.push_back(crep::haar_unitary(dim, rng));
  }
  return crep::Homomorphism(src, crep::FdAlgebra(dims), c, w);
}

/// Largest singular value by power iteration on A* A (no SVD).
inline double power_norm(const Eigen::MatrixXcd& a, int iterations = 3000) {
  const Eigen::MatrixXcd g = a.adjoint() * a;
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(a.cols());
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) += Complex(0.1 * static_cast<double>(k), 0.03);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXcd w = g * v;
    const double n = w.norm();
    if (n == 0.0) return 0.0;
    lambda = n;
    v = w / n;
  }
  return std::sqrt(lambda);
}

/// Closed-form largest singular value of a 2x2 matrix.
inline double norm_2x2(const Eigen::MatrixXcd& a) {
  const double fro2 = a.squaredNorm();
  const double det = std::abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
  return std::sqrt(0.5 * (fro2 + std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det))));
}

/// Least concave majorant of the step function of `f` at t, by checking every
/// chord between (0,0) and the step corners. O(n^2) per query.
inline double brute_majorant(const crep::EmpiricalModulus& f, double t) {
  std::vector<std::pair<double, double>> pts{{0.0, 0.0}};
  for (const auto& s : f.samples()) pts.emplace_back(s.distance, f.step_eval(s.distance));
  const double top = f.max_deviation();
  if (t >= f.max_distance()) return top;
  double best = f.step_eval(t);
  for (const auto& [x1, y1] : pts) {
    for (const auto& [x2, y2] : pts) {
      if (x1 <= t && t <= x2 && x1 < x2) best = std::max(best, y1 + (y2 - y1) * (t - x1) / (x2 - x1));
    }
  }
  return best;
}

/// Random concave piecewise-linear modulus with at most max_bp breakpoints.
inline crep::ConcaveFn random_concave(Rng& rng, std::size_t max_bp) {
  const std::size_t k = uniform_size(rng, 1, max_bp - 1);
  std::vector<double> slopes(k), widths(k);
  for (auto& s : slopes) s = uniform(rng, 0.0, 3.0);
  for (auto& w : widths) w = uniform(rng, 0.05, 1.0);
  std::sort(slopes.rbegin(), slopes.rend());
  if (uniform(rng, 0.0, 1.0) < 0.5) slopes.back() = 0.0;
  std::vector<crep::Breakpoint> bp{{0.0, 0.0}};
  for (std::size_t i = 0; i < k; ++i) {
    bp.push_back({bp.back().t + widths[i], bp.back().value + slopes[i] * widths[i]});
  }
  return crep::ConcaveFn(bp, 1e-9);
}

}  // namespace support
