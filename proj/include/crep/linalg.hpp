#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "crep/error.hpp"

namespace crep {

using Complex = std::complex<double>;
using Seed = std::uint64_t;
using Rng = std::mt19937_64;

/// Dense square complex matrix with finite entries.
///
/// Thin value wrapper over Eigen::MatrixXcd that enforces squareness,
/// positive dimension and finiteness at construction. Arithmetic results are
/// re-validated, so a NonFinite error surfaces at the first overflow.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);
  /// Row-major literal; throws DimensionMismatch if not square.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix from_row_major(std::size_t dim, std::span<const Complex> entries);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Eigen::MatrixXcd& eigen() const noexcept { return m_; }

  ComplexMatrix adjoint() const;
  Complex trace() const { return m_.trace(); }

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) { return a.m_ == b.m_; }

 private:
  Eigen::MatrixXcd m_;
};

/// Unitary matrix, residual ||U*U - I||_op <= kUnitaryTolerance at construction.
class Unitary {
 public:
  static constexpr double kUnitaryTolerance = 1e-10;

  explicit Unitary(ComplexMatrix m);
  static Unitary identity(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  Unitary adjoint() const;

  friend Unitary operator*(const Unitary& a, const Unitary& b);
  friend bool operator==(const Unitary& a, const Unitary& b) { return a.m_ == b.m_; }

 private:
  ComplexMatrix m_;
};

/// Largest singular value.
double op_norm(const ComplexMatrix& a);

/// max |lambda| over the eigenvalues of a.
double spectral_radius(const ComplexMatrix& a);

/// ||U*U - I||_op.
double unitarity_residual(const ComplexMatrix& u);

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);

/// m-fold block diagonal a (+) a (+) ... (+) a.
ComplexMatrix multiplicity_sum(const ComplexMatrix& a, std::size_t m);

/// U a U*.
ComplexMatrix conjugate(const Unitary& u, const ComplexMatrix& a);

/// Haar-distributed unitary; bit-identical for equal (dim, seed).
Unitary haar_unitary(std::size_t dim, Seed seed);
Unitary haar_unitary(std::size_t dim, Rng& rng);

/// Permutation matrix exchanging basis vectors i and j (0-based).
Unitary swap_unitary(std::size_t dim, std::size_t i, std::size_t j);

/// Permutation unitary sending basis vector k to basis vector perm[k].
Unitary permutation_unitary(std::span<const std::size_t> perm);

/// Block diagonal of unitaries.
Unitary direct_sum(std::span<const Unitary> blocks);

/// Standard complex Gaussian matrix (entries with E|z|^2 = 1).
ComplexMatrix gaussian_matrix(std::size_t dim, Rng& rng);

/// GUE-style Hermitian matrix (G + G*) / 2.
ComplexMatrix gaussian_hermitian(std::size_t dim, Rng& rng);

/// exp(i t H) for Hermitian H, via the spectral decomposition.
Unitary exp_i_hermitian(const ComplexMatrix& h, double t);

/// True when every entry of a - b has modulus <= tol.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

}  // namespace crep
