#include "crep/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace crep {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": " + std::to_string(a.dim()) +
                                                  " vs " + std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix must be square with positive dimension, got " +
                                                  std::to_string(m_.rows()) + "x" +
                                                  std::to_string(m_.cols()));
  }
  if (!m_.allFinite()) throw Error(ErrorKind::NonFinite, "matrix has NaN or Inf entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim),
                                                  static_cast<Eigen::Index>(dim)));
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
  return ComplexMatrix(
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorKind::DimensionMismatch, "from_rows: ragged or non-square literal");
    }
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::from_row_major(std::size_t dim, std::span<const Complex> entries) {
  if (entries.size() != dim * dim) {
    throw Error(ErrorKind::DimensionMismatch, "from_row_major: expected " +
                                                  std::to_string(dim * dim) + " entries, got " +
                                                  std::to_string(entries.size()));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[static_cast<std::size_t>(i * n + j)];
  return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(m_.adjoint()); }

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator+");
  return ComplexMatrix(a.m_ + b.m_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator-");
  return ComplexMatrix(a.m_ - b.m_);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  return ComplexMatrix(a.m_ * b.m_);
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(s * a.m_); }

Unitary::Unitary(ComplexMatrix m) : m_(std::move(m)) {
  const double r = unitarity_residual(m_);
  if (!(r <= kUnitaryTolerance)) {
    throw Error(ErrorKind::NotUnitary, "unitarity residual " + std::to_string(r));
  }
}

Unitary Unitary::identity(std::size_t dim) { return Unitary(ComplexMatrix::identity(dim)); }

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint()); }

Unitary operator*(const Unitary& a, const Unitary& b) { return Unitary(a.m_ * b.m_); }

double op_norm(const ComplexMatrix& a) {
  const auto& m = a.eigen();
  if (m.rows() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double spectral_radius(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a.eigen(), /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NonFinite, "eigenvalue iteration did not converge");
  }
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double unitarity_residual(const ComplexMatrix& u) {
  const auto& m = u.eigen();
  return op_norm(ComplexMatrix(m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())));
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::array<ComplexMatrix, 2> blocks{a, b};
  return direct_sum(std::span<const ComplexMatrix>(blocks));
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += static_cast<Eigen::Index>(b.dim());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    const auto d = static_cast<Eigen::Index>(b.dim());
    m.block(off, off, d, d) = b.eigen();
    off += d;
  }
  return ComplexMatrix(std::move(m));
}

ComplexMatrix multiplicity_sum(const ComplexMatrix& a, std::size_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "multiplicity must be >= 1");
  const std::vector<ComplexMatrix> copies(m, a);
  return direct_sum(std::span<const ComplexMatrix>(copies));
}

ComplexMatrix conjugate(const Unitary& u, const ComplexMatrix& a) {
  return u.matrix() * a * u.matrix().adjoint();
}

Unitary haar_unitary(std::size_t dim, Seed seed) {
  Rng rng(seed);
  return haar_unitary(dim, rng);
}

Unitary haar_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "haar_unitary: dim must be >= 1");
  const ComplexMatrix z = gaussian_matrix(dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z.eigen());
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  // Fix the phase ambiguity of QR so that Q is exactly Haar distributed.
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return Unitary(ComplexMatrix(std::move(q)));
}

Unitary swap_unitary(std::size_t dim, std::size_t i, std::size_t j) {
  if (i >= dim || j >= dim) {
    throw Error(ErrorKind::IndexOutOfRange, "swap_unitary: index (" + std::to_string(i) + ", " +
                                                std::to_string(j) + ") outside dim " +
                                                std::to_string(dim));
  }
  std::vector<std::size_t> perm(dim);
  for (std::size_t k = 0; k < dim; ++k) perm[k] = k;
  std::swap(perm[i], perm[j]);
  return permutation_unitary(perm);
}

Unitary permutation_unitary(std::span<const std::size_t> perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  std::vector<bool> hit(perm.size(), false);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] >= perm.size() || hit[perm[k]]) {
      throw Error(ErrorKind::InvalidArgument, "permutation_unitary: not a permutation");
    }
    hit[perm[k]] = true;
    m(static_cast<Eigen::Index>(perm[k]), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return Unitary(ComplexMatrix(std::move(m)));
}

Unitary direct_sum(std::span<const Unitary> blocks) {
  std::vector<ComplexMatrix> ms;
  ms.reserve(blocks.size());
  for (const auto& b : blocks) ms.push_back(b.matrix());
  return Unitary(direct_sum(std::span<const ComplexMatrix>(ms)));
}

ComplexMatrix gaussian_matrix(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd z(n, n);
  // Fill row-major with an explicit order so the stream consumption is fixed.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return ComplexMatrix(std::move(z));
}

ComplexMatrix gaussian_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(dim, rng);
  return ComplexMatrix(0.5 * (g.eigen() + g.eigen().adjoint()));
}

Unitary exp_i_hermitian(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.eigen());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NonFinite, "exp_i_hermitian: eigensolver failed");
  }
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd phases(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    phases(k) = std::exp(Complex(0.0, t * es.eigenvalues()(k)));
  }
  return Unitary(ComplexMatrix(v * phases.asDiagonal() * v.adjoint()));
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace crep
