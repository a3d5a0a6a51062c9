#include <doctest.h>

#include <cmath>
#include <limits>

#include "crep/linalg.hpp"
#include "support.hpp"

using namespace crep;
using support::throws_kind;

TEST_SUITE("linalg") {

TEST_CASE("op_norm matches the 2x2 closed form") {
  Rng rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = gaussian_matrix(2, rng);
    CHECK(op_norm(a) == doctest::Approx(support::norm_2x2(a.eigen())).epsilon(1e-12));
  }
}

TEST_CASE("op_norm matches power iteration") {
  Rng rng(102);
  for (std::size_t n : {3u, 5u, 8u}) {
    const ComplexMatrix a = gaussian_matrix(n, rng);
    CHECK(op_norm(a) == doctest::Approx(support::power_norm(a.eigen())).epsilon(1e-8));
  }
}

TEST_CASE("norms of structured matrices") {
  CHECK(op_norm(ComplexMatrix::diagonal({1.0, Complex(0.0, -3.0), 2.0})) == doctest::Approx(3.0));
  CHECK(op_norm(ComplexMatrix::zero(4)) == 0.0);
  const ComplexMatrix nil = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  CHECK(op_norm(nil) == doctest::Approx(1.0));
  CHECK(spectral_radius(nil) == doctest::Approx(0.0).epsilon(1e-12));
  Rng rng(103);
  const ComplexMatrix a = gaussian_matrix(6, rng);
  CHECK(spectral_radius(a) <= op_norm(a) + 1e-12);
  CHECK(op_norm(haar_unitary(7, rng).matrix()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Haar unitaries are unitary, seeded and roughly uniform") {
  const Unitary u1 = haar_unitary(6, Seed{5});
  const Unitary u2 = haar_unitary(6, Seed{5});
  const Unitary u3 = haar_unitary(6, Seed{6});
  CHECK(u1 == u2);
  CHECK_FALSE(u1 == u3);
  CHECK(unitarity_residual(u1.matrix()) < 1e-12);

  // E|U_00|^2 = 1/n under Haar measure.
  Rng rng(104);
  const int n = 4, trials = 4000;
  double mean = 0.0;
  for (int t = 0; t < trials; ++t) mean += std::norm(haar_unitary(n, rng).matrix()(0, 0));
  mean /= trials;
  CHECK(mean == doctest::Approx(0.25).epsilon(0.08));
}

TEST_CASE("swap and permutation unitaries") {
  const Unitary s = swap_unitary(4, 1, 3);
  CHECK(s.matrix()(3, 1) == Complex(1.0));
  CHECK(s.matrix()(1, 3) == Complex(1.0));
  CHECK(s.matrix()(0, 0) == Complex(1.0));
  CHECK(s.matrix()(1, 1) == Complex(0.0));
  CHECK(swap_unitary(3, 2, 2) == Unitary::identity(3));
  CHECK(throws_kind([] { swap_unitary(3, 0, 3); }, ErrorKind::IndexOutOfRange));

  const std::vector<std::size_t> perm{2, 0, 1};
  const Unitary p = permutation_unitary(perm);
  for (std::size_t k = 0; k < 3; ++k) CHECK(p.matrix()(perm[k], k) == Complex(1.0));
  const std::vector<std::size_t> bad{0, 0, 1};
  CHECK(throws_kind([&] { permutation_unitary(bad); }, ErrorKind::InvalidArgument));
}

TEST_CASE("constructor validation") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK(throws_kind([&] { ComplexMatrix::diagonal({1.0, nan}); }, ErrorKind::NonFinite));
  CHECK(throws_kind([] { ComplexMatrix(Eigen::MatrixXcd::Zero(2, 3)); }, ErrorKind::DimensionMismatch));
  CHECK(throws_kind([] { ComplexMatrix(Eigen::MatrixXcd(0, 0)); }, ErrorKind::DimensionMismatch));
  CHECK(throws_kind([] { Unitary(ComplexMatrix::diagonal({1.0, 2.0})); }, ErrorKind::NotUnitary));
  CHECK(throws_kind([] { ComplexMatrix::identity(2) + ComplexMatrix::identity(3); },
                    ErrorKind::DimensionMismatch));
}

TEST_CASE("direct sums and multiplicity sums") {
  const ComplexMatrix a = ComplexMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const ComplexMatrix b = ComplexMatrix::diagonal({Complex(0.0, 1.0)});
  const ComplexMatrix s = direct_sum(a, b);
  CHECK(s.dim() == 3);
  CHECK(s(1, 0) == Complex(3.0));
  CHECK(s(2, 2) == Complex(0.0, 1.0));
  CHECK(s(0, 2) == Complex(0.0));
  const ComplexMatrix m = multiplicity_sum(a, 3);
  CHECK(m.dim() == 6);
  CHECK(m(5, 4) == Complex(3.0));
  CHECK(m(2, 1) == Complex(0.0));
  CHECK(op_norm(m) == doctest::Approx(op_norm(a)));
}

TEST_CASE("exp of a Hermitian generator") {
  Rng rng(105);
  const ComplexMatrix h = gaussian_hermitian(5, rng);
  CHECK(approx_equal(h, h.adjoint(), 1e-14));
  CHECK(unitarity_residual(exp_i_hermitian(h, 0.7).matrix()) < 1e-12);
  CHECK(approx_equal(exp_i_hermitian(h, 0.0).matrix(), ComplexMatrix::identity(5), 1e-13));
  // exp(i(s+t)H) = exp(isH) exp(itH)
  const Unitary lhs = exp_i_hermitian(h, 0.5);
  const Unitary rhs = exp_i_hermitian(h, 0.2) * exp_i_hermitian(h, 0.3);
  CHECK(approx_equal(lhs.matrix(), rhs.matrix(), 1e-12));
}

}  // TEST_SUITE
