#include <doctest.h>

#include "crep/algebra.hpp"
#include "support.hpp"

using namespace crep;
using support::throws_kind;

TEST_SUITE("algebra") {

TEST_CASE("block bookkeeping") {
  const FdAlgebra a({1, 2, 3});
  CHECK(a.linear_dimension() == 14);
  const FdAlgebra u = a.unitization();
  CHECK(u.block_count() == 4);
  CHECK(u.block_dim(3) == 1);
  CHECK(u.linear_dimension() == 15);
  CHECK(throws_kind([] { FdAlgebra(std::vector<std::size_t>{}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { FdAlgebra({2, 0}); }, ErrorKind::InvalidArgument));
}

TEST_CASE("element arithmetic is blockwise") {
  Rng rng(201);
  const FdAlgebra alg({2, 3});
  const AlgebraElement x = AlgebraElement::random(alg, rng);
  const AlgebraElement y = AlgebraElement::random(alg, rng);
  const AlgebraElement p = x * y;
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(approx_equal(p.block(i), x.block(i) * y.block(i), 1e-14));
    CHECK(approx_equal((x + y).block(i), x.block(i) + y.block(i), 0.0));
    CHECK(approx_equal(x.adjoint().block(i), x.block(i).adjoint(), 0.0));
  }
  CHECK(AlgebraElement::unit(alg) * x == x);
  CHECK(throws_kind([&] { x + AlgebraElement::unit(FdAlgebra({2})); }, ErrorKind::AlgebraMismatch));
}

TEST_CASE("element norm is the largest block norm") {
  Rng rng(202);
  const FdAlgebra alg({1, 2, 4});
  for (int t = 0; t < 10; ++t) {
    const AlgebraElement x = AlgebraElement::random(alg, rng);
    double oracle = 0.0;
    for (const auto& b : x.blocks()) oracle = std::max(oracle, support::power_norm(b.eigen()));
    CHECK(element_norm(x) == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("C*-identity") {
  Rng rng(203);
  for (int t = 0; t < 20; ++t) {
    const FdAlgebra alg = support::random_algebra(rng, 3, 4);
    const AlgebraElement x = AlgebraElement::random(alg, rng);
    const double n = element_norm(x);
    CHECK(std::abs(element_norm(x.adjoint() * x) - n * n) <= 1e-9 * n * n);
  }
}

TEST_CASE("words parse and evaluate") {
  const Word w = parse_word("0 0* 1");
  REQUIRE(w.size() == 3);
  CHECK(w[0] == Letter{0, false});
  CHECK(w[1] == Letter{0, true});
  CHECK(w[2] == Letter{1, false});
  CHECK(parse_word("   ").empty());
  CHECK(throws_kind([] { parse_word("0 x"); }, ErrorKind::BadWord));
  CHECK(throws_kind([] { parse_word("*"); }, ErrorKind::BadWord));
  CHECK(throws_kind([] { parse_word("-1"); }, ErrorKind::BadWord));

  // Shift s on C^3: s s* by direct product.
  const FdAlgebra alg({3});
  const ComplexMatrix s = ComplexMatrix::from_rows({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  const GeneratingSet k(alg, {AlgebraElement(alg, {s})});
  const std::vector<Word> words{parse_word("0 0*"), parse_word("")};
  const std::vector<Complex> coeffs{2.0, Complex(0.0, 1.0)};
  const AlgebraElement got = star_polynomial(words, coeffs, k);
  const ComplexMatrix want = Complex(2.0) * (s * s.adjoint()) + Complex(0.0, 1.0) * ComplexMatrix::identity(3);
  CHECK(approx_equal(got.block(0), want, 1e-15));
  CHECK(approx_equal(got.block(0), ComplexMatrix::diagonal({Complex(0, 1), Complex(2, 1), Complex(2, 1)}), 1e-15));
  const std::vector<Word> bad{parse_word("4")};
  const std::vector<Complex> one{1.0};
  CHECK(throws_kind([&] { star_polynomial(bad, one, k); }, ErrorKind::BadWord));
}

TEST_CASE("generation by span rank") {
  const FdAlgebra m2({2});
  const AlgebraElement e12(m2, {ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})});
  const GenerationCheck g = verify_generates(GeneratingSet(m2, {e12}));
  CHECK(g.generates);
  CHECK(g.span_dimension == 4);
  CHECK(g.target_dimension == 4);

  const AlgebraElement diag(m2, {ComplexMatrix::diagonal({1.0, 2.0})});
  const GenerationCheck d = verify_generates(GeneratingSet(m2, {diag}));
  CHECK_FALSE(d.generates);
  CHECK(d.span_dimension == 2);
  CHECK(throws_kind([&] { certify(GeneratingSet(m2, {diag})); }, ErrorKind::InvalidArgument));

  // C + C: the unit alone spans one dimension, (1, 0) separates.
  const FdAlgebra cc({1, 1});
  CHECK_FALSE(verify_generates(GeneratingSet(cc, {AlgebraElement::unit(cc)})).generates);
  const AlgebraElement p(cc, {ComplexMatrix::diagonal({1.0}), ComplexMatrix::diagonal({0.0})});
  CHECK(verify_generates(GeneratingSet(cc, {p})).generates);
  CHECK(certify(GeneratingSet(cc, {p})).verified());

  Rng rng(204);
  const FdAlgebra big({1, 2, 3});
  CHECK(support::random_generating_set(big, rng).verified());
}

TEST_CASE("generating set validation") {
  const FdAlgebra a({2});
  CHECK(throws_kind([&] { GeneratingSet(a, {}); }, ErrorKind::InvalidArgument));
  const AlgebraElement other = AlgebraElement::unit(FdAlgebra({3}));
  CHECK(throws_kind([&] { GeneratingSet(a, {other}); }, ErrorKind::AlgebraMismatch));
  const GeneratingSet k1(a, {AlgebraElement::unit(a)});
  const GeneratingSet k2(a, {AlgebraElement::zero(a)});
  CHECK(k1.united(k2).size() == 2);
}

}  // TEST_SUITE
