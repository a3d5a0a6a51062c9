#include <doctest.h>

#include <sstream>

#include "crep/modulus.hpp"
#include "support.hpp"

using namespace crep;
using support::throws_kind;

TEST_SUITE("modulus") {

TEST_CASE("step function keeps the running maximum") {
  const EmpiricalModulus f({{0.5, 1.0}, {0.2, 0.3}, {0.9, 0.8}, {0.7, 2.0}});
  CHECK(f.size() == 4);
  CHECK(f.step_eval(0.0) == 0.0);
  CHECK(f.step_eval(0.1) == 0.0);
  CHECK(f.step_eval(0.2) == 0.3);
  CHECK(f.step_eval(0.6) == 1.0);
  CHECK(f.step_eval(0.95) == 2.0);
  CHECK(f.max_distance() == 0.9);
  CHECK(f.max_deviation() == 2.0);
  CHECK(f.scaled(3.0).step_eval(0.6) == 3.0);
  CHECK(throws_kind([] { EmpiricalModulus(std::vector<ModulusSample>{}); }, ErrorKind::EmptySampleSet));
}

TEST_CASE("concave majorant equals the brute-force chord envelope") {
  Rng rng(401);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ModulusSample> s;
    const std::size_t n = support::uniform_size(rng, 1, 40);
    for (std::size_t i = 0; i < n; ++i) s.push_back({support::uniform(rng, 0.01, 2.0), support::uniform(rng, 0.0, 1.0)});
    const EmpiricalModulus f(s);
    const ConcaveFn w = concave_majorant(f);
    CHECK(w(0.0) == 0.0);
    for (double t = 0.0; t <= 2.5; t += 0.01) {
      CHECK(w(t) == doctest::Approx(support::brute_majorant(f, t)).epsilon(1e-12));
      CHECK(w(t) >= f.step_eval(t) - 1e-15);
    }
    CHECK(w.sup() == doctest::Approx(f.max_deviation()));
  }
}

TEST_CASE("majorant rejects deviation at zero distance") {
  const EmpiricalModulus f({{0.0, 0.5}, {1.0, 1.0}});
  CHECK(throws_kind([&] { concave_majorant(f); }, ErrorKind::InvalidArgument));
  const EmpiricalModulus g({{0.0, 0.0}, {1.0, 1.0}});
  CHECK(concave_majorant(g)(0.5) == doctest::Approx(0.5));
}

TEST_CASE("ConcaveFn validation and evaluation") {
  const ConcaveFn f({{0.0, 0.0}, {1.0, 2.0}, {3.0, 3.0}});
  CHECK(f(0.5) == doctest::Approx(1.0));
  CHECK(f(2.0) == doctest::Approx(2.5));
  CHECK(f(10.0) == 3.0);
  CHECK(f.sup() == 3.0);
  const auto s = f.slopes();
  REQUIRE(s.size() == 2);
  CHECK(s[0] == doctest::Approx(2.0));
  CHECK(s[1] == doctest::Approx(0.5));
  CHECK(throws_kind([] { ConcaveFn({{0.0, 0.0}, {1.0, 1.0}, {2.0, 3.0}}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { ConcaveFn({{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { ConcaveFn({{0.1, 0.0}, {1.0, 1.0}}); }, ErrorKind::InvalidArgument));
  CHECK(ConcaveFn::zero()(5.0) == 0.0);
}

TEST_CASE("composition of capped moduli") {
  // outer: min(t, 2); inner: 2t. Composite: min(2t, 2).
  const ConcaveFn outer = ConcaveFn::capped_linear(1.0, 2.0);
  const ConcaveFn inner({{0.0, 0.0}, {10.0, 20.0}});
  const ConcaveFn c = compose_modulus(outer, inner);
  CHECK(c(0.25) == doctest::Approx(0.5));
  CHECK(c(0.5) == doctest::Approx(1.0));
  CHECK(c(1.0) == doctest::Approx(2.0));
  CHECK(c(3.0) == doctest::Approx(2.0));

  Rng rng(402);
  for (int trial = 0; trial < 20; ++trial) {
    const ConcaveFn a = support::random_concave(rng, 6);
    const ConcaveFn b = support::random_concave(rng, 6);
    const ConcaveFn ab = compose_modulus(a, b);
    const ConcaveFn sum = add(a, b);
    const ConcaveFn sc = scale(a, 2.5);
    for (double t = 0.0; t < 6.0; t += 0.037) {
      CHECK(ab(t) == doctest::Approx(a(b(t))).epsilon(1e-11));
      CHECK(sum(t) == doctest::Approx(a(t) + b(t)).epsilon(1e-12));
      CHECK(sc(t) == doctest::Approx(2.5 * a(t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("modulus calculus on shared samples") {
  Rng rng(403);
  const FdAlgebra alg({2, 3});
  const GeneratingSet k = support::random_generating_set(alg, rng);
  const auto pairs = sample_rep_pairs(alg, std::vector<std::size_t>{1, 1}, 120, 404, 0.3);
  const AlgebraElement a = AlgebraElement::random(alg, rng);
  const AlgebraElement b = AlgebraElement::random(alg, rng);
  const CalculusReport r = modulus_calculus_report(pairs, k, a, b, Complex(-1.5, 0.5));
  CHECK(r.sample_pairs == 120);
  CHECK(r.max_equality_residual() <= 1e-10);
  CHECK(r.max_inequality_residual() <= 1e-9);
  CHECK(r.unit_modulus_sup <= 1e-10);

  const GeneratingSet k2 = support::random_generating_set(alg, rng);
  CHECK(chain_inequality_check(pairs, k, k2, a) <= 1e-9);
  CHECK(uniform_equivalence_residual(pairs, k, k2) <= 1e-9);
}

TEST_CASE("modulus of a generator is dominated by the identity near zero") {
  // a in K gives ||pi(a) - pi'(a)|| <= d_K, so the majorant lies under t.
  Rng rng(405);
  const FdAlgebra alg({1, 2});
  const GeneratingSet k = support::random_generating_set(alg, rng);
  const auto pairs = sample_rep_pairs(alg, std::vector<std::size_t>{2, 1}, 60, 406, 0.2);
  const std::array<AlgebraElement, 1> l{k.elements()[0]};
  const ConcaveFn w = concave_majorant(empirical_modulus(pairs, k, l));
  for (double t = 0.0; t < 3.0; t += 0.05) CHECK(w(t) <= t + 1e-12);
}

TEST_CASE("modulus CSV layout") {
  const EmpiricalModulus f({{0.5, 1.0}, {1.0, 1.5}});
  std::ostringstream out;
  write_modulus_csv(out, f, concave_majorant(f));
  const std::string text = out.str();
  CHECK(text.rfind("t,step_value,hull_value\n", 0) == 0);
  CHECK(text.find("0,0,0\n") != std::string::npos);
}

}  // TEST_SUITE
