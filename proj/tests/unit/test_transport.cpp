#include <doctest.h>

#include "crep/transport.hpp"
#include "support.hpp"

using namespace crep;
using support::throws_kind;

namespace {

FiniteMetricSpace line(std::size_t n) {
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::abs(double(i) - double(j));
  return FiniteMetricSpace::from_matrix(n, d);
}

}  // namespace

TEST_SUITE("transport") {

TEST_CASE("metric space validation") {
  CHECK(throws_kind([] { FiniteMetricSpace::from_matrix(2, {0, 1, 2, 0}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { FiniteMetricSpace::from_matrix(2, {0, 0, 0, 0}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { FiniteMetricSpace::from_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}); },
                    ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { FiniteMetricSpace({"a", "a"}, {0, 1, 1, 0}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { FiniteMetricSpace::from_matrix(2, {0, 1, 1}); }, ErrorKind::DimensionMismatch));
  const FiniteMetricSpace x({"p", "q"}, {0, 2, 2, 0});
  CHECK(x.index_of("q") == 1);
  CHECK(throws_kind([&] { x.index_of("r"); }, ErrorKind::UnknownPoint));
  CHECK(x.diameter() == 2.0);
}

TEST_CASE("point representations are isometric over distance functions") {
  Rng rng(501);
  for (int trial = 0; trial < 5; ++trial) {
    const FiniteMetricSpace x = FiniteMetricSpace::random_euclidean(support::uniform_size(rng, 2, 9), rng);
    const GeneratingSet k = lipschitz_generators(x);
    CHECK(k.verified());
    for (std::size_t p = 0; p < x.size(); ++p) {
      for (std::size_t q = 0; q < x.size(); ++q) {
        CHECK(rep_distance(point_rep(x, p, 2), point_rep(x, q, 2), k) ==
              doctest::Approx(x.dist(p, q)).epsilon(1e-12));
        CHECK(separating_sup(x, p, q) == doctest::Approx(x.dist(p, q)).epsilon(1e-14));
      }
    }
  }
  CHECK(throws_kind([] { lipschitz_generators(FiniteMetricSpace::from_matrix(1, {0})); }, ErrorKind::TooFewPoints));
}

TEST_CASE("function modulus samples every ordered pair") {
  const FiniteMetricSpace x = line(3);
  const std::vector<double> f{0.0, 2.0, 3.0};
  const EmpiricalModulus m = function_modulus(x, f);
  CHECK(m.size() == 6);
  CHECK(m.step_eval(1.0) == 2.0);
  CHECK(m.step_eval(2.0) == 3.0);
}

TEST_CASE("Kantorovich worked examples") {
  // Line 0-1-2, delta_0 against the uniform measure on {1, 2}: cost 1/2 + 2/2.
  const FiniteMetricSpace x = line(3);
  const Measure mu = Measure::dirac(x, 0);
  const Measure nu(x, {0.0, 0.5, 0.5});
  const KantorovichResult r = kantorovich(mu, nu);
  CHECK(r.value == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(kantorovich_primal_oracle(mu, nu) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(*std::min_element(r.potential.begin(), r.potential.end()) == doctest::Approx(0.0));

  // Two points at distance 1, delta_a against the midpoint mixture.
  const FiniteMetricSpace two({"a", "b"}, {0, 1, 1, 0});
  CHECK(kantorovich(Measure::dirac(two, 0), Measure(two, {0.5, 0.5})).value == doctest::Approx(0.5));
  CHECK(kantorovich(mu, mu).value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("dual and primal agree on random instances") {
  Rng rng(502);
  for (int trial = 0; trial < 15; ++trial) {
    const FiniteMetricSpace x = FiniteMetricSpace::random_euclidean(support::uniform_size(rng, 2, 7), rng);
    const Measure mu = Measure::random(x, rng);
    const Measure nu = Measure::random(x, rng);
    const KantorovichResult r = kantorovich(mu, nu);
    CHECK(r.value == doctest::Approx(kantorovich_primal_oracle(mu, nu)).epsilon(1e-9));
    // The certificate is 1-Lipschitz and attains the value.
    double integral = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      integral += r.potential[p] * (mu.weights()[p] - nu.weights()[p]);
      for (std::size_t q = 0; q < x.size(); ++q) CHECK(r.potential[p] - r.potential[q] <= x.dist(p, q) + 1e-9);
    }
    CHECK(integral == doctest::Approx(r.value).epsilon(1e-9));
    for (std::size_t p = 0; p < x.size(); ++p)
      for (std::size_t q = 0; q < x.size(); ++q)
        CHECK(kantorovich(Measure::dirac(x, p), Measure::dirac(x, q)).value ==
              doctest::Approx(x.dist(p, q)).epsilon(1e-10));
  }
}

TEST_CASE("weak-* convergence to a Dirac mass") {
  const FiniteMetricSpace two({"a", "b"}, {0, 3, 3, 0});
  double prev = 1e9;
  for (int n = 1; n <= 50; n += 7) {
    const double w = 1.0 / n;
    const double d = kantorovich(Measure(two, {1.0 - w, w}), Measure::dirac(two, 0)).value;
    CHECK(d == doctest::Approx(3.0 * w).epsilon(1e-12));
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("pushforward is functorial and mass preserving") {
  Rng rng(503);
  const FiniteMetricSpace x = line(4);
  const FiniteMetricSpace y = line(3);
  const FiniteMetricSpace z = line(2);
  const std::vector<std::size_t> f{0, 0, 2, 1};
  const std::vector<std::size_t> g{1, 0, 1};
  std::vector<std::size_t> gf(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) gf[i] = g[f[i]];
  const Measure mu = Measure::random(x, rng);
  const Measure a = pushforward(pushforward(mu, f, y), g, z);
  const Measure b = pushforward(mu, gf, z);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(a.weights()[i] == doctest::Approx(b.weights()[i]));
  const std::vector<std::size_t> bad{0, 5, 0, 0};
  CHECK(throws_kind([&] { pushforward(mu, bad, y); }, ErrorKind::IndexOutOfRange));
}

TEST_CASE("measure validation") {
  const FiniteMetricSpace x = line(2);
  CHECK(throws_kind([&] { Measure(x, {0.5, 0.6}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([&] { Measure(x, {1.5, -0.5}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([&] { Measure(x, {1.0}); }, ErrorKind::DimensionMismatch));
  const Measure other = Measure::dirac(line(3), 0);
  CHECK(throws_kind([&] { kantorovich(Measure::dirac(x, 0), other); }, ErrorKind::SpaceMismatch));
}

}  // TEST_SUITE
