#include <doctest.h>

#include <sstream>

#include "crep/duality.hpp"
#include "support.hpp"

using namespace crep;
using support::throws_kind;

namespace {

// Lower convex envelope at grid index k by checking all chords.
double brute_envelope(const GridFn& h, std::size_t k) {
  double best = h.values()[k];
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = k; j < h.size(); ++j) {
      if (i == j) continue;
      const double w = (h.grid()[k] - h.grid()[i]) / (h.grid()[j] - h.grid()[i]);
      best = std::min(best, h.values()[i] + w * (h.values()[j] - h.values()[i]));
    }
  }
  return best;
}

GridFn random_grid_fn(Rng& rng, std::size_t n) {
  std::vector<double> t{0.0}, v;
  for (std::size_t i = 1; i < n; ++i) t.push_back(t.back() + support::uniform(rng, 0.05, 1.0));
  for (std::size_t i = 0; i < n; ++i) v.push_back(support::uniform(rng, -1.0, 1.0));
  return GridFn(t, v);
}

}  // namespace

TEST_SUITE("duality") {

TEST_CASE("conjugate of the zero function on {0, 1}") {
  const GridFn h({0.0, 1.0}, {0.0, 0.0});
  const std::vector<double> s{-1.0, 0.0, 1.0};
  const GridFn c = fenchel_conjugate(h, s);
  CHECK(c.values()[0] == 0.0);
  CHECK(c.values()[1] == 0.0);
  CHECK(c.values()[2] == 1.0);
}

TEST_CASE("biconjugate is the lower convex envelope") {
  Rng rng(601);
  for (int trial = 0; trial < 30; ++trial) {
    const GridFn h = random_grid_fn(rng, support::uniform_size(rng, 1, 12));
    const GridFn b = biconjugate(h);
    for (std::size_t k = 0; k < h.size(); ++k) {
      CHECK(b.values()[k] == doctest::Approx(brute_envelope(h, k)).epsilon(1e-12));
      CHECK(b.values()[k] <= h.values()[k] + 1e-15);
    }
    const GridFn bb = biconjugate(b);
    for (std::size_t k = 0; k < h.size(); ++k) CHECK(bb.values()[k] == b.values()[k]);
    const auto slopes = hull_slope_grid(h);
    const GridFn literal = double_conjugate(h, slopes);
    for (std::size_t k = 0; k < h.size(); ++k)
      CHECK(literal.values()[k] == doctest::Approx(b.values()[k]).epsilon(1e-9));
  }
}

TEST_CASE("delta of min(t, 1)") {
  const ConcaveFn w = ConcaveFn::capped_linear(1.0, 1.0);
  CHECK(delta_from_modulus(w, 0.0) == doctest::Approx(0.5));
  CHECK(delta_from_modulus(w, 0.5) == doctest::Approx(0.25));
  CHECK(delta_from_modulus(w, 1.0) == doctest::Approx(0.0));
  CHECK(delta_from_modulus(w, 2.0) == 0.0);
  CHECK(throws_kind([&] { delta_from_modulus(w, -0.1); }, ErrorKind::InvalidArgument));
  const auto s = default_slope_grid(w);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 1.0);
}

TEST_CASE("modulus is recovered from delta") {
  Rng rng(602);
  for (int trial = 0; trial < 20; ++trial) {
    const ConcaveFn w = support::random_concave(rng, 8);
    const auto s = default_slope_grid(w);
    const GridFn d = delta_on_grid(w, s);
    std::vector<double> t;
    for (const auto& bp : w.breakpoints()) t.push_back(bp.t);
    for (double x = 0.0; x < 8.0; x += 0.31) t.push_back(x);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    const GridFn r = reconstruct_modulus(d, t);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(r.values()[i] == doctest::Approx(w(t[i])).epsilon(1e-9));
  }
}

TEST_CASE("Lipschitz regularization certificates") {
  Rng rng(603);
  for (int trial = 0; trial < 10; ++trial) {
    const FiniteMetricSpace x = FiniteMetricSpace::random_euclidean(support::uniform_size(rng, 2, 8), rng);
    std::vector<double> v(x.size());
    for (auto& e : v) e = support::uniform(rng, -1.0, 1.0);
    const RealFunctionOnSpace f(x, v);
    const ConcaveFn w = classical_modulus(f);
    for (double s : {0.0, 0.3, 1.0, 2.5, f.lipschitz_constant()}) {
      const auto reg = lip_regularize(f, s, w);
      CHECK(reg.lipschitz_certified);
      CHECK(reg.deviation_certified);
      CHECK(reg.regularized.lipschitz_constant() <= s + 1e-10);
      // The Lipschitz ball is at distance at most delta(s).
      CHECK(distance_to_lipschitz_ball(f, s) <= reg.delta + 1e-9);
    }
  }
}

TEST_CASE("distance to the Lipschitz ball on two points") {
  // f = (0, 1) at distance 1: best s-Lipschitz fit misses by (1 - s)/2.
  const FiniteMetricSpace x({"a", "b"}, {0, 1, 1, 0});
  const RealFunctionOnSpace f(x, {0.0, 1.0});
  for (double s : {0.0, 0.25, 0.5, 1.0, 2.0})
    CHECK(distance_to_lipschitz_ball(f, s) == doctest::Approx(std::max(0.0, (1.0 - s) / 2.0)).epsilon(1e-12));
  const ConcaveFn w = classical_modulus(f);
  CHECK(w(0.5) == doctest::Approx(0.5));
  CHECK(w(3.0) == doctest::Approx(1.0));
}

TEST_CASE("sandwich holds on sampled commutative pairs") {
  Rng rng(604);
  const FiniteMetricSpace x = FiniteMetricSpace::random_euclidean(5, rng);
  std::vector<double> u(5), v(5);
  for (auto& e : u) e = support::uniform(rng, -1.0, 1.0);
  for (auto& e : v) e = support::uniform(rng, -1.0, 1.0);
  const auto pairs = sample_commutative_pairs(x, 40, 3, 605);
  const SandwichReport r = sandwich_check(RealFunctionOnSpace(x, u), RealFunctionOnSpace(x, v), pairs,
                                          lipschitz_generators(x));
  CHECK(r.samples == 40);
  CHECK(r.generators >= x.size());
  CHECK(r.real_residual <= 1e-9);
  CHECK(r.imag_residual <= 1e-9);
  CHECK(r.complex_residual <= 1e-9);
  CHECK(r.real_step_residual <= 1e-9);
  CHECK(r.complex_step_residual <= 1e-9);
}

TEST_CASE("grid function validation and CSV") {
  CHECK(throws_kind([] { GridFn({}, {}); }, ErrorKind::EmptyGrid));
  CHECK(throws_kind([] { GridFn({0.0, 0.0}, {1.0, 2.0}); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([] { GridFn({0.0}, {1.0, 2.0}); }, ErrorKind::DimensionMismatch));
  std::ostringstream out;
  write_gridfn_csv(out, GridFn({0.0, 1.0}, {2.0, 3.0}));
  CHECK(out.str() == "s_or_t,value\n0,2\n1,3\n");
}

}  // TEST_SUITE
