#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crep/gallery.hpp"
#include "support.hpp"

using namespace crep;
using support::throws_kind;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("crep_gallery_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("gallery") {

TEST_CASE("orbit of the lower shift on C^3") {
  const ComplexMatrix t = ComplexMatrix::from_rows({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
  const OrbitFrame f = orbit_frame(t);
  CHECK_FALSE(f.scalar);
  CHECK(std::abs(f.b - Complex(1.0)) < 1e-15);
  const ScenarioResult r = orbit_dispersion(t);
  CHECK(r.pass);
  CHECK(r.measured == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(r.table.rows.size() == 1);
}

TEST_CASE("orbit of diag(1, 2, 3) uses a mixed vector") {
  const ComplexMatrix t = ComplexMatrix::diagonal({1.0, 2.0, 3.0});
  const OrbitFrame f = orbit_frame(t);
  // xi = (e_1 + e_2)/sqrt(2): T xi - <xi, T xi> xi = (-1/2, 1/2, 0)/sqrt(2), norm 1/2.
  CHECK(std::abs(f.b) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(f.basis(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  const ScenarioResult r = orbit_dispersion(t);
  CHECK(r.pass);
  CHECK(r.claimed_bound == doctest::Approx(std::sqrt(2.0) * 0.5));
}

TEST_CASE("orbit dispersion by direct evaluation") {
  Rng rng(701);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = support::uniform_size(rng, 3, 7);
    const ComplexMatrix t = gaussian_matrix(n, rng);
    const OrbitFrame f = orbit_frame(t);
    // Basis is orthonormal and T e_1 = a e_1 + b e_2.
    const Eigen::MatrixXcd& w = f.basis;
    CHECK((w.adjoint() * w - Eigen::MatrixXcd::Identity(w.rows(), w.cols())).norm() < 1e-12);
    const Eigen::VectorXcd te1 = t.eigen() * w.col(0);
    const Complex a = w.col(0).dot(te1);
    CHECK((te1 - a * w.col(0) - f.b * w.col(1)).norm() < 1e-12);
    const ScenarioResult r = orbit_dispersion(t);
    CHECK(r.pass);
    CHECK(r.table.rows.size() == (n - 1) * (n - 2) / 2);
  }
}

TEST_CASE("scalar operators and small dimensions") {
  const ScenarioResult r = orbit_dispersion(Complex(3.0) * ComplexMatrix::identity(4));
  CHECK(r.pass);
  CHECK(r.note == "scalar");
  CHECK(r.measured == 0.0);
  CHECK(throws_kind([] { orbit_dispersion(ComplexMatrix::identity(2)); }, ErrorKind::DimensionTooSmall));
}

TEST_CASE("compact operators scatter") {
  const ScenarioResult small = compacts_scatter(4, {2, 3});
  CHECK(small.pass);
  CHECK(small.measured == doctest::Approx(1.0).epsilon(1e-14));
  const ScenarioResult big = compacts_scatter(8, {2, 3, 4, 5, 6, 7});
  CHECK(big.pass);
  CHECK(big.table.rows.size() == 15);
  // Repeated index contributes no pair.
  CHECK(compacts_scatter(4, {2, 2, 3}).table.rows.size() == 2);
  CHECK(throws_kind([] { compacts_scatter(3, {2, 3}); }, ErrorKind::DimensionTooSmall));
  CHECK(throws_kind([] { compacts_scatter(8, {2}); }, ErrorKind::InvalidArgument));
}

TEST_CASE("discrete family in the A_0 truncation") {
  const ScenarioResult two = a0_discrete(2);
  CHECK(two.pass);
  REQUIRE(two.table.rows.size() == 1);
  CHECK(two.table.rows[0][2] == doctest::Approx(2.0));
  const ScenarioResult four = a0_discrete(4);
  CHECK(four.pass);
  CHECK(four.table.rows.size() == 6);
  for (const auto& row : four.table.rows) CHECK(row[3] >= row[2] - 1e-12);
  CHECK(throws_kind([] { a0_discrete(1); }, ErrorKind::DimensionTooSmall));
}

TEST_CASE("coordinate projections are separated") {
  const ScenarioResult r = projection_separation(3, {{1}, {2}});
  CHECK(r.pass);
  CHECK(r.measured == doctest::Approx(1.0));
  CHECK(projection_separation(3, {{1}, {1, 2}}).pass);
  CHECK(projection_separation(4, {{}, {1, 2, 3, 4}, {2, 4}}).pass);
  CHECK(throws_kind([] { projection_separation(3, {{1, 2}, {2, 1}}); }, ErrorKind::DuplicateSubset));
  CHECK(throws_kind([] { projection_separation(3, {{1}, {4}}); }, ErrorKind::IndexOutOfRange));
}

TEST_CASE("run_scenario dispatch, artifacts and reproducibility") {
  const auto dir = scratch("a0");
  const ScenarioResult r = run_scenario("a0_discrete", Json{{"N", 3}}, 1, dir);
  CHECK(r.pass);
  REQUIRE(r.artifacts.size() == 2);
  const Json j = Json::parse(slurp(dir / "result.json"));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["verdict"] == "pass");
  CHECK(j["name"] == "a0_discrete");
  CHECK(slurp(dir / "a0_discrete.csv").rfind("n,m,norm,d_K\n", 0) == 0);
  const std::string first = slurp(dir / "result.json");
  run_scenario("a0_discrete", Json{{"N", 3}}, 1, dir);
  CHECK(slurp(dir / "result.json") == first);

  const auto rnd = scratch("orbit");
  const Json params{{"kind", "random"}, {"dim", 6}};
  const ScenarioResult o1 = run_scenario("orbit", params, 42, rnd);
  const ScenarioResult o2 = run_scenario("orbit", params, 42, {});
  CHECK(o1.measured == o2.measured);
  CHECK(o2.artifacts.empty());

  CHECK(throws_kind([] { run_scenario("nope", Json::object(), 1, {}); }, ErrorKind::UnknownScenario));
  CHECK(throws_kind([] { run_scenario("a0_discrete", Json{{"N", "x"}}, 1, {}); }, ErrorKind::ConfigError));
  CHECK(throws_kind([] { run_scenario("a0_discrete", Json{{"M", 3}}, 1, {}); }, ErrorKind::ConfigError));
  CHECK(throws_kind([] { run_scenario("orbit", Json{{"kind", "weird"}}, 1, {}); }, ErrorKind::ConfigError));
  CHECK(throws_kind([] { run_scenario("compacts_scatter", Json::array(), 1, {}); }, ErrorKind::ConfigError));
  for (const auto& name : scenario_names()) CHECK(run_scenario(name, Json(), 3, {}).pass);
}

}  // TEST_SUITE
