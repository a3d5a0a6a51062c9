#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crep/io.hpp"
#include "crep/linalg.hpp"

namespace crep {

enum class ClaimKind {
  Equal,    // |measured - claimed| <= tolerance
  AtLeast,  // measured >= claimed - tolerance
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct ScenarioResult {
  std::string name;
  std::string claim;
  ClaimKind kind = ClaimKind::Equal;
  double claimed_bound = 0.0;
  /// For Equal: the sampled value farthest from the claim. For AtLeast: the minimum.
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
  Table table;
  std::vector<std::string> artifacts;
};

/// Unitary orbit of a non-scalar T is not precompact: with e_1 = xi and e_2 the
/// normalized part of T xi orthogonal to xi, T e_1 = a e_1 + b e_2 and swapping
/// e_2 with e_n gives ||(U_n T U_n - U_m T U_m) e_1|| = sqrt(2) |b|. Every pair
/// of swaps in dim(T) is checked; scalar T reports dispersion 0.
ScenarioResult orbit_dispersion(const ComplexMatrix& t, std::optional<double> tolerance = {});

/// Quantities exposed for tests: the constructed basis (columns) and b.
struct OrbitFrame {
  bool scalar;
  Eigen::MatrixXcd basis;
  Complex b;
};
OrbitFrame orbit_frame(const ComplexMatrix& t);

/// Rank-one projection P_1 conjugated by the swaps of e_1 and e_m inside M_N
/// (1-based labels m >= 2). Each pair m != m' must differ by at least 1 on P_1.
ScenarioResult compacts_scatter(std::size_t n, const std::vector<std::size_t>& m_list,
                                std::optional<double> tolerance = {});

/// Truncation of the A_0 example to the blocks M_{2^n}, n = 1..N, on the common
/// ambient space C^{2^N}: ||rho_n(a) - rho_m(a)|| = 2 for all n < m.
ScenarioResult a0_discrete(std::size_t n, std::optional<double> tolerance = {});

/// Representations of C + C sending (1, 0) to coordinate projections onto the
/// given subsets (1-based labels). Distinct subsets give ||P - Q|| = 1.
ScenarioResult projection_separation(std::size_t dim,
                                     const std::vector<std::vector<std::size_t>>& subsets,
                                     std::optional<double> tolerance = {});

/// Registered names: orbit_dispersion (alias orbit), compacts_scatter,
/// a0_discrete, projection_separation.
std::vector<std::string> scenario_names();

/// Parses params, runs the scenario and writes result.json plus <name>.csv into
/// out_dir (skipped when out_dir is empty). Throws UnknownScenario or ConfigError.
ScenarioResult run_scenario(const std::string& name, const Json& params, Seed seed,
                            const std::filesystem::path& out_dir,
                            std::optional<double> tolerance = {});

}  // namespace crep
