#pragma once

#include <cstddef>
#include <vector>

namespace crep {

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// maximize c.x subject to A x <= b, x >= 0 (dense, row-major A).
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;

  void add_constraint(std::vector<double> row, double rhs);
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

/// Dense two-phase tableau simplex with Bland's rule (no cycling on the
/// highly degenerate Lipschitz-constraint programs used here).
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace crep
