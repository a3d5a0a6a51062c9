#include "crep/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "crep/error.hpp"

namespace crep {

void LinearProgram::add_constraint(std::vector<double> row, double rhs) {
  if (row.size() != num_vars) {
    throw Error(ErrorKind::DimensionMismatch, "constraint row has " + std::to_string(row.size()) +
                                                  " coefficients, expected " +
                                                  std::to_string(num_vars));
  }
  a.push_back(std::move(row));
  b.push_back(rhs);
}

namespace {

constexpr double kEps = 1e-12;

// Tableau layout: rows 0..m-1 constraints, row m the objective, row m+1 the
// phase-one objective; column n is the auxiliary variable, column n+1 the rhs.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp)
      : m_(lp.a.size()), n_(lp.num_vars), d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)),
        basis_(m_), nonbasis_(n_ + 1) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = lp.a[i][j];
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = lp.b[i];
      basis_[i] = static_cast<long>(n_ + i);
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasis_[j] = static_cast<long>(j);
      d_[m_][j] = -lp.c[j];
    }
    nonbasis_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  LpSolution solve() {
    LpSolution out;
    std::size_t r = 0;
    for (std::size_t i = 1; i < m_; ++i)
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    if (m_ > 0 && d_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!run(/*phase_one=*/true) || d_[m_ + 1][n_ + 1] < -1e-9) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      // Drive the auxiliary variable out of the basis if it is still there.
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != -1) continue;
        std::size_t s = n_ + 1;
        for (std::size_t j = 0; j <= n_; ++j) {
          if (std::abs(d_[i][j]) > kEps && (s == n_ + 1 || std::abs(d_[i][j]) > std::abs(d_[i][s])))
            s = j;
        }
        if (s <= n_) pivot(i, s);
      }
    }
    if (!run(/*phase_one=*/false)) {
      out.status = LpStatus::Unbounded;
      return out;
    }
    out.status = LpStatus::Optimal;
    out.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= 0 && static_cast<std::size_t>(basis_[i]) < n_) {
        out.x[static_cast<std::size_t>(basis_[i])] = d_[i][n_ + 1];
      }
    }
    out.objective = d_[m_][n_ + 1];
    return out;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / d_[r][s];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || d_[i][s] == 0.0) continue;
      const double f = d_[i][s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j) {
        if (j != s) d_[i][j] -= d_[r][j] * f;
      }
      d_[i][s] = -f;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) d_[r][j] *= inv;
    d_[r][s] = inv;
    std::swap(basis_[r], nonbasis_[s]);
  }

  // Bland's rule: smallest-label entering column, ratio ties to smallest basis label.
  bool run(bool phase_one) {
    const std::size_t obj = phase_one ? m_ + 1 : m_;
    const std::size_t max_iter = 50 * (m_ + n_ + 10) * (m_ + n_ + 10);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (!phase_one && nonbasis_[j] == -1) continue;
        if (d_[obj][j] < -kEps && (s == n_ + 1 || nonbasis_[j] < nonbasis_[s])) s = j;
      }
      if (s == n_ + 1) return true;
      std::size_t r = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        if (d_[i][s] <= kEps) continue;
        const double ratio = d_[i][n_ + 1] / d_[i][s];
        if (ratio < best - kEps || (ratio <= best + kEps && (r == m_ || basis_[i] < basis_[r]))) {
          if (ratio < best) best = ratio;
          r = i;
        }
      }
      if (r == m_) return false;
      pivot(r, s);
    }
    throw Error(ErrorKind::SolverFailure, "simplex iteration limit reached");
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<double>> d_;
  std::vector<long> basis_;
  std::vector<long> nonbasis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  if (lp.c.size() != lp.num_vars || lp.a.size() != lp.b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "linear program has inconsistent dimensions");
  }
  for (const auto& row : lp.a) {
    if (row.size() != lp.num_vars) {
      throw Error(ErrorKind::DimensionMismatch, "constraint row length mismatch");
    }
  }
  return Tableau(lp).solve();
}

}  // namespace crep
