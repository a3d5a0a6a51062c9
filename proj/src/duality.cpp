#include "crep/duality.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "crep/hull.hpp"
#include "crep/lp.hpp"

namespace crep {

namespace {

constexpr double kHullSlack = 1e-12;

std::vector<Point2> as_points(const GridFn& h) {
  std::vector<Point2> pts;
  pts.reserve(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) pts.push_back({h.grid()[i], h.values()[i]});
  return pts;
}

double hull_tolerance(const GridFn& h) {
  double m = 1.0;
  for (double v : h.values()) m = std::max(m, std::abs(v));
  return kHullSlack * m;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_same_space(const RealFunctionOnSpace& a, const RealFunctionOnSpace& b) {
  if (!(a.space() == b.space())) {
    throw Error(ErrorKind::SpaceMismatch, "functions live on different metric spaces");
  }
}

}  // namespace

GridFn::GridFn(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.empty()) throw Error(ErrorKind::EmptyGrid, "grid function needs a nonempty grid");
  if (grid_.size() != values_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "grid and values differ in length");
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || !std::isfinite(values_[i])) {
      throw Error(ErrorKind::NonFinite, "grid function entries must be finite");
    }
    if (i > 0 && !(grid_[i] > grid_[i - 1])) {
      throw Error(ErrorKind::InvalidArgument, "grid must be strictly increasing");
    }
  }
}

RealFunctionOnSpace::RealFunctionOnSpace(FiniteMetricSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "function needs one value per point");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "function values must be finite");
  }
}

double RealFunctionOnSpace::lipschitz_constant() const {
  double lip = 0.0;
  for (std::size_t p = 0; p < space_.size(); ++p)
    for (std::size_t q = 0; q < space_.size(); ++q)
      if (p != q) lip = std::max(lip, std::abs(values_[p] - values_[q]) / space_.dist(p, q));
  return lip;
}

GridFn fenchel_conjugate(const GridFn& h, std::span<const double> s_grid) {
  if (s_grid.empty()) throw Error(ErrorKind::EmptyGrid, "fenchel_conjugate: empty s-grid");
  std::vector<double> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i) best = std::max(best, s * h.grid()[i] - h.values()[i]);
    out.push_back(best);
  }
  return GridFn({s_grid.begin(), s_grid.end()}, std::move(out));
}

std::vector<double> hull_slope_grid(const GridFn& h) {
  const auto pts = as_points(h);
  const auto hv = lower_hull(pts, hull_tolerance(h));
  if (hv.size() < 2) return {0.0};
  std::vector<double> s;
  for (std::size_t k = 1; k < hv.size(); ++k) {
    const Point2& a = pts[hv[k - 1]];
    const Point2& b = pts[hv[k]];
    s.push_back((b.y - a.y) / (b.x - a.x));
  }
  return sorted_unique(std::move(s));
}

GridFn biconjugate(const GridFn& h) {
  const auto pts = as_points(h);
  const auto hv = lower_hull(pts, hull_tolerance(h));
  std::vector<double> vals;
  vals.reserve(h.size());
  for (double t : h.grid()) vals.push_back(interpolate(pts, hv, t));
  return GridFn({h.grid().begin(), h.grid().end()}, std::move(vals));
}

GridFn double_conjugate(const GridFn& h, std::span<const double> s_grid) {
  return fenchel_conjugate(fenchel_conjugate(h, s_grid), h.grid());
}

double delta_from_modulus(const ConcaveFn& omega, double s) {
  if (!(s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "delta: s must be >= 0");
  // omega(t) - s t is concave and piecewise linear with a nonincreasing tail,
  // so its supremum sits on a breakpoint (t = 0 included).
  double best = 0.0;
  for (const auto& b : omega.breakpoints()) best = std::max(best, b.value - s * b.t);
  return 0.5 * best;
}

std::vector<double> default_slope_grid(const ConcaveFn& omega) {
  std::vector<double> s = omega.slopes();
  for (auto& v : s) v = std::max(v, 0.0);
  s.push_back(0.0);
  return sorted_unique(std::move(s));
}

GridFn delta_on_grid(const ConcaveFn& omega, std::span<const double> s_grid) {
  if (s_grid.empty()) throw Error(ErrorKind::EmptyGrid, "delta_on_grid: empty s-grid");
  std::vector<double> d;
  d.reserve(s_grid.size());
  for (double s : s_grid) d.push_back(delta_from_modulus(omega, s));
  return GridFn({s_grid.begin(), s_grid.end()}, std::move(d));
}

GridFn reconstruct_modulus(const GridFn& delta, std::span<const double> t_grid) {
  if (t_grid.empty()) throw Error(ErrorKind::EmptyGrid, "reconstruct_modulus: empty t-grid");
  std::vector<double> w;
  w.reserve(t_grid.size());
  for (double t : t_grid) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < delta.size(); ++i)
      best = std::min(best, 2.0 * delta.values()[i] + delta.grid()[i] * t);
    w.push_back(best);
  }
  return GridFn({t_grid.begin(), t_grid.end()}, std::move(w));
}

ConcaveFn classical_modulus(const RealFunctionOnSpace& f) {
  if (f.space().size() < 2) return ConcaveFn::zero();
  return concave_majorant(function_modulus(f.space(), f.values()));
}

LipRegularization lip_regularize(const RealFunctionOnSpace& f, double s, const ConcaveFn& omega_f) {
  const double delta = delta_from_modulus(omega_f, s);
  const FiniteMetricSpace& x = f.space();
  const std::size_t n = x.size();
  std::vector<double> fs(n);
  for (std::size_t p = 0; p < n; ++p) {
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < n; ++q) inf = std::min(inf, f.values()[q] + s * x.dist(p, q));
    fs[p] = delta + inf;
  }
  double excess = -std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    dev = std::max(dev, std::abs(f.values()[p] - fs[p]));
    for (std::size_t q = 0; q < n; ++q) {
      if (p != q) excess = std::max(excess, std::abs(fs[p] - fs[q]) - s * x.dist(p, q));
    }
  }
  if (n == 1) excess = 0.0;
  return LipRegularization{RealFunctionOnSpace(x, std::move(fs)),
                           delta,
                           excess,
                           dev,
                           excess <= kLipschitzTolerance,
                           dev <= delta + kDeviationTolerance};
}

double distance_to_lipschitz_ball(const RealFunctionOnSpace& f, double s) {
  if (!(s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "distance_to_lipschitz_ball: s < 0");
  const FiniteMetricSpace& x = f.space();
  const std::size_t n = x.size();
  const double lo = *std::min_element(f.values().begin(), f.values().end());
  // Variables u_0..u_{n-1} (shifted so f - lo >= 0 bounds them below) and e.
  LinearProgram lp;
  lp.num_vars = n + 1;
  lp.c.assign(n + 1, 0.0);
  lp.c[n] = -1.0;
  for (std::size_t p = 0; p < n; ++p) {
    const double fp = f.values()[p] - lo;
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      std::vector<double> row(n + 1, 0.0);
      row[p] = 1.0;
      row[q] = -1.0;
      lp.add_constraint(std::move(row), s * x.dist(p, q));
    }
    std::vector<double> up(n + 1, 0.0);
    up[p] = 1.0;
    up[n] = -1.0;
    lp.add_constraint(std::move(up), fp);
    std::vector<double> down(n + 1, 0.0);
    down[p] = -1.0;
    down[n] = -1.0;
    lp.add_constraint(std::move(down), -fp);
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw Error(ErrorKind::SolverFailure, "Lipschitz distance LP did not reach an optimum");
  }
  return std::max(0.0, -sol.objective);
}

std::vector<RepPair> sample_commutative_pairs(const FiniteMetricSpace& x, std::size_t count,
                                              std::size_t ambient_dim, Seed seed) {
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "sample count must be >= 1");
  if (ambient_dim == 0) throw Error(ErrorKind::InvalidArgument, "ambient_dim must be >= 1");
  const FdAlgebra alg = commutative_algebra(x);
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto random_mult = [&] {
    std::vector<std::size_t> m(x.size(), 0);
    for (std::size_t k = 0; k < ambient_dim; ++k) ++m[pick(rng)];
    return m;
  };
  std::vector<RepPair> pairs;
  pairs.reserve(count);
  for (std::size_t p = 0; p < count; ++p) {
    switch (p % 4) {
      case 0: {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        pairs.push_back({point_rep(x, a, ambient_dim), point_rep(x, b, ambient_dim)});
        break;
      }
      case 1: {
        const auto m = random_mult();
        const Unitary u1 = haar_unitary(ambient_dim, rng);
        const Unitary u2 = haar_unitary(ambient_dim, rng);
        pairs.push_back({Representation(alg, m, u1), Representation(alg, m, u2)});
        break;
      }
      case 2: {
        const auto m1 = random_mult();
        const auto m2 = random_mult();
        const Unitary u1 = haar_unitary(ambient_dim, rng);
        const Unitary u2 = haar_unitary(ambient_dim, rng);
        pairs.push_back({Representation(alg, m1, u1), Representation(alg, m2, u2)});
        break;
      }
      default: {
        const auto m = random_mult();
        const Unitary u1 = haar_unitary(ambient_dim, rng);
        const ComplexMatrix h = gaussian_hermitian(ambient_dim, rng);
        const Unitary u2 = u1 * exp_i_hermitian(h, 0.5 * unif(rng));
        pairs.push_back({Representation(alg, m, u1), Representation(alg, m, u2)});
        break;
      }
    }
  }
  return pairs;
}

std::vector<AlgebraElement> regularization_generators(const RealFunctionOnSpace& f,
                                                      const ConcaveFn& omega_f) {
  std::vector<AlgebraElement> out;
  for (double s : default_slope_grid(omega_f)) {
    if (!(s > 0.0)) continue;
    const auto reg = lip_regularize(f, s, omega_f);
    std::vector<double> g(reg.regularized.values().begin(), reg.regularized.values().end());
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    const double mid = 0.5 * (*lo + *hi);
    for (auto& v : g) v = (v - mid) / s;
    out.push_back(function_element(f.space(), std::span<const double>(g)));
  }
  return out;
}

SandwichReport sandwich_check(const RealFunctionOnSpace& u, const RealFunctionOnSpace& v,
                              std::span<const RepPair> pairs, const GeneratingSet& k) {
  require_same_space(u, v);
  if (pairs.empty()) throw Error(ErrorKind::EmptySampleSet, "sandwich_check: no pairs");
  const FiniteMetricSpace& x = u.space();
  if (!(k.algebra() == commutative_algebra(x))) {
    throw Error(ErrorKind::AlgebraMismatch, "sandwich_check: K is not over C(X)");
  }
  const ConcaveFn wu = classical_modulus(u);
  const ConcaveFn wv = classical_modulus(v);
  std::vector<Complex> fc(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) fc[p] = Complex(u.values()[p], v.values()[p]);
  const ConcaveFn wf = concave_majorant(function_modulus(x, std::span<const Complex>(fc)));

  std::vector<AlgebraElement> kext(k.elements().begin(), k.elements().end());
  for (auto& g : regularization_generators(u, wu)) kext.push_back(std::move(g));
  for (auto& g : regularization_generators(v, wv)) kext.push_back(std::move(g));

  const AlgebraElement eu = function_element(x, u.values());
  const AlgebraElement ev = function_element(x, v.values());
  const AlgebraElement ef = function_element(x, std::span<const Complex>(fc));

  SandwichReport r;
  r.samples = pairs.size();
  r.generators = kext.size();
  r.real_residual = r.imag_residual = r.complex_residual = -std::numeric_limits<double>::infinity();
  std::vector<ModulusSample> su, sf;
  for (const auto& pr : pairs) {
    const double d = rep_distance(pr.first, pr.second, std::span<const AlgebraElement>(kext));
    const double du = op_norm(eval_rep(pr.first, eu) - eval_rep(pr.second, eu));
    const double dv = op_norm(eval_rep(pr.first, ev) - eval_rep(pr.second, ev));
    const double df = op_norm(eval_rep(pr.first, ef) - eval_rep(pr.second, ef));
    r.real_residual = std::max(r.real_residual, du - wu(d));
    r.imag_residual = std::max(r.imag_residual, dv - wv(d));
    r.complex_residual = std::max(r.complex_residual, df - 2.0 * wf(d));
    su.push_back({d, du});
    sf.push_back({d, df});
  }
  const EmpiricalModulus mu(std::move(su));
  const EmpiricalModulus mf(std::move(sf));
  const std::array<const ConcaveFn*, 2> fns{&wu, &wf};
  const auto grid = comparison_grid(fns, mu.max_distance());
  r.real_step_residual = r.complex_step_residual = -std::numeric_limits<double>::infinity();
  for (double t : grid) {
    r.real_step_residual = std::max(r.real_step_residual, mu.step_eval(t) - wu(t));
    r.complex_step_residual = std::max(r.complex_step_residual, mf.step_eval(t) - 2.0 * wf(t));
  }
  return r;
}

void write_gridfn_csv(std::ostream& out, const GridFn& f) {
  out << "s_or_t,value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < f.size(); ++i) out << f.grid()[i] << ',' << f.values()[i] << '\n';
}

}  // namespace crep
