#include "crep/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "crep/hull.hpp"

namespace crep {

namespace {

// Deviations at zero distance larger than this mean K does not separate the pair.
constexpr double kZeroDistanceSlack = 1e-9;

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorKind::EmptySampleSet, what);
}

std::vector<double> pair_distances(std::span<const RepPair> pairs, const GeneratingSet& k) {
  std::vector<double> d;
  d.reserve(pairs.size());
  for (const auto& p : pairs) d.push_back(rep_distance(p.first, p.second, k));
  return d;
}

double max_abs_diff(const ConcaveFn& f, const ConcaveFn& g, std::span<const double> grid) {
  double r = 0.0;
  for (double t : grid) r = std::max(r, std::abs(f(t) - g(t)));
  return r;
}

double max_excess(const ConcaveFn& lhs, const ConcaveFn& rhs, std::span<const double> grid) {
  double r = 0.0;
  for (double t : grid) r = std::max(r, lhs(t) - rhs(t));
  return r;
}

// Sorted union of t-values with near-duplicates merged.
std::vector<double> merged_grid(std::vector<double> ts) {
  std::sort(ts.begin(), ts.end());
  const double scale = ts.empty() ? 1.0 : std::max(1.0, ts.back());
  std::vector<double> out;
  for (double t : ts) {
    if (out.empty() || t - out.back() > 1e-13 * scale) out.push_back(t);
  }
  return out;
}

ConcaveFn from_grid(std::span<const double> grid, auto&& value) {
  std::vector<Breakpoint> bp;
  bp.reserve(grid.size());
  for (double t : grid) bp.push_back({t, t == 0.0 ? 0.0 : value(t)});
  return ConcaveFn(std::move(bp));
}

}  // namespace

EmpiricalModulus::EmpiricalModulus(std::vector<ModulusSample> samples)
    : samples_(std::move(samples)) {
  require_nonempty(samples_.size(), "empirical modulus needs at least one sample");
  for (const auto& s : samples_) {
    if (!std::isfinite(s.distance) || !std::isfinite(s.deviation) || s.distance < 0.0 ||
        s.deviation < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "modulus samples must be finite and nonnegative");
    }
  }
  std::stable_sort(samples_.begin(), samples_.end(),
                   [](const ModulusSample& a, const ModulusSample& b) {
                     return a.distance < b.distance;
                   });
  running_max_.reserve(samples_.size());
  double m = 0.0;
  for (const auto& s : samples_) {
    m = std::max(m, s.deviation);
    running_max_.push_back(m);
  }
}

double EmpiricalModulus::max_distance() const noexcept { return samples_.back().distance; }

double EmpiricalModulus::max_deviation() const noexcept { return running_max_.back(); }

double EmpiricalModulus::step_eval(double t) const {
  if (t <= 0.0) return 0.0;
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                   [](double v, const ModulusSample& s) { return v < s.distance; });
  if (it == samples_.begin()) return 0.0;
  return running_max_[static_cast<std::size_t>(it - samples_.begin()) - 1];
}

EmpiricalModulus EmpiricalModulus::scaled(double factor) const {
  auto s = samples_;
  for (auto& x : s) x.deviation *= factor;
  return EmpiricalModulus(std::move(s));
}

ConcaveFn::ConcaveFn(std::vector<Breakpoint> breakpoints, double slack) : bp_(std::move(breakpoints)) {
  if (bp_.empty()) throw Error(ErrorKind::EmptyGrid, "ConcaveFn needs at least one breakpoint");
  if (bp_.front().t != 0.0 || bp_.front().value != 0.0) {
    throw Error(ErrorKind::InvalidArgument, "ConcaveFn must start at (0, 0)");
  }
  double vmax = 0.0;
  for (const auto& b : bp_) {
    if (!std::isfinite(b.t) || !std::isfinite(b.value)) {
      throw Error(ErrorKind::NonFinite, "ConcaveFn breakpoints must be finite");
    }
    vmax = std::max(vmax, std::abs(b.value));
  }
  const double tol = slack * std::max(1.0, vmax);
  for (std::size_t i = 1; i < bp_.size(); ++i) {
    if (!(bp_[i].t > bp_[i - 1].t)) {
      throw Error(ErrorKind::InvalidArgument, "ConcaveFn breakpoints must strictly increase in t");
    }
    if (bp_[i].value < bp_[i - 1].value - tol) {
      throw Error(ErrorKind::InvalidArgument, "ConcaveFn must be nondecreasing");
    }
  }
  for (std::size_t i = 1; i + 1 < bp_.size(); ++i) {
    const auto& a = bp_[i - 1];
    const auto& b = bp_[i];
    const auto& c = bp_[i + 1];
    const double chord = a.value + (c.value - a.value) * ((b.t - a.t) / (c.t - a.t));
    if (b.value < chord - tol) {
      throw Error(ErrorKind::InvalidArgument,
                  "ConcaveFn is not concave at t = " + std::to_string(b.t));
    }
  }
}

ConcaveFn ConcaveFn::zero() { return ConcaveFn({{0.0, 0.0}}); }

ConcaveFn ConcaveFn::capped_linear(double slope, double cap) {
  if (!(slope > 0.0) || !(cap > 0.0)) return zero();
  return ConcaveFn({{0.0, 0.0}, {cap / slope, cap}});
}

double ConcaveFn::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= bp_.back().t) return bp_.back().value;
  const auto it = std::upper_bound(bp_.begin(), bp_.end(), t,
                                   [](double v, const Breakpoint& b) { return v < b.t; });
  const Breakpoint& b = *it;
  const Breakpoint& a = *(it - 1);
  if (t == a.t) return a.value;
  return a.value + (b.value - a.value) * ((t - a.t) / (b.t - a.t));
}

std::vector<double> ConcaveFn::slopes() const {
  std::vector<double> s;
  for (std::size_t i = 1; i < bp_.size(); ++i)
    s.push_back((bp_[i].value - bp_[i - 1].value) / (bp_[i].t - bp_[i - 1].t));
  return s;
}

EmpiricalModulus empirical_modulus(std::span<const RepPair> pairs,
                                   std::span<const double> distances,
                                   std::span<const AlgebraElement> l) {
  require_nonempty(pairs.size(), "empirical_modulus: no representation pairs");
  require_nonempty(l.size(), "empirical_modulus: empty element set L");
  if (distances.size() != pairs.size()) {
    throw Error(ErrorKind::InvalidArgument, "empirical_modulus: one distance per pair required");
  }
  std::vector<ModulusSample> samples;
  samples.reserve(pairs.size() * l.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (const auto& a : l) {
      const double v = op_norm(eval_rep(pairs[p].first, a) - eval_rep(pairs[p].second, a));
      samples.push_back({distances[p], v});
    }
  }
  return EmpiricalModulus(std::move(samples));
}

EmpiricalModulus empirical_modulus(std::span<const RepPair> pairs, const GeneratingSet& k,
                                   std::span<const AlgebraElement> l) {
  require_nonempty(pairs.size(), "empirical_modulus: no representation pairs");
  const auto d = pair_distances(pairs, k);
  return empirical_modulus(pairs, d, l);
}

ConcaveFn concave_majorant(const EmpiricalModulus& f) {
  // Anchor (0, 0) plus the best deviation at each distinct distance.
  std::vector<Point2> pts{{0.0, 0.0}};
  for (const auto& s : f.samples()) {
    if (s.distance == 0.0) {
      if (s.deviation > kZeroDistanceSlack) {
        throw Error(ErrorKind::InvalidArgument,
                    "positive deviation at zero distance: K does not separate this pair");
      }
      continue;
    }
    if (s.distance == pts.back().x) {
      pts.back().y = std::max(pts.back().y, s.deviation);
    } else {
      pts.push_back({s.distance, s.deviation});
    }
  }
  // Past the first point attaining the maximum the majorant is flat, and points
  // beyond it cannot raise the hull to its left.
  std::size_t peak = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].y > pts[peak].y) peak = i;
  }
  const std::span<const Point2> prefix(pts.data(), peak + 1);
  const auto h = upper_hull(prefix);
  std::vector<Breakpoint> bp;
  bp.reserve(h.size());
  for (auto i : h) bp.push_back({prefix[i].x, prefix[i].y});
  return ConcaveFn(std::move(bp));
}

ConcaveFn compose_modulus(const ConcaveFn& outer, const ConcaveFn& inner) {
  std::vector<double> ts;
  const auto ib = inner.breakpoints();
  for (const auto& b : ib) ts.push_back(b.t);
  // Preimages under inner of the outer breakpoints are kinks of the composition.
  for (std::size_t s = 1; s < ib.size(); ++s) {
    const double v0 = ib[s - 1].value;
    const double v1 = ib[s].value;
    if (!(v1 > v0)) continue;
    for (const auto& ob : outer.breakpoints()) {
      if (ob.t > v0 && ob.t < v1) {
        ts.push_back(ib[s - 1].t + (ob.t - v0) * ((ib[s].t - ib[s - 1].t) / (v1 - v0)));
      }
    }
  }
  const auto grid = merged_grid(std::move(ts));
  return from_grid(grid, [&](double t) { return outer(inner(t)); });
}

ConcaveFn add(const ConcaveFn& f, const ConcaveFn& g) {
  std::vector<double> ts;
  for (const auto& b : f.breakpoints()) ts.push_back(b.t);
  for (const auto& b : g.breakpoints()) ts.push_back(b.t);
  const auto grid = merged_grid(std::move(ts));
  return from_grid(grid, [&](double t) { return f(t) + g(t); });
}

ConcaveFn scale(const ConcaveFn& f, double factor) {
  if (!(factor >= 0.0)) throw Error(ErrorKind::InvalidArgument, "scale factor must be >= 0");
  std::vector<Breakpoint> bp(f.breakpoints().begin(), f.breakpoints().end());
  for (auto& b : bp) b.value *= factor;
  return ConcaveFn(std::move(bp));
}

std::vector<double> comparison_grid(std::span<const ConcaveFn* const> fns, double t_max) {
  std::vector<double> ts;
  for (const auto* f : fns)
    for (const auto& b : f->breakpoints()) ts.push_back(b.t);
  for (std::size_t i = 0; i < kUniformGridPoints; ++i) {
    ts.push_back(t_max * static_cast<double>(i) / static_cast<double>(kUniformGridPoints - 1));
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

double CalculusReport::max_equality_residual() const {
  return std::max({unit_shift_residual, adjoint_residual, scaling_residual});
}

double CalculusReport::max_inequality_residual() const {
  return std::max(sum_residual, product_residual);
}

CalculusReport modulus_calculus_report(std::span<const RepPair> pairs, const GeneratingSet& k,
                                       const AlgebraElement& a, const AlgebraElement& b,
                                       Complex lambda) {
  require_nonempty(pairs.size(), "modulus_calculus_report: no representation pairs");
  const FdAlgebra& alg = k.algebra();
  const auto d = pair_distances(pairs, k);
  auto hull_of = [&](const AlgebraElement& x) {
    const std::array<AlgebraElement, 1> l{x};
    return concave_majorant(empirical_modulus(pairs, d, l));
  };
  const AlgebraElement unit = AlgebraElement::unit(alg);
  const ConcaveFn wa = hull_of(a);
  const ConcaveFn wb = hull_of(b);
  const ConcaveFn wa_adj = hull_of(a.adjoint());
  const ConcaveFn wla = hull_of(lambda * a);
  const ConcaveFn wapb = hull_of(a + b);
  const ConcaveFn wab = hull_of(a * b);
  const ConcaveFn wshift = hull_of(a + lambda * unit);
  const ConcaveFn wunit = hull_of(unit);

  const double na = element_norm(a);
  const double nb = element_norm(b);
  const ConcaveFn sum_rhs = add(wa, wb);
  const ConcaveFn prod_rhs = add(scale(wb, na), scale(wa, nb));
  const ConcaveFn la_rhs = scale(wa, std::abs(lambda));

  const std::array<const ConcaveFn*, 10> all{&wa,   &wb,    &wa_adj,  &wla,    &wapb,
                                             &wab,  &wshift, &sum_rhs, &prod_rhs, &la_rhs};
  const double t_max = *std::max_element(d.begin(), d.end());
  const auto grid = comparison_grid(all, t_max);

  CalculusReport r;
  r.sample_pairs = pairs.size();
  r.unit_shift_residual = max_abs_diff(wshift, wa, grid);
  r.adjoint_residual = max_abs_diff(wa_adj, wa, grid);
  r.scaling_residual = max_abs_diff(wla, la_rhs, grid);
  r.sum_residual = max_excess(wapb, sum_rhs, grid);
  r.product_residual = max_excess(wab, prod_rhs, grid);
  r.unit_modulus_sup = wunit.sup();
  return r;
}

double chain_inequality_check(std::span<const RepPair> pairs, const GeneratingSet& k,
                              const GeneratingSet& k2, const AlgebraElement& a) {
  require_nonempty(pairs.size(), "chain_inequality_check: no representation pairs");
  if (!(k.algebra() == k2.algebra())) {
    throw Error(ErrorKind::AlgebraMismatch, "chain_inequality_check: K and K' differ in algebra");
  }
  const auto dk = pair_distances(pairs, k);
  const auto dk2 = pair_distances(pairs, k2);
  const std::array<AlgebraElement, 1> la{a};
  const ConcaveFn lhs = concave_majorant(empirical_modulus(pairs, dk2, la));
  const ConcaveFn outer = concave_majorant(empirical_modulus(pairs, dk, la));
  const ConcaveFn inner = concave_majorant(empirical_modulus(pairs, dk2, k.elements()));
  const ConcaveFn rhs = compose_modulus(outer, inner);
  const std::array<const ConcaveFn*, 2> fns{&lhs, &rhs};
  const double t_max = *std::max_element(dk2.begin(), dk2.end());
  return max_excess(lhs, rhs, comparison_grid(fns, t_max));
}

double uniform_equivalence_residual(std::span<const RepPair> pairs, const GeneratingSet& k,
                                    const GeneratingSet& k2) {
  require_nonempty(pairs.size(), "uniform_equivalence_residual: no representation pairs");
  const auto dk = pair_distances(pairs, k);
  const auto dk2 = pair_distances(pairs, k2);
  const ConcaveFn w = concave_majorant(empirical_modulus(pairs, dk, k2.elements()));
  double r = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) r = std::max(r, dk2[p] - w(dk[p]));
  return r;
}

void write_modulus_csv(std::ostream& out, const EmpiricalModulus& f, const ConcaveFn& hull) {
  const std::array<const ConcaveFn*, 1> fns{&hull};
  const auto grid = comparison_grid(fns, f.max_distance());
  out << "t,step_value,hull_value\n" << std::setprecision(17);
  for (double t : grid) out << t << ',' << f.step_eval(t) << ',' << hull(t) << '\n';
}

}  // namespace crep
