#include "crep/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "crep/lp.hpp"

namespace crep {

namespace {

void require_same_space(const Measure& mu, const Measure& nu) {
  if (!(mu.space() == nu.space())) {
    throw Error(ErrorKind::SpaceMismatch, "measures live on different metric spaces");
  }
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> table)
    : labels_(std::move(labels)), d_(std::move(table)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw Error(ErrorKind::TooFewPoints, "metric space needs at least one point");
  if (d_.size() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "distance table must have " + std::to_string(n * n) +
                                                  " entries, got " + std::to_string(d_.size()));
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != n) {
    throw Error(ErrorKind::InvalidArgument, "metric space labels must be unique");
  }
  for (double v : d_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "distances must be finite and nonnegative");
    }
  }
  const double tol = kTriangleTolerance * std::max(1.0, diameter());
  for (std::size_t x = 0; x < n; ++x) {
    if (dist(x, x) != 0.0) throw Error(ErrorKind::InvalidArgument, "dist(x, x) must be 0");
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && !(dist(x, y) > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "distinct points at distance 0");
      }
      if (std::abs(dist(x, y) - dist(y, x)) > tol) {
        throw Error(ErrorKind::InvalidArgument, "distance table is not symmetric");
      }
      for (std::size_t z = 0; z < n; ++z) {
        if (dist(x, z) > dist(x, y) + dist(y, z) + tol) {
          throw Error(ErrorKind::InvalidArgument, "triangle inequality fails at (" + labels_[x] +
                                                      ", " + labels_[y] + ", " + labels_[z] + ")");
        }
      }
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::size_t n, std::vector<double> dist) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteMetricSpace(std::move(labels), std::move(dist));
}

FiniteMetricSpace FiniteMetricSpace::random_euclidean(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> px(n), py(n);
  for (std::size_t i = 0; i < n; ++i) {
    px[i] = unif(rng);
    py[i] = unif(rng);
  }
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::hypot(px[i] - px[j], py[i] - py[j]);
  return from_matrix(n, std::move(d));
}

double FiniteMetricSpace::diameter() const noexcept {
  return d_.empty() ? 0.0 : *std::max_element(d_.begin(), d_.end());
}

std::size_t FiniteMetricSpace::index_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error(ErrorKind::UnknownPoint, "no point labelled '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

Measure::Measure(FiniteMetricSpace space, std::vector<double> weights)
    : space_(std::move(space)), w_(std::move(weights)) {
  if (w_.size() != space_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "measure needs one weight per point");
  }
  double total = 0.0;
  for (double w : w_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "measure weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw Error(ErrorKind::InvalidArgument, "measure weights sum to " + std::to_string(total));
  }
}

Measure Measure::dirac(const FiniteMetricSpace& space, std::size_t x) {
  if (x >= space.size()) throw Error(ErrorKind::UnknownPoint, "dirac: point index out of range");
  std::vector<double> w(space.size(), 0.0);
  w[x] = 1.0;
  return Measure(space, std::move(w));
}

Measure Measure::random(const FiniteMetricSpace& space, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w(space.size());
  for (auto& v : w) v = unif(rng) < 0.3 ? 0.0 : unif(rng);
  const double s0 = std::accumulate(w.begin(), w.end(), 0.0);
  if (s0 == 0.0) w[std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng)] = 1.0;
  const double s = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= s;
  return Measure(space, std::move(w));
}

FdAlgebra commutative_algebra(const FiniteMetricSpace& x) {
  return FdAlgebra(std::vector<std::size_t>(x.size(), 1));
}

AlgebraElement function_element(const FiniteMetricSpace& x, std::span<const Complex> values) {
  if (values.size() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "function needs one value per point");
  }
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(values.size());
  for (const auto& v : values) blocks.push_back(ComplexMatrix::diagonal({v}));
  return AlgebraElement(commutative_algebra(x), std::move(blocks));
}

AlgebraElement function_element(const FiniteMetricSpace& x, std::span<const double> values) {
  const std::vector<Complex> c(values.begin(), values.end());
  return function_element(x, std::span<const Complex>(c));
}

GeneratingSet lipschitz_generators(const FiniteMetricSpace& x) {
  if (x.size() < 2) {
    throw Error(ErrorKind::TooFewPoints, "lipschitz_generators needs at least two points");
  }
  std::vector<AlgebraElement> gens;
  for (std::size_t p = 0; p < x.size(); ++p) {
    std::vector<double> f(x.size());
    for (std::size_t q = 0; q < x.size(); ++q) f[q] = x.dist(p, q);
    gens.push_back(function_element(x, std::span<const double>(f)));
  }
  return certify(GeneratingSet(commutative_algebra(x), std::move(gens)), x.size());
}

Representation point_rep(const FiniteMetricSpace& x, std::size_t point, std::size_t ambient_mult) {
  if (point >= x.size()) throw Error(ErrorKind::UnknownPoint, "point_rep: index out of range");
  if (ambient_mult == 0) throw Error(ErrorKind::InvalidArgument, "ambient_mult must be >= 1");
  std::vector<std::size_t> mult(x.size(), 0);
  mult[point] = ambient_mult;
  return Representation::canonical(commutative_algebra(x), std::move(mult));
}

Representation point_rep(const FiniteMetricSpace& x, std::string_view label,
                         std::size_t ambient_mult) {
  return point_rep(x, x.index_of(label), ambient_mult);
}

double separating_sup(const FiniteMetricSpace& x, std::size_t p, std::size_t q) {
  double best = 0.0;
  for (std::size_t z = 0; z < x.size(); ++z) best = std::max(best, std::abs(x.dist(z, p) - x.dist(z, q)));
  return best;
}

EmpiricalModulus function_modulus(const FiniteMetricSpace& x, std::span<const Complex> values) {
  if (values.size() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "function needs one value per point");
  }
  if (x.size() < 2) throw Error(ErrorKind::TooFewPoints, "function_modulus needs two points");
  std::vector<ModulusSample> s;
  for (std::size_t p = 0; p < x.size(); ++p)
    for (std::size_t q = 0; q < x.size(); ++q)
      if (p != q) s.push_back({x.dist(p, q), std::abs(values[p] - values[q])});
  return EmpiricalModulus(std::move(s));
}

EmpiricalModulus function_modulus(const FiniteMetricSpace& x, std::span<const double> values) {
  const std::vector<Complex> c(values.begin(), values.end());
  return function_modulus(x, std::span<const Complex>(c));
}

KantorovichResult kantorovich(const Measure& mu, const Measure& nu) {
  require_same_space(mu, nu);
  const FiniteMetricSpace& x = mu.space();
  const std::size_t n = x.size();
  if (n == 1) return {0.0, {0.0}};

  // Shift the potential to g >= 0; optimal potentials then fit under the diameter.
  LinearProgram lp;
  lp.num_vars = n;
  for (std::size_t p = 0; p < n; ++p) lp.c.push_back(mu.weights()[p] - nu.weights()[p]);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      std::vector<double> row(n, 0.0);
      row[p] = 1.0;
      row[q] = -1.0;
      lp.add_constraint(std::move(row), x.dist(p, q));
    }
    std::vector<double> row(n, 0.0);
    row[p] = 1.0;
    lp.add_constraint(std::move(row), x.diameter());
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw Error(ErrorKind::SolverFailure, "Kantorovich dual LP did not reach an optimum");
  }
  KantorovichResult out;
  const double lo = *std::min_element(sol.x.begin(), sol.x.end());
  out.potential.reserve(n);
  for (double g : sol.x) out.potential.push_back(g - lo);
  out.value = 0.0;
  for (std::size_t p = 0; p < n; ++p) out.value += out.potential[p] * lp.c[p];
  out.value = std::max(out.value, 0.0);
  return out;
}

double kantorovich_primal_oracle(const Measure& mu, const Measure& nu) {
  require_same_space(mu, nu);
  const FiniteMetricSpace& x = mu.space();
  const std::size_t n = x.size();
  constexpr double kMassEps = 1e-15;
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Nodes 0..n-1 are sources, n..2n-1 sinks. flow[i][j] moves mass i -> j.
  std::vector<double> supply(mu.weights().begin(), mu.weights().end());
  std::vector<double> demand(nu.weights().begin(), nu.weights().end());
  std::vector<std::vector<double>> flow(n, std::vector<double>(n, 0.0));

  for (std::size_t iter = 0; iter < 4 * n * n + 16; ++iter) {
    double remaining = 0.0;
    for (double s : supply) remaining += s;
    if (remaining <= 1e-14) break;

    // Bellman-Ford over the residual graph from every source with supply left.
    std::vector<double> dist(2 * n, kInf);
    std::vector<long> pred(2 * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      if (supply[i] > kMassEps) dist[i] = 0.0;
    for (std::size_t round = 0; round < 2 * n; ++round) {
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (dist[i] < kInf && dist[i] + x.dist(i, j) < dist[n + j] - 1e-15) {
            dist[n + j] = dist[i] + x.dist(i, j);
            pred[n + j] = static_cast<long>(i);
            changed = true;
          }
          if (flow[i][j] > kMassEps && dist[n + j] < kInf &&
              dist[n + j] - x.dist(i, j) < dist[i] - 1e-15) {
            dist[i] = dist[n + j] - x.dist(i, j);
            pred[i] = static_cast<long>(n + j);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    std::size_t sink = 2 * n;
    for (std::size_t j = 0; j < n; ++j) {
      if (demand[j] > kMassEps && dist[n + j] < kInf && (sink == 2 * n || dist[n + j] < dist[sink]))
        sink = n + j;
    }
    if (sink == 2 * n) throw Error(ErrorKind::SolverFailure, "transport oracle found no path");

    // Walk back to the originating source, collecting the bottleneck.
    double amount = demand[sink - n];
    std::size_t v = sink;
    while (pred[v] != -1) {
      const auto u = static_cast<std::size_t>(pred[v]);
      if (v < n) amount = std::min(amount, flow[v][u - n]);  // backward edge sink u -> source v
      v = u;
    }
    amount = std::min(amount, supply[v]);
    supply[v] -= amount;
    demand[sink - n] -= amount;
    v = sink;
    while (pred[v] != -1) {
      const auto u = static_cast<std::size_t>(pred[v]);
      if (v >= n) {
        flow[u][v - n] += amount;
      } else {
        flow[v][u - n] -= amount;
      }
      v = u;
    }
  }
  double cost = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost += flow[i][j] * x.dist(i, j);
  return cost;
}

Measure pushforward(const Measure& mu, std::span<const std::size_t> map,
                    const FiniteMetricSpace& target) {
  if (map.size() != mu.space().size()) {
    throw Error(ErrorKind::DimensionMismatch, "pushforward map needs one image per point");
  }
  std::vector<double> w(target.size(), 0.0);
  for (std::size_t p = 0; p < map.size(); ++p) {
    if (map[p] >= target.size()) throw Error(ErrorKind::IndexOutOfRange, "map image out of range");
    w[map[p]] += mu.weights()[p];
  }
  return Measure(target, std::move(w));
}

}  // namespace crep
