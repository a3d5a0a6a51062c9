#include "crep/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crep/algebra.hpp"
#include "crep/reps.hpp"

namespace crep {

namespace {

constexpr double kOrbitTolerance = 1e-9;
constexpr double kScatterTolerance = 1e-9;
constexpr double kA0Tolerance = 1e-9;
constexpr double kProjectionTolerance = 1e-10;
constexpr double kScalarTolerance = 1e-10;

void finalize(ScenarioResult& r, const std::vector<double>& values) {
  if (r.kind == ClaimKind::AtLeast) {
    r.measured = *std::min_element(values.begin(), values.end());
    r.pass = r.measured >= r.claimed_bound - r.tolerance;
  } else {
    r.measured = values.front();
    for (double v : values)
      if (std::abs(v - r.claimed_bound) > std::abs(r.measured - r.claimed_bound)) r.measured = v;
    r.pass = std::abs(r.measured - r.claimed_bound) <= r.tolerance;
  }
}

Eigen::VectorXcd unit_vector(std::size_t n, std::size_t k) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
  e(static_cast<Eigen::Index>(k)) = 1.0;
  return e;
}

// Orthogonalizes v against the columns collected so far (two passes).
bool extend_basis(std::vector<Eigen::VectorXcd>& cols, Eigen::VectorXcd v) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& c : cols) v -= c.dot(v) * c;
  const double nv = v.norm();
  if (nv < 1e-6) return false;
  cols.push_back(v / nv);
  return true;
}

}  // namespace

OrbitFrame orbit_frame(const ComplexMatrix& t) {
  const std::size_t n = t.dim();
  if (n < 3) throw Error(ErrorKind::DimensionTooSmall, "orbit_dispersion needs dim(T) >= 3");
  const Eigen::MatrixXcd& m = t.eigen();
  const Complex lambda = m.trace() / static_cast<double>(n);
  const Eigen::MatrixXcd centered =
      m - lambda * Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  if (op_norm(ComplexMatrix(centered)) <= kScalarTolerance) {
    return {true, Eigen::MatrixXcd::Identity(m.rows(), m.cols()), Complex(0.0, 0.0)};
  }

  // xi with T xi and xi independent: a basis vector if one is not an
  // eigenvector, otherwise (e_i + e_j)/sqrt(2) for two distinct eigenvalues.
  std::vector<Eigen::VectorXcd> candidates;
  for (std::size_t k = 0; k < n; ++k) candidates.push_back(unit_vector(n, k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      candidates.push_back((unit_vector(n, i) + unit_vector(n, j)) / std::sqrt(2.0));
  const double threshold = 1e-6 * std::max(1.0, op_norm(t));
  Eigen::VectorXcd xi, resid;
  double best = -1.0;
  for (const auto& c : candidates) {
    const Eigen::VectorXcd tc = m * c;
    const Eigen::VectorXcd r = tc - c.dot(tc) * c;
    if (r.norm() > best) {
      best = r.norm();
      xi = c;
      resid = r;
    }
    if (best > threshold) break;
  }
  if (!(best > 0.0)) throw Error(ErrorKind::SolverFailure, "no vector with T xi independent of xi");

  std::vector<Eigen::VectorXcd> cols{xi, resid / resid.norm()};
  for (std::size_t k = 0; k < n && cols.size() < n; ++k) extend_basis(cols, unit_vector(n, k));
  Eigen::MatrixXcd basis(m.rows(), m.cols());
  for (std::size_t k = 0; k < n; ++k) basis.col(static_cast<Eigen::Index>(k)) = cols[k];
  const Complex b = cols[1].dot(m * cols[0]);
  return {false, basis, b};
}

ScenarioResult orbit_dispersion(const ComplexMatrix& t, std::optional<double> tolerance) {
  const OrbitFrame frame = orbit_frame(t);
  const std::size_t n = t.dim();
  ScenarioResult r;
  r.name = "orbit_dispersion";
  r.kind = ClaimKind::Equal;
  r.tolerance = tolerance.value_or(kOrbitTolerance);
  r.table.header = {"n", "m", "dispersion"};
  if (frame.scalar) {
    r.claim = "scalar T has a one-point orbit, dispersion 0";
    r.claimed_bound = 0.0;
    r.note = "scalar";
  } else {
    r.claim = "||(U_n T U_n - U_m T U_m) e_1|| = sqrt(2) |b| for all n != m";
    r.claimed_bound = std::sqrt(2.0) * std::abs(frame.b);
    r.note = "b = " + std::to_string(frame.b.real()) + (frame.b.imag() < 0 ? "" : "+") +
             std::to_string(frame.b.imag()) + "i";
  }
  const Eigen::MatrixXcd& w = frame.basis;
  const Eigen::MatrixXcd& m = t.eigen();
  const Eigen::VectorXcd e1 = w.col(0);
  // Swap e_2 with e_k (k = 2 is the identity), in the constructed basis.
  std::vector<Eigen::VectorXcd> images;
  for (std::size_t k = 1; k < n; ++k) {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    if (k != 1) {
      const auto a = static_cast<Eigen::Index>(1);
      const auto c = static_cast<Eigen::Index>(k);
      s(a, a) = s(c, c) = 0.0;
      s(a, c) = s(c, a) = 1.0;
    }
    const Eigen::MatrixXcd u = w * s * w.adjoint();
    images.push_back(u * m * u * e1);
  }
  std::vector<double> values;
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t c = a + 1; c < images.size(); ++c) {
      const double v = (images[a] - images[c]).norm();
      values.push_back(v);
      r.table.rows.push_back({static_cast<double>(a + 2), static_cast<double>(c + 2), v});
    }
  }
  finalize(r, values);
  return r;
}

ScenarioResult compacts_scatter(std::size_t n, const std::vector<std::size_t>& m_list,
                                std::optional<double> tolerance) {
  if (m_list.size() < 2) throw Error(ErrorKind::InvalidArgument, "m_list needs at least two indices");
  for (std::size_t m : m_list)
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "m_list indices must be >= 2");
  const std::size_t mmax = *std::max_element(m_list.begin(), m_list.end());
  if (n < mmax + 1) {
    throw Error(ErrorKind::DimensionTooSmall, "compacts_scatter needs N >= max(m_list) + 1");
  }
  const FdAlgebra alg({n});
  // K: P_k / k for every k, plus the truncated shift.
  std::vector<AlgebraElement> k;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> d(n, 0.0);
    d[j] = 1.0 / static_cast<double>(j + 1);
    k.push_back(AlgebraElement(alg, {ComplexMatrix::diagonal(d)}));
  }
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j + 1 < n; ++j) shift(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(j)) = 1.0;
  k.push_back(AlgebraElement(alg, {ComplexMatrix(shift)}));
  const AlgebraElement& p1 = k.front();  // P_1 / 1

  ScenarioResult r;
  r.name = "compacts_scatter";
  r.claim = "d_K(pi_{1,m}, pi_{1,m'}) >= ||pi_{1,m}(P_1) - pi_{1,m'}(P_1)|| >= 1 for m != m'";
  r.kind = ClaimKind::AtLeast;
  r.claimed_bound = 1.0;
  r.tolerance = tolerance.value_or(kScatterTolerance);
  r.table.header = {"m", "m_prime", "projection_gap", "d_K"};
  std::vector<Representation> reps;
  for (std::size_t m : m_list) reps.emplace_back(alg, std::vector<std::size_t>{1}, swap_unitary(n, 0, m - 1));
  std::vector<double> values;
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t c = a + 1; c < reps.size(); ++c) {
      if (m_list[a] == m_list[c]) continue;
      const double gap = op_norm(eval_rep(reps[a], p1) - eval_rep(reps[c], p1));
      const double dk = rep_distance(reps[a], reps[c], std::span<const AlgebraElement>(k));
      values.push_back(std::min(gap, dk));
      r.table.rows.push_back({static_cast<double>(m_list[a]), static_cast<double>(m_list[c]), gap, dk});
    }
  }
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "m_list needs two distinct indices");
  finalize(r, values);
  return r;
}

ScenarioResult a0_discrete(std::size_t n, std::optional<double> tolerance) {
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "a0_discrete needs N >= 2");
  if (n > 10) throw Error(ErrorKind::InvalidArgument, "a0_discrete caps N at 10 (ambient 2^N)");
  std::vector<std::size_t> dims;
  for (std::size_t j = 1; j <= n; ++j) dims.push_back(std::size_t{1} << j);
  const FdAlgebra alg(dims);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t d : dims) {
    std::vector<Complex> diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = (i % 2 == 0) ? 1.0 : -1.0;
    blocks.push_back(ComplexMatrix::diagonal(diag));
  }
  const AlgebraElement a(alg, std::move(blocks));
  const std::size_t ambient = std::size_t{1} << n;

  // rho_j: block j repeated 2^{N-j} times, each copy conjugated by
  // U_j = I_2 + ... + I_2 + V, i.e. the last two coordinates of every chunk swapped.
  std::vector<Representation> reps;
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<std::size_t> mult(n, 0);
    mult[j - 1] = std::size_t{1} << (n - j);
    const std::size_t chunk = std::size_t{1} << j;
    std::vector<std::size_t> perm(ambient);
    for (std::size_t i = 0; i < ambient; ++i) perm[i] = i;
    for (std::size_t start = 0; start < ambient; start += chunk)
      std::swap(perm[start + chunk - 2], perm[start + chunk - 1]);
    reps.emplace_back(alg, std::move(mult), permutation_unitary(perm));
  }

  ScenarioResult r;
  r.name = "a0_discrete";
  r.claim = "d_K(rho_n, rho_m) >= ||rho_n(a) - rho_m(a)|| = ||B|| = 2 for n < m";
  r.kind = ClaimKind::Equal;
  r.claimed_bound = 2.0;
  r.tolerance = tolerance.value_or(kA0Tolerance);
  r.table.header = {"n", "m", "norm", "d_K"};
  const std::vector<AlgebraElement> k{a};
  std::vector<double> values;
  for (std::size_t p = 0; p < reps.size(); ++p) {
    for (std::size_t q = p + 1; q < reps.size(); ++q) {
      const double v = op_norm(eval_rep(reps[p], a) - eval_rep(reps[q], a));
      const double dk = rep_distance(reps[p], reps[q], std::span<const AlgebraElement>(k));
      values.push_back(v);
      if (dk < v - r.tolerance) values.push_back(dk);
      r.table.rows.push_back({static_cast<double>(p + 1), static_cast<double>(q + 1), v, dk});
    }
  }
  finalize(r, values);
  return r;
}

ScenarioResult projection_separation(std::size_t dim,
                                     const std::vector<std::vector<std::size_t>>& subsets,
                                     std::optional<double> tolerance) {
  if (dim == 0) throw Error(ErrorKind::DimensionTooSmall, "projection_separation needs dim >= 1");
  if (subsets.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two subsets");
  std::vector<std::set<std::size_t>> sets;
  for (const auto& s : subsets) {
    std::set<std::size_t> set(s.begin(), s.end());
    if (set.size() != s.size()) throw Error(ErrorKind::InvalidArgument, "subset lists an index twice");
    for (std::size_t i : set)
      if (i < 1 || i > dim) throw Error(ErrorKind::IndexOutOfRange, "subset index outside 1..dim");
    if (std::find(sets.begin(), sets.end(), set) != sets.end()) {
      throw Error(ErrorKind::DuplicateSubset, "subsets must be pairwise distinct");
    }
    sets.push_back(std::move(set));
  }
  const FdAlgebra alg({1, 1});
  const AlgebraElement first(alg, {ComplexMatrix::diagonal({1.0}), ComplexMatrix::diagonal({0.0})});
  std::vector<Representation> reps;
  for (const auto& set : sets) {
    std::vector<std::size_t> perm;
    for (std::size_t i : set) perm.push_back(i - 1);
    for (std::size_t i = 1; i <= dim; ++i)
      if (!set.count(i)) perm.push_back(i - 1);
    reps.emplace_back(alg, std::vector<std::size_t>{set.size(), dim - set.size()},
                      permutation_unitary(perm));
  }

  ScenarioResult r;
  r.name = "projection_separation";
  r.claim = "1 <= ||P - Q|| = ||pi_P(1,0) - pi_Q(1,0)|| for distinct coordinate projections";
  r.kind = ClaimKind::Equal;
  r.claimed_bound = 1.0;
  r.tolerance = tolerance.value_or(kProjectionTolerance);
  r.table.header = {"subset_p", "subset_q", "norm", "d_K"};
  const std::vector<AlgebraElement> k{first};
  std::vector<double> values;
  for (std::size_t p = 0; p < reps.size(); ++p) {
    for (std::size_t q = p + 1; q < reps.size(); ++q) {
      const double v = op_norm(eval_rep(reps[p], first) - eval_rep(reps[q], first));
      const double dk = rep_distance(reps[p], reps[q], std::span<const AlgebraElement>(k));
      values.push_back(v);
      r.table.rows.push_back({static_cast<double>(p), static_cast<double>(q), v, dk});
    }
  }
  finalize(r, values);
  return r;
}

std::vector<std::string> scenario_names() {
  return {"orbit_dispersion", "compacts_scatter", "a0_discrete", "projection_separation"};
}

namespace {

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

void check_keys(const Json& params, std::initializer_list<const char*> allowed) {
  for (auto it = params.begin(); it != params.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) bad_config("unknown parameter \"" + it.key() + "\"");
  }
}

std::size_t get_size(const Json& params, const char* key, std::size_t fallback) {
  if (!params.contains(key)) return fallback;
  const Json& v = params[key];
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    bad_config(std::string(key) + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> get_size_list(const Json& v, const char* key) {
  if (!v.is_array()) bad_config(std::string(key) + " must be an array of integers");
  std::vector<std::size_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 0) {
      bad_config(std::string(key) + " must hold nonnegative integers");
    }
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

ComplexMatrix orbit_operator(const Json& params, Seed seed) {
  if (params.contains("T")) return matrix_from_json(params["T"]);
  const std::size_t dim = get_size(params, "dim", 3);
  std::string kind = "shift";
  if (params.contains("kind")) {
    if (!params["kind"].is_string()) bad_config("kind must be a string");
    kind = params["kind"].get<std::string>();
  }
  if (dim == 0) bad_config("dim must be >= 1");
  if (kind == "shift") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j + 1 < dim; ++j) m(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(j)) = 1.0;
    return ComplexMatrix(m);
  }
  if (kind == "scalar") return Complex(3.0, 0.0) * ComplexMatrix::identity(dim);
  if (kind == "diag") {
    std::vector<Complex> d;
    for (std::size_t j = 1; j <= dim; ++j) d.emplace_back(static_cast<double>(j), 0.0);
    return ComplexMatrix::diagonal(d);
  }
  if (kind == "random") {
    Rng rng(seed);
    return gaussian_matrix(dim, rng);
  }
  bad_config("kind must be shift, scalar, diag or random");
}

Json result_json(const ScenarioResult& r, const Json& params, Seed seed) {
  return Json{{"name", r.name},
              {"claim", r.claim},
              {"comparison", r.kind == ClaimKind::Equal ? "equal" : "at_least"},
              {"claimed_bound", r.claimed_bound},
              {"measured", r.measured},
              {"tolerance", r.tolerance},
              {"verdict", r.pass ? "pass" : "fail"},
              {"note", r.note},
              {"seed", seed},
              {"params", params},
              {"artifacts", r.artifacts}};
}

}  // namespace

ScenarioResult run_scenario(const std::string& name, const Json& params_in, Seed seed,
                            const std::filesystem::path& out_dir,
                            std::optional<double> tolerance) {
  const Json params = params_in.is_null() ? Json::object() : params_in;
  if (!params.is_object()) bad_config("scenario parameters must be a JSON object");
  ScenarioResult r;
  try {
    if (name == "orbit_dispersion" || name == "orbit") {
      check_keys(params, {"T", "dim", "kind"});
      r = orbit_dispersion(orbit_operator(params, seed), tolerance);
    } else if (name == "compacts_scatter") {
      check_keys(params, {"N", "m_list"});
      const std::size_t n = get_size(params, "N", 8);
      std::vector<std::size_t> m_list;
      if (params.contains("m_list")) {
        m_list = get_size_list(params["m_list"], "m_list");
      } else {
        for (std::size_t m = 2; m + 1 <= n; ++m) m_list.push_back(m);
      }
      r = compacts_scatter(n, m_list, tolerance);
    } else if (name == "a0_discrete") {
      check_keys(params, {"N"});
      r = a0_discrete(get_size(params, "N", 4), tolerance);
    } else if (name == "projection_separation") {
      check_keys(params, {"dim", "subsets"});
      const std::size_t dim = get_size(params, "dim", 4);
      std::vector<std::vector<std::size_t>> subsets{{1}, {2}, {1, 2}, {3, 4}};
      if (params.contains("subsets")) {
        const Json& s = params["subsets"];
        if (!s.is_array()) bad_config("subsets must be an array of arrays");
        subsets.clear();
        for (const auto& sub : s) subsets.push_back(get_size_list(sub, "subsets"));
      }
      r = projection_separation(dim, subsets, tolerance);
    } else {
      throw Error(ErrorKind::UnknownScenario, "no scenario named \"" + name + "\"");
    }
  } catch (const Json::exception& e) {
    bad_config(std::string("scenario parameters: ") + e.what());
  }

  if (!out_dir.empty()) {
    const auto csv = out_dir / (r.name + ".csv");
    const auto json = out_dir / "result.json";
    r.artifacts = {json.string(), csv.string()};
    write_text_atomic(csv, csv_text(r.table.header, r.table.rows));
    write_json_atomic(json, result_json(r, params, seed));
  }
  return r;
}

}  // namespace crep
