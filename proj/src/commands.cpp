#include "crep/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include "crep/duality.hpp"
#include "crep/gallery.hpp"
#include "crep/modulus.hpp"
#include "crep/transport.hpp"

namespace crep {

namespace {

constexpr double kMetricTolerance = 1e-10;
constexpr double kEqualityTolerance = 1e-10;
constexpr double kInequalityTolerance = 1e-9;
constexpr double kDualityGapTolerance = 1e-9;
constexpr double kDiracTolerance = 1e-10;
constexpr double kRoundTripTolerance = 1e-9;

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

const Json& need(const Json& j, const char* key) {
  if (!j.contains(key)) bad_config(std::string("config is missing \"") + key + "\"");
  return j[key];
}

std::size_t size_or(const Json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<long long>() < 0) {
    bad_config(std::string(key) + " must be a nonnegative integer");
  }
  return j[key].get<std::size_t>();
}

double double_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad_config(std::string(key) + " must be a number");
  return j[key].get<double>();
}

std::vector<double> doubles(const Json& j, const char* what) {
  if (!j.is_array()) bad_config(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) bad_config(std::string(what) + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string to_text(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

std::vector<std::string> index_header(std::size_t n) {
  std::vector<std::string> h{"index"};
  for (std::size_t k = 0; k < n; ++k) h.push_back(std::to_string(k));
  return h;
}

std::vector<std::vector<double>> matrix_rows(const std::vector<std::vector<double>>& m) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<double> row{static_cast<double>(i)};
    row.insert(row.end(), m[i].begin(), m[i].end());
    rows.push_back(std::move(row));
  }
  return rows;
}

int verdict(bool ok) { return ok ? kExitPass : kExitViolated; }

}  // namespace

RunConfig resolve_config(const std::string& verb, const Json& file, const FlagOverrides& flags) {
  if (!file.is_object()) bad_config("config file must hold a JSON object");
  RunConfig cfg;
  cfg.verb = verb;
  cfg.file = file;
  if (file.contains("seed")) {
    if (!file["seed"].is_number_integer() || file["seed"].get<long long>() < 0) bad_config("seed must be a nonnegative integer");
    cfg.seed = file["seed"].get<Seed>();
  }
  if (file.contains("scenario")) {
    if (!file["scenario"].is_string()) bad_config("scenario must be a string");
    cfg.scenario = file["scenario"].get<std::string>();
  }
  if (file.contains("out")) {
    if (!file["out"].is_string()) bad_config("out must be a string");
    cfg.out_dir = file["out"].get<std::string>();
  }
  if (file.contains("tolerance")) cfg.tolerance = double_or(file, "tolerance", 0.0);
  if (file.contains("samples")) cfg.samples = size_or(file, "samples", 0);

  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.scenario) cfg.scenario = flags.scenario;
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  if (flags.tolerance) cfg.tolerance = flags.tolerance;
  if (flags.samples) cfg.samples = flags.samples;

  if (cfg.samples && *cfg.samples == 0) bad_config("sample counts must be >= 1");
  if (cfg.tolerance && !(*cfg.tolerance >= 0.0)) bad_config("tolerance must be >= 0");
  return cfg;
}

int cmd_metric(const RunConfig& cfg, std::ostream& log) {
  const Json& f = cfg.file;
  std::vector<Representation> reps;
  std::vector<AlgebraElement> k;
  std::optional<FiniteMetricSpace> space;
  std::optional<GenerationCheck> generation;
  if (f.contains("space")) {
    space = space_from_json(f["space"]);
    const std::size_t mult = std::max<std::size_t>(1, size_or(f, "ambient_mult", 1));
    const GeneratingSet gens = lipschitz_generators(*space);
    k.assign(gens.elements().begin(), gens.elements().end());
    for (std::size_t p = 0; p < space->size(); ++p) reps.push_back(point_rep(*space, p, mult));
    generation = GenerationCheck{true, space->size(), space->size()};
  } else {
    const FdAlgebra alg = algebra_from_json(need(f, "algebra"));
    k = elements_from_json(need(f, "K"), alg);
    if (k.empty()) bad_config("K must be nonempty");
    const Json& rs = need(f, "representations");
    if (!rs.is_array()) bad_config("representations must be an array");
    for (const auto& r : rs) reps.push_back(representation_from_json(r, alg));
    generation = verify_generates(GeneratingSet(alg, k));
  }
  if (reps.empty()) bad_config("at least one representation is required");
  const double tol = cfg.tolerance.value_or(kMetricTolerance);

  const std::size_t n = reps.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i][j] = rep_distance(reps[i], reps[j], std::span<const AlgebraElement>(k));

  double diag = 0.0, sym = 0.0, tri = 0.0, dist_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag = std::max(diag, std::abs(d[i][i]));
    for (std::size_t j = 0; j < n; ++j) {
      sym = std::max(sym, std::abs(d[i][j] - d[j][i]));
      for (std::size_t l = 0; l < n; ++l) tri = std::max(tri, d[i][l] - d[i][j] - d[j][l]);
      if (space) dist_res = std::max(dist_res, std::abs(d[i][j] - space->dist(i, j)));
    }
  }
  const bool ok = diag <= tol && sym <= tol && tri <= tol && dist_res <= tol;

  write_text_atomic(cfg.out_dir / "distances.csv", csv_text(index_header(n), matrix_rows(d)));
  Json report{{"command", "metric"},
              {"representations", n},
              {"max_diagonal", diag},
              {"max_symmetry_residual", sym},
              {"max_triangle_residual", tri},
              {"K_generates", generation->generates},
              {"K_span_dimension", generation->span_dimension},
              {"tolerance", tol},
              {"verdict", ok ? "pass" : "fail"}};
  if (space) report["max_dist_residual"] = dist_res;
  write_json_atomic(cfg.out_dir / "report.json", report);
  log << "metric: " << n << " representations, max triangle residual " << to_text(tri)
      << (space ? ", max |d_K - dist| " + to_text(dist_res) : std::string()) << ", "
      << (ok ? "pass" : "FAIL") << '\n';
  return verdict(ok);
}

int cmd_modulus(const RunConfig& cfg, std::ostream& log) {
  const Json& f = cfg.file;
  const FdAlgebra alg = algebra_from_json(need(f, "algebra"));
  const GeneratingSet k(alg, elements_from_json(need(f, "K"), alg));
  const auto elems = elements_from_json(need(f, "elements"), alg);
  if (elems.empty()) bad_config("elements must be nonempty");
  std::vector<std::size_t> mult(alg.block_count(), 1);
  if (f.contains("multiplicities")) {
    const Json& m = f["multiplicities"];
    if (!m.is_array() || m.size() != alg.block_count()) bad_config("one multiplicity per block");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i].is_number_integer() || m[i].get<long long>() < 0) bad_config("multiplicities must be nonnegative integers");
      mult[i] = m[i].get<std::size_t>();
    }
  }
  const std::size_t samples = cfg.samples.value_or(200);
  const double scale = double_or(f, "perturbation_scale", 0.25);
  const Complex lambda = f.contains("lambda") ? complex_from_json(f["lambda"]) : Complex(-2.0, 1.0);
  const double eq_tol = cfg.tolerance.value_or(kEqualityTolerance);
  const double ineq_tol = cfg.tolerance.value_or(kInequalityTolerance);

  const auto pairs = sample_rep_pairs(alg, mult, samples, cfg.seed, scale);
  std::vector<double> dist;
  for (const auto& p : pairs) dist.push_back(rep_distance(p.first, p.second, k));
  Json curves = Json::array();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::array<AlgebraElement, 1> one{elems[i]};
    const EmpiricalModulus em = empirical_modulus(pairs, dist, one);
    const ConcaveFn hull = concave_majorant(em);
    std::ostringstream csv;
    write_modulus_csv(csv, em, hull);
    const std::string name = "modulus_" + std::to_string(i) + ".csv";
    write_text_atomic(cfg.out_dir / name, csv.str());
    curves.push_back(Json{{"element", i}, {"csv", name}, {"sup", hull.sup()}});
  }

  const AlgebraElement& a = elems[0];
  const AlgebraElement& b = elems.size() > 1 ? elems[1] : elems[0];
  const CalculusReport rep = modulus_calculus_report(pairs, k, a, b, lambda);
  bool ok = rep.max_equality_residual() <= eq_tol && rep.unit_modulus_sup <= eq_tol &&
            rep.max_inequality_residual() <= ineq_tol;
  Json report{{"command", "modulus"},
              {"sample_pairs", rep.sample_pairs},
              {"seed", cfg.seed},
              {"curves", curves},
              {"unit_shift_residual", rep.unit_shift_residual},
              {"adjoint_residual", rep.adjoint_residual},
              {"scaling_residual", rep.scaling_residual},
              {"sum_residual", rep.sum_residual},
              {"product_residual", rep.product_residual},
              {"unit_modulus_sup", rep.unit_modulus_sup},
              {"equality_tolerance", eq_tol},
              {"inequality_tolerance", ineq_tol}};
  if (f.contains("K2")) {
    const GeneratingSet k2(alg, elements_from_json(f["K2"], alg));
    const double chain = chain_inequality_check(pairs, k, k2, a);
    report["chain_residual"] = chain;
    ok = ok && chain <= ineq_tol;
  }
  report["verdict"] = ok ? "pass" : "fail";
  write_json_atomic(cfg.out_dir / "report.json", report);
  log << "modulus: " << rep.sample_pairs << " pairs, equality residual "
      << to_text(rep.max_equality_residual()) << ", inequality residual "
      << to_text(rep.max_inequality_residual()) << ", " << (ok ? "pass" : "FAIL") << '\n';
  return verdict(ok);
}

int cmd_duality(const RunConfig& cfg, std::ostream& log) {
  const Json& f = cfg.file;
  const FiniteMetricSpace x = space_from_json(need(f, "space"));
  if (x.size() < 2) bad_config("duality needs at least two points");
  const RealFunctionOnSpace u(x, doubles(need(f, "f"), "f"));
  const RealFunctionOnSpace v(x, f.contains("v") ? doubles(f["v"], "v") : std::vector<double>(x.size(), 0.0));
  const std::size_t samples = cfg.samples.value_or(120);
  const std::size_t ambient = std::max<std::size_t>(1, size_or(f, "ambient_dim", 3));
  const double tol = cfg.tolerance.value_or(kRoundTripTolerance);

  const ConcaveFn omega = classical_modulus(u);
  const auto s_grid = default_slope_grid(omega);
  const GridFn delta = delta_on_grid(omega, s_grid);
  std::vector<double> t_grid;
  for (const auto& bp : omega.breakpoints()) t_grid.push_back(bp.t);
  const GridFn recon = reconstruct_modulus(delta, t_grid);
  double round_trip = 0.0;
  std::vector<std::vector<double>> omega_rows;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    round_trip = std::max(round_trip, std::abs(recon.values()[i] - omega(t_grid[i])));
    omega_rows.push_back({t_grid[i], omega(t_grid[i]), recon.values()[i]});
  }
  const GridFn bi = biconjugate(delta);
  const GridFn bibi = biconjugate(bi);
  double envelope_gap = 0.0;
  bool idempotent = true;
  for (std::size_t i = 0; i < bi.size(); ++i) {
    envelope_gap = std::max(envelope_gap, std::abs(bi.values()[i] - delta.values()[i]));
    idempotent = idempotent && bi.values()[i] == bibi.values()[i];
  }

  double lip_excess = -1.0, dev_excess = -1.0, lp_gap = 0.0;
  std::vector<std::vector<double>> reg_rows;
  for (double s : s_grid) {
    const auto reg = lip_regularize(u, s, omega);
    const double lp = distance_to_lipschitz_ball(u, s);
    lip_excess = std::max(lip_excess, reg.lipschitz_excess);
    dev_excess = std::max(dev_excess, reg.sup_deviation - reg.delta);
    lp_gap = std::max(lp_gap, std::abs(lp - reg.delta));
    reg_rows.push_back({s, reg.delta, reg.lipschitz_excess, reg.sup_deviation, lp});
  }

  const auto pairs = sample_commutative_pairs(x, samples, ambient, cfg.seed);
  const SandwichReport sw = sandwich_check(u, v, pairs, lipschitz_generators(x));
  const double sandwich = std::max({sw.real_residual, sw.imag_residual, sw.complex_residual});

  const bool ok = round_trip <= tol && envelope_gap <= tol && idempotent &&
                  lip_excess <= kLipschitzTolerance && dev_excess <= kDeviationTolerance &&
                  sandwich <= tol;
  {
    std::ostringstream csv;
    write_gridfn_csv(csv, delta);
    write_text_atomic(cfg.out_dir / "delta.csv", csv.str());
  }
  write_text_atomic(cfg.out_dir / "omega.csv", csv_text({"t", "omega", "reconstructed"}, omega_rows));
  write_text_atomic(cfg.out_dir / "regularization.csv",
                    csv_text({"s", "delta", "lipschitz_excess", "sup_deviation", "lp_distance"}, reg_rows));
  write_json_atomic(cfg.out_dir / "report.json",
                    Json{{"command", "duality"},
                         {"seed", cfg.seed},
                         {"round_trip_residual", round_trip},
                         {"envelope_gap", envelope_gap},
                         {"biconjugate_idempotent", idempotent},
                         {"max_lipschitz_excess", lip_excess},
                         {"max_deviation_excess", dev_excess},
                         {"max_lp_delta_gap", lp_gap},
                         {"sandwich_real_residual", sw.real_residual},
                         {"sandwich_imag_residual", sw.imag_residual},
                         {"sandwich_complex_residual", sw.complex_residual},
                         {"sandwich_samples", sw.samples},
                         {"sandwich_generators", sw.generators},
                         {"tolerance", tol},
                         {"verdict", ok ? "pass" : "fail"}});
  log << "duality: round trip " << to_text(round_trip) << ", Lipschitz excess "
      << to_text(lip_excess) << ", sandwich " << to_text(sandwich) << ", LP gap (reported) "
      << to_text(lp_gap) << ", " << (ok ? "pass" : "FAIL") << '\n';
  return verdict(ok);
}

int cmd_transport(const RunConfig& cfg, std::ostream& log) {
  const Json& f = cfg.file;
  const FiniteMetricSpace x = space_from_json(need(f, "space"));
  std::vector<Measure> measures;
  std::vector<std::optional<std::size_t>> dirac_of;
  if (f.contains("measures")) {
    if (!f["measures"].is_array()) bad_config("measures must be an array");
    for (const auto& m : f["measures"]) {
      measures.push_back(measure_from_json(m, x));
      dirac_of.push_back(m.contains("dirac") ? std::optional<std::size_t>(x.index_of(m["dirac"].get<std::string>()))
                                             : std::nullopt);
    }
  } else {
    for (std::size_t p = 0; p < x.size(); ++p) {
      measures.push_back(Measure::dirac(x, p));
      dirac_of.emplace_back(p);
    }
  }
  if (measures.empty()) bad_config("at least one measure is required");
  const double tol = cfg.tolerance.value_or(kDualityGapTolerance);

  const std::size_t n = measures.size();
  std::vector<std::vector<double>> value(n, std::vector<double>(n, 0.0));
  double gap = 0.0, dirac_res = 0.0;
  Json results = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const KantorovichResult dual = kantorovich(measures[i], measures[j]);
      const double primal = kantorovich_primal_oracle(measures[i], measures[j]);
      value[i][j] = dual.value;
      gap = std::max(gap, std::abs(dual.value - primal));
      if (dirac_of[i] && dirac_of[j]) {
        dirac_res = std::max(dirac_res, std::abs(dual.value - x.dist(*dirac_of[i], *dirac_of[j])));
      }
      if (i < j) {
        results.push_back(Json{{"i", i}, {"j", j}, {"value", dual.value}, {"primal", primal},
                               {"optimal_f", dual.potential}});
      }
    }
  }
  const bool ok = gap <= tol && dirac_res <= kDiracTolerance;
  write_text_atomic(cfg.out_dir / "kantorovich.csv", csv_text(index_header(n), matrix_rows(value)));
  write_json_atomic(cfg.out_dir / "results.json",
                    Json{{"command", "transport"},
                         {"pairs", results},
                         {"max_duality_gap", gap},
                         {"max_dirac_residual", dirac_res},
                         {"tolerance", tol},
                         {"verdict", ok ? "pass" : "fail"}});
  log << "transport: " << n << " measures, max duality gap " << to_text(gap)
      << ", max dirac residual " << to_text(dirac_res) << ", " << (ok ? "pass" : "FAIL") << '\n';
  return verdict(ok);
}

int cmd_gallery(const RunConfig& cfg, std::ostream& log) {
  if (!cfg.scenario) bad_config("gallery needs a scenario (--scenario or \"scenario\" in the config)");
  const Json params = cfg.file.contains("params") ? cfg.file["params"] : Json::object();
  const ScenarioResult r = run_scenario(*cfg.scenario, params, cfg.seed, cfg.out_dir, cfg.tolerance);
  log << r.name << ": claimed " << to_text(r.claimed_bound) << ", measured "
      << to_text(r.measured) << ", tolerance " << to_text(r.tolerance) << ", "
      << (r.pass ? "pass" : "FAIL") << '\n';
  return verdict(r.pass);
}

int run_command(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    if (cfg.verb == "metric") return cmd_metric(cfg, log);
    if (cfg.verb == "modulus") return cmd_modulus(cfg, log);
    if (cfg.verb == "duality") return cmd_duality(cfg, log);
    if (cfg.verb == "transport") return cmd_transport(cfg, log);
    if (cfg.verb == "gallery") return cmd_gallery(cfg, log);
    err << "error: unknown command \"" << cfg.verb << "\"\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return (e.kind() == ErrorKind::SolverFailure || e.kind() == ErrorKind::NonFinite) ? kExitNumerical
                                                                                      : kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: config: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace crep
