#include "crep/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <system_error>

namespace crep {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object()) config_error(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) config_error(std::string("missing key \"") + key + "\"");
  return *it;
}

std::size_t as_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    config_error(std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) config_error(std::string(what) + " must be a number");
  return j.get<double>();
}

std::vector<std::size_t> size_list(const Json& j, const char* what) {
  if (!j.is_array()) config_error(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(as_size(v, what));
  return out;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

bool is_complex_literal(const Json& j) {
  return j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number());
}

std::size_t exact_sqrt(std::size_t n) {
  const auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) config_error("flat matrix length " + std::to_string(n) + " is not a square");
  return r;
}

Unitary unitary_from_json(const Json& j, std::size_t dim) {
  if (j.is_string()) {
    if (j.get<std::string>() != "identity") config_error("unknown conjugator \"" + j.get<std::string>() + "\"");
    return Unitary::identity(dim);
  }
  if (j.is_object()) {
    if (j.contains("haar_seed")) return haar_unitary(dim, static_cast<Seed>(as_size(j["haar_seed"], "haar_seed")));
    if (j.contains("permutation")) {
      const auto perm = size_list(j["permutation"], "permutation");
      if (perm.size() != dim) config_error("permutation length does not match ambient dimension");
      return permutation_unitary(perm);
    }
    if (j.contains("entries")) return Unitary(matrix_from_json(j["entries"]));
    config_error("conjugator object needs haar_seed, permutation or entries");
  }
  Unitary u(matrix_from_json(j));
  if (u.dim() != dim) config_error("conjugator dimension does not match ambient dimension");
  return u;
}

}  // namespace

FdAlgebra algebra_from_json(const Json& j) {
  return FdAlgebra(size_list(require(j, "block_dims"), "block_dims"));
}

Json to_json(const FdAlgebra& a) {
  return Json{{"block_dims", std::vector<std::size_t>(a.block_dims().begin(), a.block_dims().end())}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (is_complex_literal(j)) return {j[0].get<double>(), j[1].get<double>()};
  config_error("complex literal must be a number or [re, im]");
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) config_error("matrix must be a nonempty array");
  std::vector<Complex> entries;
  std::size_t dim = 0;
  // Nested rows iff every element is an array as long as the outer list;
  // otherwise a flat row-major list of complex literals.
  bool nested = true;
  for (const auto& row : j) nested = nested && row.is_array() && row.size() == j.size();
  if (nested) {
    dim = j.size();
    for (const auto& row : j)
      for (const auto& z : row) entries.push_back(complex_from_json(z));
  } else {
    for (const auto& z : j) entries.push_back(complex_from_json(z));
    dim = exact_sqrt(entries.size());
  }
  return ComplexMatrix::from_row_major(dim, entries);
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

AlgebraElement element_from_json(const Json& j, const FdAlgebra& alg) {
  const Json& blocks = require(j, "blocks");
  if (!blocks.is_array() || blocks.size() != alg.block_count()) {
    config_error("element needs one entry per block (" + std::to_string(alg.block_count()) + ")");
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < alg.block_count(); ++i) {
    const Json& b = blocks[i];
    if (b.is_object()) {
      const Json& d = require(b, "diag");
      if (!d.is_array()) config_error("diag must be an array");
      std::vector<Complex> diag;
      for (const auto& z : d) diag.push_back(complex_from_json(z));
      if (diag.empty()) config_error("diag must be nonempty");
      out.push_back(ComplexMatrix::diagonal(diag));
    } else {
      out.push_back(matrix_from_json(b));
    }
    if (out.back().dim() != alg.block_dim(i)) {
      config_error("block " + std::to_string(i) + " has the wrong size");
    }
  }
  return AlgebraElement(alg, std::move(out));
}

Json to_json(const AlgebraElement& x) {
  Json blocks = Json::array();
  for (const auto& b : x.blocks()) blocks.push_back(to_json(b));
  return Json{{"blocks", blocks}};
}

std::vector<AlgebraElement> elements_from_json(const Json& j, const FdAlgebra& alg) {
  if (!j.is_array()) config_error("element list must be an array");
  std::vector<AlgebraElement> out;
  for (const auto& e : j) out.push_back(element_from_json(e, alg));
  return out;
}

Representation representation_from_json(const Json& j, const FdAlgebra& alg) {
  const auto mult = size_list(require(j, "multiplicities"), "multiplicities");
  if (mult.size() != alg.block_count()) config_error("one multiplicity per block is required");
  const std::size_t dim = ambient_dimension(alg, mult);
  if (j.contains("ambient_dim") && as_size(j["ambient_dim"], "ambient_dim") != dim) {
    config_error("ambient_dim disagrees with the multiplicities");
  }
  const Json conj = j.contains("conjugator") ? j["conjugator"] : Json("identity");
  return Representation(alg, mult, unitary_from_json(conj, dim));
}

Json to_json(const Representation& r) {
  return Json{{"multiplicities",
               std::vector<std::size_t>(r.multiplicities().begin(), r.multiplicities().end())},
              {"ambient_dim", r.ambient_dim()},
              {"conjugator", to_json(r.conjugator().matrix())}};
}

Homomorphism homomorphism_from_json(const Json& j) {
  FdAlgebra src = algebra_from_json(require(j, "source"));
  FdAlgebra tgt = algebra_from_json(require(j, "target"));
  const Json& c = require(j, "multiplicity_matrix");
  if (!c.is_array()) config_error("multiplicity_matrix must be an array of rows");
  std::vector<std::vector<std::size_t>> rows;
  for (const auto& row : c) rows.push_back(size_list(row, "multiplicity_matrix row"));
  const Json& w = require(j, "conjugators");
  if (!w.is_array() || w.size() != tgt.block_count()) {
    config_error("one conjugator per target block is required");
  }
  std::vector<Unitary> conj;
  for (std::size_t k = 0; k < w.size(); ++k) conj.push_back(unitary_from_json(w[k], tgt.block_dim(k)));
  return Homomorphism(std::move(src), std::move(tgt), std::move(rows), std::move(conj));
}

Json to_json(const Homomorphism& h) {
  Json conj = Json::array();
  for (const auto& w : h.conjugators()) conj.push_back(to_json(w.matrix()));
  return Json{{"source", to_json(h.source())},
              {"target", to_json(h.target())},
              {"multiplicity_matrix", h.multiplicity_matrix()},
              {"conjugators", conj}};
}

FiniteMetricSpace space_from_json(const Json& j) {
  const Json& d = require(j, "dist");
  if (!d.is_array() || d.empty()) config_error("dist must be a nonempty array");
  std::vector<double> flat;
  if (d[0].is_array()) {
    for (const auto& row : d) {
      if (!row.is_array() || row.size() != d.size()) config_error("dist rows must form a square");
      for (const auto& v : row) flat.push_back(as_double(v, "dist entry"));
    }
  } else {
    for (const auto& v : d) flat.push_back(as_double(v, "dist entry"));
  }
  const std::size_t n = exact_sqrt(flat.size());
  if (!j.contains("points")) return FiniteMetricSpace::from_matrix(n, std::move(flat));
  const Json& p = j["points"];
  if (!p.is_array() || p.size() != n) config_error("points must list one label per row of dist");
  std::vector<std::string> labels;
  for (const auto& l : p) {
    if (!l.is_string()) config_error("point labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return FiniteMetricSpace(std::move(labels), std::move(flat));
}

Json to_json(const FiniteMetricSpace& x) {
  Json rows = Json::array();
  for (std::size_t p = 0; p < x.size(); ++p) {
    Json row = Json::array();
    for (std::size_t q = 0; q < x.size(); ++q) row.push_back(x.dist(p, q));
    rows.push_back(std::move(row));
  }
  return Json{{"points", std::vector<std::string>(x.labels().begin(), x.labels().end())},
              {"dist", rows}};
}

Measure measure_from_json(const Json& j, const FiniteMetricSpace& x) {
  if (j.is_object() && j.contains("dirac")) {
    if (!j["dirac"].is_string()) config_error("dirac must name a point label");
    return Measure::dirac(x, x.index_of(j["dirac"].get<std::string>()));
  }
  const Json& w = require(j, "weights");
  if (!w.is_array()) config_error("weights must be an array");
  std::vector<double> weights;
  for (const auto& v : w) weights.push_back(as_double(v, "weight"));
  return Measure(x, std::move(weights));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    config_error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorKind::ConfigError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::ConfigError, "cannot rename into " + path.string() + ": " + ec.message());
}

std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
    out << '\n';
  }
  return out.str();
}

void write_json_atomic(const std::filesystem::path& path, Json j) {
  if (j.is_object()) j["schema_version"] = kSchemaVersion;
  write_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace crep
