#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "crep/algebra.hpp"
#include "crep/reps.hpp"
#include "crep/transport.hpp"

namespace crep {

using Json = nlohmann::json;

/// Written into every JSON artifact as "schema_version".
inline constexpr int kSchemaVersion = 1;

// All *_from_json functions throw Error(ConfigError) on schema violations.
// Library validation errors (non-unitary conjugator, bad metric) propagate with
// their own kind.

/// {"block_dims": [n_1, ...]}
FdAlgebra algebra_from_json(const Json& j);
Json to_json(const FdAlgebra& a);

/// A complex number is either a bare number or [re, im].
Complex complex_from_json(const Json& j);

/// Square matrix as nested rows [[z, ...], ...] or a flat row-major list. The
/// nested reading wins when every element is an array as long as the list.
ComplexMatrix matrix_from_json(const Json& j);
Json to_json(const ComplexMatrix& m);

/// {"blocks": [block, ...]} where each block is a matrix or {"diag": [z, ...]}.
AlgebraElement element_from_json(const Json& j, const FdAlgebra& alg);
Json to_json(const AlgebraElement& x);

std::vector<AlgebraElement> elements_from_json(const Json& j, const FdAlgebra& alg);

/// {"multiplicities": [...], "ambient_dim": m (optional check),
///  "conjugator": "identity" | matrix | {"haar_seed": s} | {"permutation": [...]}}
Representation representation_from_json(const Json& j, const FdAlgebra& alg);
Json to_json(const Representation& r);

/// {"source": algebra, "target": algebra, "multiplicity_matrix": [[c_ji]],
///  "conjugators": [matrix | "identity", ...]}
Homomorphism homomorphism_from_json(const Json& j);
Json to_json(const Homomorphism& h);

/// {"points": [label, ...], "dist": nested rows or flat row-major}
FiniteMetricSpace space_from_json(const Json& j);
Json to_json(const FiniteMetricSpace& x);

/// {"weights": [...]} or {"dirac": label}
Measure measure_from_json(const Json& j, const FiniteMetricSpace& x);

/// Parses a JSON file; ConfigError if unreadable or malformed.
Json read_json_file(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// CSV text with a header row and full-precision numbers.
std::string csv_text(const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Pretty-printed JSON with schema_version added to objects.
void write_json_atomic(const std::filesystem::path& path, Json j);

}  // namespace crep
