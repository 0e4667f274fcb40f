#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "opineq/bivariate.hpp"
#include "opineq/converse_bounds.hpp"
#include "opineq/norms.hpp"
#include "opineq/positive_maps.hpp"

namespace opineq {

using Json = nlohmann::json;

/// Complex scalars serialize as [re, im]; matrices as row-major nested
/// arrays of those pairs.
Json to_json(const Complex& z);
Json to_json(const ComplexMatrix& m);
Json to_json(const HermitianMatrix& m);
Json to_json(const KrausMap& map);
Json to_json(const PositiveMapField& field);
Json to_json(const VectorField& field);
Json to_json(const ScalarFunctionSpec& f);
Json to_json(const BivariateSpec& F);
Json to_json(const NormSpec& n);
Json to_json(const ComparisonVerdict& v);

Complex complex_from_json(const Json& j, const std::string& where);
ComplexMatrix matrix_from_json(const Json& j, const std::string& where);
HermitianMatrix hermitian_from_json(const Json& j, const std::string& where);
ScalarFunctionSpec function_from_json(const Json& j);
BivariateSpec bivariate_from_json(const Json& j);
NormSpec norm_from_json(const Json& j);

/// One parsed problem instance. The top-level schema is
///   {"kind", "interval", "field", "function", "F", "params"};
/// "field" distinguishes kraus / vector / paired families via its "type",
/// "function" holds either a single spec or {"f": ..., "g": ...}.
struct Instance {
  std::string kind;
  std::optional<Interval> interval;
  std::optional<PositiveMapField> field;
  std::optional<VectorField> vfield;
  std::vector<Rev3Point> pairs;
  std::optional<ScalarFunctionSpec> f;
  std::optional<ScalarFunctionSpec> g;
  std::optional<BivariateSpec> F;
  std::map<std::string, double> params;
  std::optional<NormSpec> norm;
};

Instance instance_from_json(const Json& j);

/// Parse with ParseError wrapping (malformed JSON, wrong shapes, missing
/// keys all surface as ErrorKind::ParseError with a field path).
Instance instance_from_string(const std::string& text);
Instance instance_from_file(const std::string& path);

/// Serialize a Jensen witness (or any kraus-field instance) for replay.
Json instance_to_json(const std::string& kind, const PositiveMapField& field,
                      const ScalarFunctionSpec& f);

/// Canonical dump: sorted keys (nlohmann object order), shortest
/// round-trip doubles, one-space indentation, trailing newline — the byte
/// format the determinism guarantee is stated over.
std::string canonical_dump(const Json& j);

}  // namespace opineq
