#include "opineq/io.hpp"

#include <fstream>
#include <sstream>

namespace opineq {

namespace {

[[noreturn]] void parse_fail(const std::string& where,
                             const std::string& what) {
  raise(ErrorKind::ParseError, where + ": " + what);
}

double number_at(const Json& j, const std::string& key,
                 const std::string& where) {
  if (!j.contains(key)) parse_fail(where, "missing key '" + key + "'");
  const Json& v = j.at(key);
  if (!v.is_number()) parse_fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const Json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<double>();
}

std::map<std::string, double> params_map(const Json& j,
                                         const std::string& where) {
  std::map<std::string, double> out;
  if (!j.is_object()) parse_fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.value().is_number())
      out[it.key()] = it.value().get<double>();
    else if (it.key() != "norm")
      parse_fail(where + "." + it.key(), "expected a number");
  }
  return out;
}

std::vector<Complex> vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    parse_fail(where, "expected a non-empty array of complex entries");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(
        complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

Json interval_to_json(const Interval& window) {
  return Json::array({window.lo, window.hi});
}

}  // namespace

Json to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const HermitianMatrix& m) { return to_json(m.matrix()); }

Json to_json(const KrausMap& map) {
  Json blocks = Json::array();
  for (const ComplexMatrix& k : map.kraus_ops()) blocks.push_back(to_json(k));
  return blocks;
}

Json to_json(const PositiveMapField& field) {
  Json points = Json::array();
  for (const FieldPoint& pt : field.points()) {
    points.push_back(Json{{"weight", pt.weight},
                          {"kraus", to_json(pt.map)},
                          {"x", to_json(pt.datum)}});
  }
  Json j{{"points", std::move(points)}};
  if (field.interval()) j["interval"] = interval_to_json(*field.interval());
  return j;
}

Json to_json(const VectorField& field) {
  Json points = Json::array();
  for (const VectorFieldPoint& pt : field.points()) {
    Json vec = Json::array();
    for (const Complex& z : pt.vec) vec.push_back(to_json(z));
    points.push_back(Json{{"weight", pt.weight},
                          {"a", to_json(pt.op)},
                          {"x", std::move(vec)}});
  }
  Json j{{"type", "vector"}, {"points", std::move(points)}};
  if (field.interval()) j["interval"] = interval_to_json(*field.interval());
  return j;
}

Json to_json(const ScalarFunctionSpec& f) {
  Json params = Json::object();
  if (f.name() == "power" && !f.params().empty()) params["p"] = f.params()[0];
  if (f.name() == "affine" && f.params().size() == 2) {
    params["a"] = f.params()[0];
    params["b"] = f.params()[1];
  }
  return Json{{"name", f.name()}, {"params", std::move(params)}};
}

Json to_json(const BivariateSpec& F) {
  Json params = Json::object();
  switch (F.kind()) {
    case BivariateSpec::Kind::difference:
      params["lambda"] = F.lambda();
      return Json{{"name", "difference"}, {"params", std::move(params)}};
    case BivariateSpec::Kind::ratio:
      return Json{{"name", "ratio"}, {"params", std::move(params)}};
    case BivariateSpec::Kind::linear_probe:
      params["lambda"] = F.lambda();
      params["q"] = F.q();
      return Json{{"name", "linear_probe"}, {"params", std::move(params)}};
    case BivariateSpec::Kind::affine:
      params["a"] = F.a();
      params["b"] = F.b();
      params["c"] = F.c();
      return Json{{"name", "affine"}, {"params", std::move(params)}};
    case BivariateSpec::Kind::custom:
      break;
  }
  raise(ErrorKind::InvalidParameter, "custom objectives have no JSON form");
}

Json to_json(const NormSpec& n) {
  Json out;
  switch (n.kind) {
    case NormSpec::Kind::op: out["kind"] = "operator"; break;
    case NormSpec::Kind::trace: out["kind"] = "trace"; break;
    case NormSpec::Kind::frobenius: out["kind"] = "frobenius"; break;
    case NormSpec::Kind::ky_fan: out["kind"] = "ky_fan"; out["k"] = n.k; break;
    case NormSpec::Kind::schatten:
      out["kind"] = "schatten";
      out["p"] = n.p;
      break;
  }
  out["normalization"] = n.is_gauge() ? "gauge" : "unit";
  return out;
}

Json to_json(const ComparisonVerdict& v) {
  return Json{{"min_eig_or_slack", v.min_eig_of_difference},
              {"tolerance", v.tolerance},
              {"holds", v.holds}};
}

Complex complex_from_json(const Json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    parse_fail(where, "a complex entry must be [re, im] or a plain number");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty())
    parse_fail(where, "a matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    parse_fail(where, "matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      parse_fail(where + "[" + std::to_string(i) + "]",
                 "row length " + std::to_string(row.size()) +
                     " differs from " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = complex_from_json(
          row[c],
          where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
  }
  return m;
}

HermitianMatrix hermitian_from_json(const Json& j, const std::string& where) {
  return HermitianMatrix(matrix_from_json(j, where));
}

ScalarFunctionSpec function_from_json(const Json& j) {
  if (j.is_string()) return builtin(j.get<std::string>());
  if (!j.is_object() || !j.contains("name"))
    parse_fail("function", "expected {\"name\", \"params\"} or a name string");
  const std::string name = j.at("name").get<std::string>();
  std::map<std::string, double> params;
  if (j.contains("params"))
    params = params_map(j.at("params"), "function.params");
  return builtin(name, params);
}

BivariateSpec bivariate_from_json(const Json& j) {
  std::string name;
  Json params = Json::object();
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object() && j.contains("name")) {
    name = j.at("name").get<std::string>();
    if (j.contains("params")) params = j.at("params");
  } else {
    parse_fail("F", "expected {\"name\", \"params\"} or a name string");
  }
  if (name == "difference" || name == "diff")
    return BivariateSpec::difference(number_or(params, "lambda", 1.0));
  if (name == "ratio") return BivariateSpec::ratio();
  if (name == "linear_probe" || name == "probe")
    return BivariateSpec::linear_probe(number_or(params, "lambda", 1.0),
                                       number_or(params, "q", 2.0));
  if (name == "affine")
    return BivariateSpec::affine(number_or(params, "a", 1.0),
                                 number_or(params, "b", 0.0),
                                 number_or(params, "c", 0.0));
  parse_fail("F", "unknown objective '" + name + "'");
}

NormSpec norm_from_json(const Json& j) {
  NormSpec spec;
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else if (j.is_object() && j.contains("kind")) {
    kind = j.at("kind").get<std::string>();
    if (j.contains("k")) spec.k = j.at("k").get<int>();
    if (j.contains("p")) spec.p = j.at("p").get<double>();
    if (j.contains("normalization")) {
      const std::string n = j.at("normalization").get<std::string>();
      if (n == "gauge")
        spec.normalization = NormSpec::Normalization::gauge;
      else if (n == "unit")
        spec.normalization = NormSpec::Normalization::unit;
      else
        parse_fail("norm.normalization", "expected 'gauge' or 'unit'");
    }
  } else {
    parse_fail("norm", "expected a norm object or kind string");
  }
  if (kind == "operator")
    spec.kind = NormSpec::Kind::op;
  else if (kind == "trace")
    spec.kind = NormSpec::Kind::trace;
  else if (kind == "frobenius")
    spec.kind = NormSpec::Kind::frobenius;
  else if (kind == "ky_fan")
    spec.kind = NormSpec::Kind::ky_fan;
  else if (kind == "schatten")
    spec.kind = NormSpec::Kind::schatten;
  else
    parse_fail("norm.kind", "unknown norm '" + kind + "'");
  spec.validate();
  return spec;
}

namespace {

const Json& points_array(const Json& j) {
  if (!j.contains("points") || !j.at("points").is_array() ||
      j.at("points").empty())
    parse_fail("field.points", "expected a non-empty array");
  return j.at("points");
}

PositiveMapField kraus_field_from_json(const Json& j) {
  std::vector<FieldPoint> pts;
  std::size_t idx = 0;
  for (const Json& pj : points_array(j)) {
    const std::string where = "field.points[" + std::to_string(idx) + "]";
    const double w = number_at(pj, "weight", where);
    if (!pj.contains("kraus") || !pj.at("kraus").is_array() ||
        pj.at("kraus").empty())
      parse_fail(where + ".kraus", "expected a non-empty array of matrices");
    std::vector<ComplexMatrix> blocks;
    std::size_t bidx = 0;
    for (const Json& bj : pj.at("kraus")) {
      blocks.push_back(matrix_from_json(
          bj, where + ".kraus[" + std::to_string(bidx) + "]"));
      ++bidx;
    }
    const std::size_t out_dim = blocks.front().rows();
    const std::size_t in_dim = blocks.front().cols();
    KrausMap map(in_dim, out_dim, std::move(blocks));
    HermitianMatrix datum =
        pj.contains("x") ? hermitian_from_json(pj.at("x"), where + ".x")
                         : HermitianMatrix::identity(in_dim);
    pts.push_back(FieldPoint{w, std::move(map), std::move(datum)});
    ++idx;
  }
  return PositiveMapField(std::move(pts));
}

VectorField vector_field_from_json(const Json& j) {
  std::vector<VectorFieldPoint> pts;
  std::size_t idx = 0;
  for (const Json& pj : points_array(j)) {
    const std::string where = "field.points[" + std::to_string(idx) + "]";
    VectorFieldPoint pt;
    pt.weight = number_at(pj, "weight", where);
    if (!pj.contains("a")) parse_fail(where, "missing operator 'a'");
    pt.op = hermitian_from_json(pj.at("a"), where + ".a");
    if (!pj.contains("x")) parse_fail(where, "missing vector 'x'");
    pt.vec = vector_from_json(pj.at("x"), where + ".x");
    pts.push_back(std::move(pt));
    ++idx;
  }
  return VectorField(std::move(pts));
}

std::vector<Rev3Point> paired_field_from_json(const Json& j) {
  std::vector<Rev3Point> pts;
  std::size_t idx = 0;
  for (const Json& pj : points_array(j)) {
    const std::string where = "field.points[" + std::to_string(idx) + "]";
    Rev3Point pt;
    pt.weight = number_at(pj, "weight", where);
    if (!pj.contains("a") || !pj.contains("b"))
      parse_fail(where, "paired points need operators 'a' and 'b'");
    pt.a = hermitian_from_json(pj.at("a"), where + ".a");
    pt.b = hermitian_from_json(pj.at("b"), where + ".b");
    if (!pj.contains("x")) parse_fail(where, "missing vector 'x'");
    pt.x = vector_from_json(pj.at("x"), where + ".x");
    pts.push_back(std::move(pt));
    ++idx;
  }
  return pts;
}

std::optional<Interval> interval_from_json(const Json& j,
                                           const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail(where, "expected [m, M]");
  return Interval::closed(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("instance", "top level must be an object");
  Instance inst;
  if (!j.contains("kind") || !j.at("kind").is_string())
    parse_fail("kind", "every instance needs a string 'kind'");
  inst.kind = j.at("kind").get<std::string>();

  if (j.contains("interval"))
    inst.interval = interval_from_json(j.at("interval"), "interval");

  if (j.contains("field")) {
    const Json& fj = j.at("field");
    if (!fj.is_object()) parse_fail("field", "expected an object");
    if (!inst.interval && fj.contains("interval"))
      inst.interval = interval_from_json(fj.at("interval"), "field.interval");
    std::string type;
    if (fj.contains("type")) {
      type = fj.at("type").get<std::string>();
    } else {
      const Json& pts = points_array(fj);
      if (pts[0].contains("kraus"))
        type = "kraus";
      else if (pts[0].contains("b"))
        type = "paired";
      else
        type = "vector";
    }
    if (type == "kraus") {
      inst.field = kraus_field_from_json(fj);
      if (inst.interval) inst.field = inst.field->with_interval(*inst.interval);
    } else if (type == "vector") {
      VectorField vf = vector_field_from_json(fj);
      if (inst.interval) vf = VectorField(vf.points(), *inst.interval);
      inst.vfield = std::move(vf);
    } else if (type == "paired") {
      inst.pairs = paired_field_from_json(fj);
    } else {
      parse_fail("field.type", "unknown field type '" + type + "'");
    }
  }

  if (j.contains("function")) {
    const Json& fj = j.at("function");
    if (fj.is_object() && (fj.contains("f") || fj.contains("g"))) {
      if (fj.contains("f")) inst.f = function_from_json(fj.at("f"));
      if (fj.contains("g")) inst.g = function_from_json(fj.at("g"));
    } else {
      inst.f = function_from_json(fj);
    }
  }

  if (j.contains("F")) inst.F = bivariate_from_json(j.at("F"));

  if (j.contains("params")) {
    const Json& pj = j.at("params");
    inst.params = params_map(pj, "params");
    if (pj.contains("norm")) inst.norm = norm_from_json(pj.at("norm"));
  }
  return inst;
}

Instance instance_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    raise(ErrorKind::ParseError, e.what());
  }
  return instance_from_json(j);
}

Instance instance_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return instance_from_string(buf.str());
}

Json instance_to_json(const std::string& kind, const PositiveMapField& field,
                      const ScalarFunctionSpec& f) {
  Json j;
  j["kind"] = kind;
  if (field.interval()) j["interval"] = interval_to_json(*field.interval());
  j["field"] = to_json(field);
  j["function"] = to_json(f);
  j["params"] = Json::object();
  return j;
}

std::string canonical_dump(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace opineq
