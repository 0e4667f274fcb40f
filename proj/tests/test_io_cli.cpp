#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "opineq/generators.hpp"
#include "opineq/harness.hpp"

using namespace opineq;

namespace {

namespace fs = std::filesystem;

std::string corpus_file(const std::string& name) {
  return std::string(OPINEQ_CORPUS_DIR) + "/" + name;
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "opineq_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = temp_dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

struct CliResult {
  int code = -1;
  std::string out;
};

/// Run the packaged binary through the shell, capturing stdout and the exit
/// code. env_prefix lets tests set variables like OPINEQ_TOL for one call.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix;
  if (!cmd.empty()) cmd += " ";
  cmd += std::string("\"") + OPINEQ_CLI_PATH + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  CliResult r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Instance pinching_instance(const ScalarFunctionSpec& f) {
  ComplexMatrix raw(2, 2);
  raw(0, 0) = 2.0; raw(0, 1) = 1.0; raw(1, 0) = 1.0; raw(1, 1) = 2.0;
  Instance inst;
  inst.kind = "jensen";
  inst.field = PositiveMapField(
      std::vector<FieldPoint>{{1.0, KrausMap::pinching(2),
                               HermitianMatrix(raw)}},
      Interval::closed(1.0, 3.0));
  inst.f = f;
  return inst;
}

}  // namespace

TEST_CASE("complex and matrix JSON round trips") {
  const Complex z(1.5, -2.0);
  const Json zj = to_json(z);
  CHECK(zj.is_array());
  CHECK(zj[0].get<double>() == 1.5);
  CHECK(zj[1].get<double>() == -2.0);
  CHECK(complex_from_json(zj, "t") == z);
  // Plain numbers read as real scalars.
  CHECK(complex_from_json(Json(3.25), "t") == Complex(3.25, 0.0));

  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0; m(0, 1) = Complex(0, 1); m(1, 0) = 2.5; m(1, 1) = -3.0;
  const ComplexMatrix back = matrix_from_json(to_json(m), "t");
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(back(i, j) == m(i, j));

  for (const char* bad : {"[1]", "[1,2,3]", "\"x\""}) {
    try {
      complex_from_json(Json::parse(bad), "t");
      FAIL("malformed complex accepted: ", bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
  CHECK_THROWS_AS(matrix_from_json(Json::array(), "t"), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]"), "t"), Error);
}

TEST_CASE("hermitian parsing enforces symmetry") {
  const HermitianMatrix h =
      hermitian_from_json(Json::parse("[[1,[0,1]],[[0,-1],2]]"), "t");
  CHECK(std::real(h(0, 0)) == 1.0);
  CHECK(h(0, 1) == Complex(0, 1));
  try {
    hermitian_from_json(Json::parse("[[1,5],[0,2]]"), "t");
    FAIL("asymmetric matrix accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
  CHECK_THROWS_AS(hermitian_from_json(Json::parse("[[1,2]]"), "t"), Error);
}

TEST_CASE("function specs parse from names and objects") {
  CHECK(function_from_json(Json("sqrt")).name() == "sqrt");
  const ScalarFunctionSpec p =
      function_from_json(Json::parse(R"({"name":"power","params":{"p":2}})"));
  CHECK(p.name() == "power");
  CHECK(p.evaluate(3.0) == 9.0);

  // Serialization round trip.
  const ScalarFunctionSpec back = function_from_json(to_json(p));
  CHECK(back.name() == "power");
  CHECK(back.params() == p.params());

  try {
    function_from_json(Json("sinh"));
    FAIL("unknown function accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownFunction);
  }
  try {
    function_from_json(Json(42));
    FAIL("non-object function accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("objectives parse with aliases and defaults") {
  const BivariateSpec diff = bivariate_from_json(Json("diff"));
  CHECK(diff.kind() == BivariateSpec::Kind::difference);
  CHECK(diff.lambda() == 1.0);

  const BivariateSpec probe = bivariate_from_json(
      Json::parse(R"({"name":"probe","params":{"lambda":0.5,"q":3}})"));
  CHECK(probe.kind() == BivariateSpec::Kind::linear_probe);
  CHECK(probe.lambda() == 0.5);
  CHECK(probe.q() == 3.0);

  const BivariateSpec ratio = bivariate_from_json(Json("ratio"));
  CHECK(ratio.kind() == BivariateSpec::Kind::ratio);

  const BivariateSpec aff = bivariate_from_json(Json::parse(R"({"name":"affine"})"));
  CHECK(aff.kind() == BivariateSpec::Kind::affine);
  CHECK(aff.a() == 1.0);
  CHECK(aff.b() == 0.0);
  CHECK(aff.c() == 0.0);

  // Round trip through JSON preserves the parameters.
  const BivariateSpec again = bivariate_from_json(to_json(probe));
  CHECK(again.kind() == BivariateSpec::Kind::linear_probe);
  CHECK(again.lambda() == 0.5);
  CHECK(again.q() == 3.0);

  try {
    bivariate_from_json(Json("max"));
    FAIL("unknown objective accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  // Custom scalar objectives have no serial form.
  CHECK_THROWS_AS(
      to_json(BivariateSpec::custom("h", [](double u, double) { return u; },
                                    true)),
      Error);
}

TEST_CASE("norm specs parse and validate") {
  CHECK(norm_from_json(Json("operator")).name() == "operator");
  const NormSpec kf = norm_from_json(Json::parse(R"({"kind":"ky_fan","k":2})"));
  CHECK(kf.name() == "ky_fan(2)");
  const NormSpec unit = norm_from_json(
      Json::parse(R"({"kind":"trace","normalization":"unit"})"));
  CHECK(unit.name().find("unit-normalized") != std::string::npos);
  CHECK_FALSE(unit.is_gauge());

  const NormSpec back = norm_from_json(to_json(kf));
  CHECK(back.name() == "ky_fan(2)");

  try {
    norm_from_json(Json::parse(R"({"kind":"ky_fan","k":0})"));
    FAIL("ky_fan(0) accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidNormParameter);
  }
  try {
    norm_from_json(Json("euclidean"));
    FAIL("unknown norm accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("instances parse with interval precedence and type inference") {
  // Top-level interval wins over the field-level one.
  const Instance inst = instance_from_string(R"({
    "kind": "jensen",
    "interval": [1, 5],
    "field": {"points": [{"weight": 1.0, "kraus": [[[1]]], "x": [[2]]}],
              "interval": [2, 3]},
    "function": "sqrt"
  })");
  CHECK(inst.kind == "jensen");
  REQUIRE(inst.field.has_value());
  REQUIRE(inst.field->interval().has_value());
  CHECK(inst.field->interval()->lo == 1.0);
  CHECK(inst.field->interval()->hi == 5.0);

  // "kraus" points infer a map field, "a"+"x" infer a vector field,
  // "a"+"b"+"x" infer a paired family.
  const Instance vec = instance_from_file(corpus_file("rev0_power.json"));
  CHECK(vec.kind == "rev0");
  REQUIRE(vec.vfield.has_value());
  CHECK_NOTHROW(vec.vfield->checked_interval());
  CHECK(vec.params.at("p") == 2.0);

  const Instance paired = instance_from_file(corpus_file("rev3_geometric.json"));
  CHECK(paired.kind == "rev3");
  CHECK_FALSE(paired.pairs.empty());

  try {
    instance_from_string("{not json");
    FAIL("malformed text accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  try {
    instance_from_file(temp_dir().string() + "/does_not_exist.json");
    FAIL("missing file accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("witness serialization replays identically") {
  const Instance inst = pinching_instance(builtin("power", {{"p", 2.0}}));
  const Json j = instance_to_json("jensen", *inst.field, *inst.f);
  const Instance parsed = instance_from_json(j);
  CHECK(parsed.kind == "jensen");
  const RunOutcome direct = run_instance(inst, std::nullopt, 3);
  const RunOutcome replay = run_instance(parsed, std::nullopt, 3);
  CHECK(canonical_dump(direct.report) == canonical_dump(replay.report));
}

TEST_CASE("canonical dump is stable") {
  const Json j = Json{{"b", 1}, {"a", 2}};
  const std::string text = canonical_dump(j);
  CHECK(text == "{\n \"a\": 2,\n \"b\": 1\n}\n");
  CHECK(text.back() == '\n');
  CHECK(canonical_dump(Json::parse(text)) == text);
}

TEST_CASE("exit codes partition the error kinds") {
  for (ErrorKind kind :
       {ErrorKind::ParseError, ErrorKind::UnknownFunction,
        ErrorKind::InvalidParameter, ErrorKind::InvalidNormParameter,
        ErrorKind::NotHermitian, ErrorKind::DimMismatch,
        ErrorKind::DegenerateInterval})
    CHECK(exit_code_for(kind) == kExitInvalidInput);
  for (ErrorKind kind :
       {ErrorKind::NotUnital, ErrorKind::SpectrumOutOfRange,
        ErrorKind::FlagViolation, ErrorKind::PreconditionViolated,
        ErrorKind::ConditionNotMet, ErrorKind::NonFiniteValue,
        ErrorKind::NotPositiveDefinite, ErrorKind::ZeroOperator})
    CHECK(exit_code_for(kind) == kExitPreconditionUnmet);
}

TEST_CASE("error reports carry kind, message and exit code") {
  try {
    raise(ErrorKind::InvalidParameter, "boom");
    FAIL("raise did not throw");
  } catch (const Error& e) {
    const Json rep = error_report(e);
    CHECK(rep["error"]["kind"].get<std::string>() == "InvalidParameter");
    CHECK(rep["error"]["message"].get<std::string>() == "boom");
    CHECK(rep["exit_code"].get<int>() == kExitInvalidInput);
  }
}

TEST_CASE("verdict rows carry the schema fields") {
  const Json row = verdict_row("jensen", make_verdict(0.5, 1e-8), 9, "OP6");
  CHECK(row["theorem_id"] == "jensen");
  CHECK(row["holds"] == true);
  CHECK(row["min_eig_or_slack"].get<double>() == 0.5);
  CHECK(row["tolerance"].get<double>() == 1e-8);
  CHECK(row["seed"].get<std::uint64_t>() == 9);
  CHECK(row["paper_eq_tag"] == "OP6");
}

TEST_CASE("instances run end to end in process") {
  // A holding Jensen instance.
  const RunOutcome good =
      run_instance(pinching_instance(builtin("power", {{"p", 2.0}})),
                   std::nullopt, 7);
  CHECK(good.holds);
  CHECK(good.report["kind"] == "jensen");
  CHECK(good.report["rng"] == "splitmix64");
  CHECK(good.report["holds"] == true);
  CHECK(good.report["gap_min_eig"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(good.report["verdicts"][0]["paper_eq_tag"] == "OP6");
  CHECK(good.report["verdicts"][0]["seed"].get<std::uint64_t>() == 7);

  // Concave sqrt genuinely violates the convex-form inequality; a huge
  // tolerance override flips the verdict without touching the gap.
  const Instance bad = pinching_instance(builtin("sqrt"));
  CHECK_FALSE(run_instance(bad, std::nullopt, 7).holds);
  CHECK(run_instance(bad, TolerancePolicy::with_rtol(1.0), 7).holds);

  // rev0 wires the power constant into the report.
  Instance rev0;
  rev0.kind = "rev0";
  const double t = 7.0 / 12.0;
  rev0.vfield = VectorField(
      std::vector<VectorFieldPoint>{
          {1.0, HermitianMatrix::diagonal({1.0, 2.0}),
           {Complex(std::sqrt(t), 0), Complex(std::sqrt(1.0 - t), 0)}}},
      Interval::closed(1.0, 2.0));
  rev0.params = {{"p", 2.0}, {"q", 2.0}};
  const RunOutcome rout = run_instance(rev0, std::nullopt, 1);
  CHECK(rout.holds);
  CHECK(rout.report["power_constant"].get<double>() ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(rout.report["verdicts"][0]["paper_eq_tag"] == "Rev2");

  // Missing required parameter.
  Instance incomplete = rev0;
  incomplete.params = {{"p", 2.0}};
  try {
    run_instance(incomplete, std::nullopt, 1);
    FAIL("missing q accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }

  // Unknown kind.
  Instance unknown;
  unknown.kind = "wat";
  CHECK_THROWS_AS(run_instance(unknown, std::nullopt, 1), Error);
}

TEST_CASE("suite runs the corpus deterministically") {
  const SuiteOutcome first = run_suite(OPINEQ_CORPUS_DIR, std::nullopt, 5);
  CHECK(first.exit_code == kExitHolds);
  const Json& counts = first.report["counts"];
  CHECK(counts["fail"].get<int>() == 0);
  CHECK(counts["error"].get<int>() == 0);
  CHECK(counts["pass"].get<int>() == first.report["total"].get<int>());
  CHECK(first.report["total"].get<int>() == 15);
  CHECK(first.report["rng"] == "splitmix64");
  CHECK(first.report["seed"].get<std::uint64_t>() == 5);
  CHECK(first.report.contains("worst_slack"));

  // Case entries are ordered by file name regardless of thread timing.
  const Json& cases = first.report["cases"];
  for (std::size_t i = 1; i < cases.size(); ++i)
    CHECK(cases[i - 1]["case"].get<std::string>() <
          cases[i]["case"].get<std::string>());

  // Byte-identical on a second run with the same seed.
  const SuiteOutcome second = run_suite(OPINEQ_CORPUS_DIR, std::nullopt, 5);
  CHECK(canonical_dump(first.report) == canonical_dump(second.report));

  // Unreadable and empty corpora are input errors.
  try {
    run_suite(temp_dir().string() + "/no_such_dir", std::nullopt, 0);
    FAIL("missing corpus accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  const fs::path empty = temp_dir() / "empty_corpus";
  fs::create_directories(empty);
  try {
    run_suite(empty.string(), std::nullopt, 0);
    FAIL("empty corpus accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
}

TEST_CASE("cli verifies corpus instances") {
  const CliResult ok =
      run_cli("verify jensen --input \"" + corpus_file("jensen_pinching.json") +
              "\"");
  CHECK(ok.code == 0);
  const Json rep = Json::parse(ok.out);
  CHECK(rep["holds"] == true);
  CHECK(rep["kind"] == "jensen");

  // --out moves the report into a file and leaves stdout empty.
  const std::string out_path = (temp_dir() / "report.json").string();
  const CliResult filed =
      run_cli("verify rev3 --input \"" + corpus_file("rev3_geometric.json") +
              "\" --out \"" + out_path + "\"");
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  std::ifstream in(out_path);
  const Json filed_rep = Json::parse(in);
  CHECK(filed_rep["holds"] == true);

  // Kind mismatch between the subcommand and the instance file.
  const CliResult mismatch =
      run_cli("verify converse --input \"" +
              corpus_file("jensen_pinching.json") + "\"");
  CHECK(mismatch.code == 2);
}

TEST_CASE("cli rejects malformed input") {
  const std::string bad = write_temp("bad.json", "{broken");
  CHECK(run_cli("verify jensen --input \"" + bad + "\"").code == 2);

  const std::string good = corpus_file("jensen_pinching.json");
  CHECK(run_cli("verify jensen --input \"" + good + "\" --tol=-0.5").code == 2);
  CHECK(run_cli("verify jensen --input \"" + good + "\"",
                "OPINEQ_TOL=abc").code == 2);
  CHECK(run_cli("verify jensen --input \"" + good + "\"",
                "OPINEQ_TOL=1e-6").code == 0);

  CHECK(run_cli("").code == 2);            // a subcommand is required
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("explode").code == 2);     // unknown subcommand
}

TEST_CASE("cli computes bound constants") {
  const CliResult pc =
      run_cli("bound power-c --lambda 0 --m 1 --M 2 --p 2 --q 2");
  CHECK(pc.code == 0);
  const Json pc_rep = Json::parse(pc.out);
  CHECK(pc_rep["which"] == "power-c");
  CHECK(pc_rep["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(pc_rep["branch"].get<int>() == 1);

  const CliResult mp = run_cli(
      "bound mp-sup --f power --f-p 2 --g power --g-p 2 --F ratio "
      "--m 1 --M 2");
  CHECK(mp.code == 0);
  const Json mp_rep = Json::parse(mp.out);
  CHECK(mp_rep["value"].get<double>() ==
        doctest::Approx(1.125).epsilon(1e-12));
  CHECK(mp_rep["refined"] == true);
  CHECK(mp_rep["grid_size"].get<int>() == 10001);

  const CliResult lm = run_cli(
      "bound lm-inf --f power --f-p=-1 --F difference --lambda 1 --m 1 --M 3");
  CHECK(lm.code == 0);
  CHECK(Json::parse(lm.out)["value"].get<double>() ==
        doctest::Approx(-8.0 / 3.0).epsilon(1e-12));

  const CliResult s3 = run_cli(
      "bound sub3-inf --f power --f-p 2 --F difference --lambda 1 "
      "--m 1 --M 3 --y 2");
  CHECK(s3.code == 0);
  CHECK(Json::parse(s3.out)["value"].get<double>() ==
        doctest::Approx(-1.0).epsilon(1e-12));

  // Degenerate window and unknown objective are input errors.
  CHECK(run_cli("bound power-c --lambda 0 --m 2 --M 1 --p 2 --q 2").code == 2);
  CHECK(run_cli("bound mp-sup --f power --f-p 2 --F max --m 1 --M 2").code ==
        2);
}

TEST_CASE("cli falsifies and replays witnesses") {
  const std::string witness = (temp_dir() / "witness.json").string();
  const CliResult found = run_cli(
      "falsify --f exp --m 0 --M 3 --trials 10000 --seed 2718 --out \"" +
      witness + "\"");
  CHECK(found.code == 0);
  const Json rep = Json::parse(found.out);
  CHECK(rep["found"] == true);
  CHECK(rep["rng"] == "splitmix64");
  CHECK(rep["seed"].get<std::uint64_t>() == 2718);
  CHECK(rep.contains("witness"));

  // The stored witness replays to a violation (exit 1), and a huge
  // tolerance forgives it (exit 0).
  CHECK(run_cli("verify jensen --input \"" + witness + "\"").code == 1);
  CHECK(run_cli("verify jensen --input \"" + witness + "\" --tol 100").code ==
        0);

  // Operator convex functions defeat the search within any budget.
  const CliResult not_found = run_cli(
      "falsify --f power --f-p 2 --m 0 --M 3 --trials 50 --seed 1");
  CHECK(not_found.code == 4);
  CHECK(Json::parse(not_found.out)["found"] == false);

  // Budget of zero is an input error.
  CHECK(run_cli("falsify --f exp --trials 0").code == 2);
}

TEST_CASE("cli suite is deterministic") {
  const std::string args =
      std::string("suite \"") + OPINEQ_CORPUS_DIR + "\" --seed 11";
  const CliResult first = run_cli(args);
  const CliResult second = run_cli(args);
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  CHECK_FALSE(first.out.empty());
  CHECK(first.out == second.out);
  const Json rep = Json::parse(first.out);
  CHECK(rep["counts"]["pass"].get<int>() == rep["total"].get<int>());

  // A corpus with no cases is an input error.
  const fs::path empty = temp_dir() / "empty_corpus";
  fs::create_directories(empty);
  CHECK(run_cli("suite \"" + empty.string() + "\"").code == 2);
}
