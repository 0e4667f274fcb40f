#include "opineq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <vector>

#include "opineq/converse_bounds.hpp"
#include "opineq/generators.hpp"
#include "opineq/jensen.hpp"
#include "opineq/subdifferential_bounds.hpp"

namespace opineq {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownFunction:
    case ErrorKind::InvalidParameter:
    case ErrorKind::InvalidNormParameter:
    case ErrorKind::NotHermitian:
    case ErrorKind::DimMismatch:
    case ErrorKind::DegenerateInterval:
      return kExitInvalidInput;
    default:
      return kExitPreconditionUnmet;
  }
}

Json error_report(const Error& e) {
  std::string message = e.what();
  const std::string prefix = std::string(error_kind_name(e.kind())) + ": ";
  if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
  return Json{{"error",
               Json{{"kind", error_kind_name(e.kind())},
                    {"message", message}}},
              {"exit_code", exit_code_for(e.kind())}};
}

Json verdict_row(const std::string& theorem_id, const ComparisonVerdict& v,
                 std::uint64_t seed, const std::string& paper_eq_tag) {
  return Json{{"theorem_id", theorem_id},
              {"holds", v.holds},
              {"min_eig_or_slack", v.min_eig_of_difference},
              {"tolerance", v.tolerance},
              {"seed", seed},
              {"paper_eq_tag", paper_eq_tag}};
}

namespace {

double param_at(const Instance& inst, const std::string& key) {
  auto it = inst.params.find(key);
  if (it == inst.params.end())
    raise(ErrorKind::InvalidParameter,
          "instance kind '" + inst.kind + "' needs params." + key);
  return it->second;
}

double param_or(const Instance& inst, const std::string& key,
                double fallback) {
  auto it = inst.params.find(key);
  return it == inst.params.end() ? fallback : it->second;
}

const ScalarFunctionSpec& require_f(const Instance& inst) {
  if (!inst.f)
    raise(ErrorKind::InvalidParameter,
          "instance kind '" + inst.kind + "' needs a function");
  return *inst.f;
}

ScalarFunctionSpec g_or_identity(const Instance& inst) {
  return inst.g ? *inst.g : builtin("identity");
}

const BivariateSpec& require_F(const Instance& inst) {
  if (!inst.F)
    raise(ErrorKind::InvalidParameter,
          "instance kind '" + inst.kind + "' needs an objective F");
  return *inst.F;
}

PositiveMapField require_map_field(const Instance& inst) {
  if (inst.field) return *inst.field;
  if (inst.vfield) {
    PositiveMapField field = vector_field_to_map_field(*inst.vfield);
    if (inst.interval) field = field.with_interval(*inst.interval);
    return field;
  }
  raise(ErrorKind::InvalidParameter,
        "instance kind '" + inst.kind + "' needs a field of positive maps");
}

const VectorField& require_vector_field(const Instance& inst) {
  if (!inst.vfield)
    raise(ErrorKind::InvalidParameter,
          "instance kind '" + inst.kind + "' needs a vector field");
  return *inst.vfield;
}

NormSpec norm_or_default(const Instance& inst) {
  return inst.norm ? *inst.norm : NormSpec::operator_norm();
}

TolerancePolicy pick(const std::optional<TolerancePolicy>& tol_override,
                     const TolerancePolicy& fallback) {
  return tol_override ? *tol_override : fallback;
}

Json bound_json(const ScalarBound& b) {
  return Json{{"value", b.value},
              {"argmax_z", b.argmax_z},
              {"grid_size", b.grid_size},
              {"refined", b.refined}};
}

/// Shared operator-side check for the scalar lower bounds (lm, sub3):
/// bound * 1 <= F[integral of phi(f(x)), g(mean)] for convex f, reversed
/// for concave.
ComparisonVerdict verify_scalar_lower_bound(const PositiveMapField& field,
                                            const ScalarFunctionSpec& f,
                                            const ScalarFunctionSpec& g,
                                            const BivariateSpec& F,
                                            double bound, bool convex_side,
                                            const TolerancePolicy& policy) {
  field.require_unital();
  const HermitianMatrix mean = integrate_field(field);
  const HermitianMatrix u_op = integrate_field(field, f);
  const HermitianMatrix v_op = apply_function(g, mean);
  const HermitianMatrix f_op = F.evaluate_operator(u_op, v_op);
  const HermitianMatrix bound_op =
      HermitianMatrix::scalar_matrix(f_op.dim(), bound);
  return convex_side ? loewner_leq(bound_op, f_op, policy)
                     : loewner_leq(f_op, bound_op, policy);
}

RunOutcome run_jensen(const Instance& inst,
                      const std::optional<TolerancePolicy>& tol,
                      std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const JensenReport rep = jensen_gap(field, f, pick(tol, {}));
  RunOutcome out;
  out.holds = rep.verdict.holds;
  out.report = Json{{"kind", "jensen"},
                    {"function", to_json(f)},
                    {"gap_min_eig", rep.gap_min_eig},
                    {"verdicts", Json::array({verdict_row(
                                     "jensen", rep.verdict, seed, "OP6")})}};
  return out;
}

RunOutcome run_converse(const Instance& inst,
                        const std::optional<TolerancePolicy>& tol,
                        std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const ScalarFunctionSpec g = g_or_identity(inst);
  const BivariateSpec& F = require_F(inst);
  const Interval win = field.checked_interval();
  const ScalarBound bound = mond_pecaric_sup(f, g, F, win.lo, win.hi);
  const ComparisonVerdict v = verify_converse(field, f, g, F, pick(tol, {}));
  RunOutcome out;
  out.holds = v.holds;
  out.report = Json{
      {"kind", "converse"},
      {"function", to_json(f)},
      {"objective", to_json(F)},
      {"bound", bound_json(bound)},
      {"verdicts",
       Json::array({verdict_row("converse", v, seed, "OP7")})}};
  return out;
}

RunOutcome run_rev0(const Instance& inst,
                    const std::optional<TolerancePolicy>& tol,
                    std::uint64_t seed) {
  const VectorField& vf = require_vector_field(inst);
  const double lambda = param_or(inst, "lambda", 1.0);
  const double p = param_at(inst, "p");
  const double q = param_at(inst, "q");
  const Interval win = vf.checked_interval();
  const double c = power_constant(lambda, win.lo, win.hi, p, q);
  const ComparisonVerdict v =
      tol ? verify_rev0(vf, lambda, p, q, *tol) : verify_rev0(vf, lambda, p, q);
  RunOutcome out;
  out.holds = v.holds;
  out.report = Json{{"kind", "rev0"},
                    {"lambda", lambda},
                    {"p", p},
                    {"q", q},
                    {"power_constant", c},
                    {"verdicts", Json::array({verdict_row("rev0", v, seed,
                                                          "Rev2")})}};
  return out;
}

RunOutcome run_rev3(const Instance& inst,
                    const std::optional<TolerancePolicy>& tol,
                    std::uint64_t seed) {
  if (inst.pairs.empty())
    raise(ErrorKind::InvalidParameter,
          "instance kind 'rev3' needs a paired field");
  const double m1 = param_at(inst, "m1");
  const double bm1 = param_at(inst, "M1");
  const double m2 = param_at(inst, "m2");
  const double bm2 = param_at(inst, "M2");
  const double lambda = param_or(inst, "lambda", 1.0);
  const double s = param_or(inst, "s", 1.0);
  const double p = param_at(inst, "p");
  const ComparisonVerdict v =
      verify_rev3(inst.pairs, m1, bm1, m2, bm2, lambda, s, p, pick(tol, {}));
  const double q = p / (p - 1.0);
  const double mt = std::pow(m1, p / s) / std::pow(bm2, q / s);
  const double bmt = std::pow(bm1, p / s) / std::pow(m2, q / s);
  const double c = power_constant(lambda, mt, bmt, s, p);
  RunOutcome out;
  out.holds = v.holds;
  out.report = Json{{"kind", "rev3"},
                    {"lambda", lambda},
                    {"s", s},
                    {"p", p},
                    {"q", q},
                    {"power_constant", c},
                    {"bound", c * std::pow(bm2, q)},
                    {"verdicts", Json::array({verdict_row("rev3", v, seed,
                                                          "Rev33")})}};
  return out;
}

RunOutcome run_lm(const Instance& inst,
                  const std::optional<TolerancePolicy>& tol,
                  std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const ScalarFunctionSpec g = g_or_identity(inst);
  const BivariateSpec& F = require_F(inst);
  const Interval win = field.checked_interval();
  const ScalarBound bound = li_mathias_inf(f, g, F, win.lo, win.hi);
  const ComparisonVerdict v = verify_scalar_lower_bound(
      field, f, g, F, bound.value, f.flags().operator_convex, pick(tol, {}));
  RunOutcome out;
  out.holds = v.holds;
  out.report =
      Json{{"kind", "lm"},
           {"function", to_json(f)},
           {"objective", to_json(F)},
           {"bound", bound_json(bound)},
           {"verdicts", Json::array({verdict_row("lm", v, seed, "LM")})}};
  return out;
}

RunOutcome run_sub1(const Instance& inst,
                    const std::optional<TolerancePolicy>& tol,
                    std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const Interval win = field.checked_interval();
  const double mid = 0.5 * (win.lo + win.hi);
  const double x = param_or(inst, "x", mid);
  const double y = param_or(inst, "y", mid);
  const SandwichReport rep = sub1_sandwich(field, f, {}, x, y, pick(tol, {}));
  RunOutcome out;
  out.holds = rep.verdict_lower.holds && rep.verdict_upper.holds;
  out.report = Json{
      {"kind", "sub1"},
      {"function", to_json(f)},
      {"x", rep.x_used},
      {"y", rep.y_used},
      {"verdicts",
       Json::array({verdict_row("sub1_lower", rep.verdict_lower, seed, "Sub2"),
                    verdict_row("sub1_upper", rep.verdict_upper, seed,
                                "Sub2")})}};
  return out;
}

RunOutcome run_sub3(const Instance& inst,
                    const std::optional<TolerancePolicy>& tol,
                    std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const ScalarFunctionSpec g = g_or_identity(inst);
  const BivariateSpec& F = require_F(inst);
  const Interval win = field.checked_interval();
  const double y = param_or(inst, "y", 0.5 * (win.lo + win.hi));
  const ScalarBound bound = sub3_inf(f, g, F, y, win.lo, win.hi);
  const ComparisonVerdict v = verify_scalar_lower_bound(
      field, f, g, F, bound.value, f.flags().convex, pick(tol, {}));
  RunOutcome out;
  out.holds = v.holds;
  out.report =
      Json{{"kind", "sub3"},
           {"function", to_json(f)},
           {"objective", to_json(F)},
           {"y", y},
           {"bound", bound_json(bound)},
           {"verdicts", Json::array({verdict_row("sub3", v, seed, "Sub4")})}};
  return out;
}

RunOutcome run_dk1(const Instance& inst,
                   const std::optional<TolerancePolicy>& tol,
                   std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const NormSpec nspec = norm_or_default(inst);
  const Dk1Report rep = dk1_norm_bound(field, f, nspec, pick(tol, {}));
  Json rows = Json::array({verdict_row("dk2", rep.dk2, seed, "DK2")});
  bool holds = rep.dk2.holds;
  if (rep.dk3) {
    rows.push_back(verdict_row("dk3", *rep.dk3, seed, "DK3"));
    holds = holds && rep.dk3->holds;
  }
  RunOutcome out;
  out.holds = holds;
  out.report = Json{{"kind", "dk1"},
                    {"function", to_json(f)},
                    {"norm", to_json(nspec)},
                    {"f_at_zero", rep.f_at_zero},
                    {"verdicts", std::move(rows)}};
  return out;
}

RunOutcome run_dk11(const Instance& inst,
                    const std::optional<TolerancePolicy>& tol,
                    std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const NormSpec nspec = norm_or_default(inst);
  const Dk11Report rep = dk11_bounds(field, f, nspec, pick(tol, {}));
  const bool convex_branch = rep.branch == Dk11Branch::convex_lower;
  RunOutcome out;
  out.holds = rep.verdict.holds;
  out.report = Json{
      {"kind", "dk11"},
      {"function", to_json(f)},
      {"norm", to_json(nspec)},
      {"branch", convex_branch ? "convex_lower" : "concave_upper"},
      {"norm_of_mean", rep.norm_of_mean},
      {"f_of_norm", rep.f_of_norm},
      {"verdicts",
       Json::array({verdict_row("dk11", rep.verdict, seed,
                                convex_branch ? "DK21" : "DK31")})}};
  if (convex_branch) out.report["norm_of_image"] = rep.norm_of_image;
  return out;
}

RunOutcome run_slater(const Instance& inst,
                      const std::optional<TolerancePolicy>& tol,
                      std::uint64_t seed) {
  const PositiveMapField field = require_map_field(inst);
  const ScalarFunctionSpec& f = require_f(inst);
  const NormSpec nspec = norm_or_default(inst);
  const SlaterReport rep = slater_bound(field, f, {}, nspec, pick(tol, {}));
  RunOutcome out;
  out.holds = rep.verdict.holds;
  out.report = Json{
      {"kind", "slater"},
      {"function", to_json(f)},
      {"norm", to_json(nspec)},
      {"x_bar", rep.x_bar},
      {"verdicts",
       Json::array({verdict_row("slater", rep.verdict, seed, "Slater")})}};
  return out;
}

}  // namespace

RunOutcome run_instance(const Instance& inst,
                        const std::optional<TolerancePolicy>& tol_override,
                        std::uint64_t seed) {
  RunOutcome out;
  if (inst.kind == "jensen")
    out = run_jensen(inst, tol_override, seed);
  else if (inst.kind == "converse")
    out = run_converse(inst, tol_override, seed);
  else if (inst.kind == "rev0")
    out = run_rev0(inst, tol_override, seed);
  else if (inst.kind == "rev3")
    out = run_rev3(inst, tol_override, seed);
  else if (inst.kind == "lm")
    out = run_lm(inst, tol_override, seed);
  else if (inst.kind == "sub1")
    out = run_sub1(inst, tol_override, seed);
  else if (inst.kind == "sub3")
    out = run_sub3(inst, tol_override, seed);
  else if (inst.kind == "dk1")
    out = run_dk1(inst, tol_override, seed);
  else if (inst.kind == "dk11")
    out = run_dk11(inst, tol_override, seed);
  else if (inst.kind == "slater")
    out = run_slater(inst, tol_override, seed);
  else
    raise(ErrorKind::InvalidParameter,
          "unknown instance kind '" + inst.kind + "'");
  out.report["holds"] = out.holds;
  out.report["rng"] = kRngAlgorithm;
  return out;
}

SuiteOutcome run_suite(const std::string& corpus_dir,
                       const std::optional<TolerancePolicy>& tol_override,
                       std::uint64_t seed) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(corpus_dir, ec)) {
    if (entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  }
  if (ec)
    raise(ErrorKind::ParseError,
          "cannot read corpus directory '" + corpus_dir + "'");
  if (files.empty())
    raise(ErrorKind::ParseError,
          "no .json cases under '" + corpus_dir + "'");
  std::sort(files.begin(), files.end());

  struct CaseResult {
    Json entry;
    bool pass = false;
    bool errored = false;
    double worst = 0.0;
    bool has_worst = false;
  };

  auto run_case = [&](const std::string& path) {
    CaseResult r;
    r.entry["case"] = fs::path(path).filename().string();
    try {
      const Instance inst = instance_from_file(path);
      const RunOutcome out = run_instance(inst, tol_override, seed);
      r.pass = out.holds;
      r.entry["status"] = out.holds ? "pass" : "fail";
      r.entry["report"] = out.report;
      for (const Json& row : out.report.at("verdicts")) {
        const double s = row.at("min_eig_or_slack").get<double>();
        if (!r.has_worst || s < r.worst) {
          r.worst = s;
          r.has_worst = true;
        }
      }
    } catch (const Error& e) {
      r.errored = true;
      r.entry["status"] = "error";
      r.entry["report"] = error_report(e);
    }
    return r;
  };

  std::vector<std::future<CaseResult>> futures;
  futures.reserve(files.size());
  for (const std::string& path : files)
    futures.push_back(
        std::async(std::launch::async, run_case, path));

  Json cases = Json::array();
  int n_pass = 0, n_fail = 0, n_error = 0;
  double worst_slack = 0.0;
  bool has_worst = false;
  for (auto& fut : futures) {
    CaseResult r = fut.get();
    if (r.errored)
      ++n_error;
    else if (r.pass)
      ++n_pass;
    else
      ++n_fail;
    if (r.has_worst && (!has_worst || r.worst < worst_slack)) {
      worst_slack = r.worst;
      has_worst = true;
    }
    cases.push_back(std::move(r.entry));
  }

  SuiteOutcome out;
  out.report = Json{{"cases", std::move(cases)},
                    {"counts", Json{{"pass", n_pass},
                                    {"fail", n_fail},
                                    {"error", n_error}}},
                    {"seed", seed},
                    {"rng", kRngAlgorithm},
                    {"total", static_cast<int>(files.size())}};
  if (has_worst) out.report["worst_slack"] = worst_slack;
  out.exit_code = (n_fail == 0 && n_error == 0) ? kExitHolds : kExitViolated;
  return out;
}

}  // namespace opineq
