#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "opineq/converse_bounds.hpp"
#include "opineq/generators.hpp"
#include "opineq/harness.hpp"

namespace {

using opineq::Json;

/// Precedence: --tol, then OPINEQ_TOL, then each operation's own default.
std::optional<opineq::TolerancePolicy> resolve_tolerance(double cli_tol) {
  if (!std::isnan(cli_tol)) {
    if (!(cli_tol > 0.0) || !std::isfinite(cli_tol))
      opineq::raise(opineq::ErrorKind::InvalidParameter,
                    "--tol must be a positive finite number");
    return opineq::TolerancePolicy::with_rtol(cli_tol);
  }
  if (const char* env = std::getenv("OPINEQ_TOL")) {
    double v = 0.0;
    try {
      std::size_t pos = 0;
      v = std::stod(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      opineq::raise(opineq::ErrorKind::InvalidParameter,
                    "OPINEQ_TOL must be a number, got '" + std::string(env) +
                        "'");
    }
    if (!(v > 0.0) || !std::isfinite(v))
      opineq::raise(opineq::ErrorKind::InvalidParameter,
                    "OPINEQ_TOL must be positive and finite");
    return opineq::TolerancePolicy::with_rtol(v);
  }
  return std::nullopt;
}

void emit(const Json& report, const std::string& out_path) {
  const std::string text = opineq::canonical_dump(report);
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    opineq::raise(opineq::ErrorKind::InvalidParameter,
                  "cannot open '" + out_path + "' for writing");
  out << text;
}

opineq::ScalarFunctionSpec make_function(const std::string& name, double p,
                                         double a, double b) {
  std::map<std::string, double> params;
  if (name == "power") params["p"] = p;
  if (name == "affine") {
    params["a"] = a;
    params["b"] = b;
  }
  return opineq::builtin(name, params);
}

opineq::BivariateSpec make_objective(const std::string& name, double lambda,
                                     double q) {
  if (name == "difference" || name == "diff")
    return opineq::BivariateSpec::difference(lambda);
  if (name == "ratio") return opineq::BivariateSpec::ratio();
  if (name == "linear_probe" || name == "probe")
    return opineq::BivariateSpec::linear_probe(lambda, q);
  opineq::raise(opineq::ErrorKind::InvalidParameter,
                "unknown objective '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "opineq: evaluate, verify and falsify operator Jensen inequalities "
      "and their converse bounds on finite-dimensional Hermitian matrices"};
  app.require_subcommand(1);

  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::string verify_kind, input_path, out_path;
  double cli_tol = nan;
  std::uint64_t seed = 0;
  bool json_flag = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_option("--tol", cli_tol,
                    "Relative tolerance override (default per operation)");
    sub->add_option("--seed", seed, "Seed recorded in verdict rows");
    sub->add_flag("--json", json_flag,
                  "Emit machine-readable JSON (always on; accepted for "
                  "compatibility)");
  };

  CLI::App* verify =
      app.add_subcommand("verify", "Verify one inequality instance file");
  verify
      ->add_option("kind", verify_kind,
                   "jensen|converse|rev0|rev3|lm|sub1|sub3|dk1|dk11|slater")
      ->required()
      ->check(CLI::IsMember({"jensen", "converse", "rev0", "rev3", "lm",
                             "sub1", "sub3", "dk1", "dk11", "slater"}));
  verify->add_option("--input", input_path, "Instance JSON file")->required();
  add_common(verify);

  std::string bound_which, f_name = "power", g_name, obj_name = "difference";
  double f_p = 2.0, f_a = 1.0, f_b = 0.0, g_p = 2.0;
  double lambda = 1.0, obj_q = 2.0;
  double m = nan, big_m = nan, p_exp = 2.0, q_exp = 2.0, y_point = nan;

  CLI::App* bound = app.add_subcommand(
      "bound", "Compute a scalar converse-bound constant");
  bound->add_option("which", bound_which, "mp-sup|lm-inf|power-c|sub3-inf")
      ->required()
      ->check(CLI::IsMember({"mp-sup", "lm-inf", "power-c", "sub3-inf"}));
  bound->add_option("--f", f_name, "Function name (default power)");
  bound->add_option("--f-p", f_p, "Exponent for --f power (default 2)");
  bound->add_option("--f-a", f_a, "Slope for --f affine");
  bound->add_option("--f-b", f_b, "Intercept for --f affine");
  bound->add_option("--g", g_name, "Second function (default identity)");
  bound->add_option("--g-p", g_p, "Exponent for --g power");
  bound->add_option("--F", obj_name,
                    "Objective: difference|ratio|linear_probe");
  bound->add_option("--lambda", lambda, "Objective lambda (default 1)");
  bound->add_option("--F-q", obj_q, "Objective q for linear_probe");
  bound->add_option("--m", m, "Window lower endpoint")->required();
  bound->add_option("--M", big_m, "Window upper endpoint")->required();
  bound->add_option("--p", p_exp, "Power-constant exponent p");
  bound->add_option("--q", q_exp, "Power-constant exponent q");
  bound->add_option("--y", y_point, "Tangent base point for sub3-inf");
  add_common(bound);

  std::string falsify_f = "exp", witness_path;
  double fal_m = 0.0, fal_M = 3.0, fal_p = 2.0;
  std::uint64_t trials = 10000;
  std::size_t min_dim = 2, max_dim = 8;

  CLI::App* falsify = app.add_subcommand(
      "falsify", "Search for a unital field violating the operator Jensen "
                 "inequality for f");
  falsify->add_option("--f", falsify_f, "Function name (default exp)");
  falsify->add_option("--f-p", fal_p, "Exponent for --f power");
  falsify->add_option("--m", fal_m, "Spectral window lower endpoint");
  falsify->add_option("--M", fal_M, "Spectral window upper endpoint");
  falsify->add_option("--trials", trials, "Search budget (default 10000)");
  falsify->add_option("--min-dim", min_dim, "Smallest matrix dimension");
  falsify->add_option("--max-dim", max_dim, "Largest matrix dimension");
  falsify->add_option("--out", witness_path,
                      "Write the witness instance here when found");
  falsify->add_option("--tol", cli_tol,
                      "Relative tolerance override for the replay check");
  falsify->add_option("--seed", seed, "Search seed (default 0)");
  falsify->add_flag("--json", json_flag, "Accepted for compatibility");

  std::string corpus_dir, report_path;
  CLI::App* suite =
      app.add_subcommand("suite", "Run every instance in a corpus directory");
  suite->add_option("corpus", corpus_dir, "Directory of *.json cases")
      ->required();
  suite->add_option("--report", report_path,
                    "Write the aggregate report here instead of stdout");
  suite->add_option("--tol", cli_tol, "Relative tolerance override");
  suite->add_option("--seed", seed, "Seed recorded in the report");
  suite->add_flag("--json", json_flag, "Accepted for compatibility");

  int rc = opineq::kExitHolds;

  verify->callback([&] {
    const auto tol = resolve_tolerance(cli_tol);
    opineq::Instance inst = opineq::instance_from_file(input_path);
    if (inst.kind.empty()) inst.kind = verify_kind;
    if (inst.kind != verify_kind)
      opineq::raise(opineq::ErrorKind::InvalidParameter,
                    "instance kind '" + inst.kind +
                        "' does not match subcommand '" + verify_kind + "'");
    const opineq::RunOutcome out = opineq::run_instance(inst, tol, seed);
    emit(out.report, out_path);
    rc = out.holds ? opineq::kExitHolds : opineq::kExitViolated;
  });

  bound->callback([&] {
    Json rep;
    if (bound_which == "power-c") {
      const opineq::PowerConstantDetail d =
          opineq::power_constant_detail(lambda, m, big_m, p_exp, q_exp);
      rep = Json{{"which", "power-c"}, {"value", d.value},
                 {"argmax_z", d.argmax_z}, {"branch", d.branch},
                 {"lambda", lambda}, {"m", m}, {"M", big_m},
                 {"p", p_exp}, {"q", q_exp}};
    } else {
      const opineq::ScalarFunctionSpec f =
          make_function(f_name, f_p, f_a, f_b);
      const opineq::ScalarFunctionSpec g =
          g_name.empty() ? opineq::builtin("identity")
                         : make_function(g_name, g_p, 1.0, 0.0);
      const opineq::BivariateSpec F = make_objective(obj_name, lambda, obj_q);
      opineq::ScalarBound b;
      if (bound_which == "mp-sup") {
        b = opineq::mond_pecaric_sup(f, g, F, m, big_m);
      } else if (bound_which == "lm-inf") {
        b = opineq::li_mathias_inf(f, g, F, m, big_m);
      } else {
        const double y = std::isnan(y_point) ? 0.5 * (m + big_m) : y_point;
        b = opineq::sub3_inf(f, g, F, y, m, big_m);
      }
      rep = Json{{"which", bound_which}, {"value", b.value},
                 {"argmax_z", b.argmax_z}, {"grid_size", b.grid_size},
                 {"refined", b.refined}, {"function", opineq::to_json(f)},
                 {"objective", opineq::to_json(F)}, {"m", m}, {"M", big_m}};
    }
    emit(rep, out_path);
    rc = opineq::kExitHolds;
  });

  falsify->callback([&] {
    const opineq::ScalarFunctionSpec f =
        make_function(falsify_f, fal_p, 1.0, 0.0);
    const opineq::FalsificationResult res =
        opineq::falsify_jensen(f, trials, seed, min_dim, max_dim, fal_m,
                               fal_M);
    Json rep{{"found", res.found},
             {"trials_run", res.trials_run},
             {"min_gap_seen", res.min_gap_seen},
             {"seed", res.seed},
             {"rng", opineq::kRngAlgorithm},
             {"function", opineq::to_json(f)}};
    if (res.found) {
      const Json witness =
          opineq::instance_to_json("jensen", *res.witness, f);
      rep["witness_trial"] = res.witness_trial;
      rep["witness"] = witness;
      if (!witness_path.empty()) emit(witness, witness_path);
    }
    emit(rep, "");
    rc = res.found ? opineq::kExitHolds : opineq::kExitNotFound;
  });

  suite->callback([&] {
    const auto tol = resolve_tolerance(cli_tol);
    const opineq::SuiteOutcome out =
        opineq::run_suite(corpus_dir, tol, seed);
    emit(out.report, report_path);
    rc = out.exit_code;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? opineq::kExitHolds : opineq::kExitInvalidInput;
  } catch (const opineq::Error& e) {
    emit(opineq::error_report(e), "");
    return opineq::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return opineq::kExitPreconditionUnmet;
  }
  return rc;
}
