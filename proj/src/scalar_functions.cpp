#include "opineq/scalar_functions.hpp"

#include <cmath>

#include "opineq/tolerance.hpp"

namespace opineq {

namespace {

double param_or(const std::map<std::string, double>& params,
                const std::string& key, std::optional<double> fallback,
                const std::string& fn) {
  auto it = params.find(key);
  if (it != params.end()) return it->second;
  if (fallback) return *fallback;
  raise(ErrorKind::InvalidParameter,
        "function '" + fn + "' needs parameter '" + key + "'");
}

bool is_integer(double p) { return std::rint(p) == p; }

/// t^p with the domain and flag table of the power family:
///   p in [0,1]   : operator monotone & operator concave on [0, inf)
///   p in [1,2]   : operator convex
///   p in [-1,0)  : operator convex on (0, inf)
/// Outside those windows only the scalar flags apply.
ScalarFunctionSpec make_power(double p) {
  if (!std::isfinite(p))
    raise(ErrorKind::InvalidParameter, "power exponent must be finite");
  Interval domain;
  if (is_integer(p) && p >= 0.0)
    domain = Interval::all();
  else if (p >= 0.0)
    domain = Interval::nonnegative();
  else
    domain = Interval::positive();

  FunctionFlags flags;
  flags.convex = (p <= 0.0) || (p >= 1.0);
  flags.concave = (p >= 0.0 && p <= 1.0);
  flags.operator_convex =
      (p >= 1.0 && p <= 2.0) || (p >= -1.0 && p <= 0.0);
  flags.operator_concave = (p >= 0.0 && p <= 1.0);
  flags.operator_monotone = (p >= 0.0 && p <= 1.0);
  flags.increasing = (p >= 0.0);
  // On a domain reaching below zero (even integer exponents keep the whole
  // line) nonnegativity needs an even power.
  flags.nonneg = (domain.lo >= 0.0) ||
                 (is_integer(p) && std::fmod(std::abs(p), 2.0) == 0.0);
  if (is_integer(p) && p >= 0.0 && std::fmod(p, 2.0) != 0.0)
    flags.convex = (p == 1.0);  // odd powers are not convex on the whole line

  auto eval = [p](double x) { return std::pow(x, p); };
  auto deriv = [p](double x) {
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    return p * std::pow(x, p - 1.0);
  };
  return ScalarFunctionSpec("power", {p}, domain, flags, eval, deriv);
}

ScalarFunctionSpec make_affine(double a, double b) {
  FunctionFlags flags;
  flags.convex = true;
  flags.concave = true;
  flags.operator_convex = true;
  flags.operator_concave = true;
  flags.operator_monotone = (a >= 0.0);
  flags.increasing = (a >= 0.0);
  flags.nonneg = (a == 0.0 && b >= 0.0);
  auto eval = [a, b](double x) { return a * x + b; };
  auto deriv = [a](double) { return a; };
  return ScalarFunctionSpec("affine", {a, b}, Interval::all(), flags, eval,
                            deriv);
}

}  // namespace

ScalarFunctionSpec::ScalarFunctionSpec(std::string name,
                                       std::vector<double> params,
                                       Interval domain, FunctionFlags flags,
                                       Evaluator eval, Evaluator subdiff)
    : name_(std::move(name)),
      params_(std::move(params)),
      domain_(domain),
      flags_(flags),
      eval_(std::move(eval)),
      subdiff_(std::move(subdiff)) {}

double ScalarFunctionSpec::evaluate(double x) const {
  if (!eval_) raise(ErrorKind::InvalidParameter, "empty function spec");
  const double y = eval_(x);
  if (!std::isfinite(y))
    raise(ErrorKind::NonFiniteValue,
          "f(" + std::to_string(x) + ") is not finite for '" + name_ + "'");
  return y;
}

double ScalarFunctionSpec::subdifferential(double x) const {
  if (!subdiff_)
    raise(ErrorKind::InvalidParameter,
          "function '" + name_ + "' has no subdifferential selection");
  const double y = subdiff_(x);
  if (!std::isfinite(y))
    raise(ErrorKind::NonFiniteValue,
          "k(" + std::to_string(x) + ") is not finite for '" + name_ + "'");
  return y;
}

ScalarFunctionSpec ScalarFunctionSpec::with_subdifferential(
    Evaluator k) const {
  ScalarFunctionSpec out = *this;
  out.subdiff_ = std::move(k);
  return out;
}

ScalarFunctionSpec ScalarFunctionSpec::with_flags(FunctionFlags flags) const {
  ScalarFunctionSpec out = *this;
  out.flags_ = flags;
  return out;
}

ScalarFunctionSpec builtin(const std::string& name,
                           const std::map<std::string, double>& params) {
  if (name == "power") return make_power(param_or(params, "p", {}, name));
  if (name == "sqrt") {
    ScalarFunctionSpec f = make_power(0.5);
    return ScalarFunctionSpec("sqrt", {}, f.domain(), f.flags(),
                              [](double x) { return std::sqrt(x); },
                              [](double x) { return 0.5 / std::sqrt(x); });
  }
  if (name == "exp") {
    FunctionFlags flags;
    flags.convex = true;
    flags.increasing = true;
    flags.nonneg = true;
    return ScalarFunctionSpec("exp", {}, Interval::all(), flags,
                              [](double x) { return std::exp(x); },
                              [](double x) { return std::exp(x); });
  }
  if (name == "log") {
    FunctionFlags flags;
    flags.concave = true;
    flags.operator_concave = true;
    flags.operator_monotone = true;
    flags.increasing = true;
    return ScalarFunctionSpec("log", {}, Interval::positive(), flags,
                              [](double x) { return std::log(x); },
                              [](double x) { return 1.0 / x; });
  }
  if (name == "tlogt") {
    FunctionFlags flags;
    flags.convex = true;
    flags.operator_convex = true;
    return ScalarFunctionSpec("tlogt", {}, Interval::positive(), flags,
                              [](double x) { return x * std::log(x); },
                              [](double x) { return std::log(x) + 1.0; });
  }
  if (name == "abs") {
    FunctionFlags flags;
    flags.convex = true;
    flags.nonneg = true;
    // k(0) = 0 is the canonical selection inside [-1, 1].
    return ScalarFunctionSpec(
        "abs", {}, Interval::all(), flags,
        [](double x) { return std::abs(x); },
        [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
  }
  if (name == "identity") {
    ScalarFunctionSpec f = make_affine(1.0, 0.0);
    return ScalarFunctionSpec("identity", {}, f.domain(), f.flags(),
                              [](double x) { return x; },
                              [](double) { return 1.0; });
  }
  if (name == "affine")
    return make_affine(param_or(params, "a", {}, name),
                       param_or(params, "b", 0.0, name));
  raise(ErrorKind::UnknownFunction, "no builtin named '" + name + "'");
}

ScalarFunctionSpec compose_affine(const ScalarFunctionSpec& f, double scale,
                                  double shift) {
  if (!std::isfinite(scale) || !std::isfinite(shift))
    raise(ErrorKind::InvalidParameter, "compose_affine: non-finite map");
  if (scale == 0.0)
    raise(ErrorKind::InvalidParameter,
          "compose_affine: zero scale collapses the domain");

  const Interval d = f.domain();
  Interval pulled;
  if (scale > 0.0) {
    pulled = Interval{(d.lo - shift) / scale, (d.hi - shift) / scale,
                      d.lo_open, d.hi_open};
  } else {
    pulled = Interval{(d.hi - shift) / scale, (d.lo - shift) / scale,
                      d.hi_open, d.lo_open};
  }

  FunctionFlags flags = f.flags();
  if (scale < 0.0) {
    flags.operator_monotone = false;
    flags.increasing = false;
  }

  ScalarFunctionSpec base = f;
  auto eval = [base, scale, shift](double x) {
    return base.evaluate(scale * x + shift);
  };
  auto deriv = [base, scale, shift](double x) {
    return scale * base.subdifferential(scale * x + shift);
  };
  return ScalarFunctionSpec(f.name() + "@affine", f.params(), pulled, flags,
                            eval, f.has_subdifferential()
                                      ? ScalarFunctionSpec::Evaluator(deriv)
                                      : ScalarFunctionSpec::Evaluator());
}

ChordCoefficients chord(const ScalarFunctionSpec& f, double m, double M) {
  require_window(m, M, "chord");
  const double slack = std::min(endpoint_slack(m), endpoint_slack(M));
  if (!f.domain().contains_pair(m, M, slack))
    raise(ErrorKind::DomainViolation,
          "chord window [" + std::to_string(m) + ", " + std::to_string(M) +
              "] leaves the domain " + f.domain().describe() + " of '" +
              f.name() + "'");
  const double fm = f.evaluate(f.domain().clamp(m));
  const double fM = f.evaluate(f.domain().clamp(M));
  ChordCoefficients c;
  c.alpha = (fM - fm) / (M - m);
  c.beta = (M * fm - m * fM) / (M - m);
  c.m = m;
  c.M = M;
  return c;
}

double evaluate_in_domain(const ScalarFunctionSpec& f, double x) {
  if (!f.domain().contains(x, endpoint_slack(x)))
    raise(ErrorKind::DomainViolation,
          "point " + std::to_string(x) + " lies outside the domain " +
              f.domain().describe() + " of '" + f.name() + "'");
  return f.evaluate(f.domain().clamp(x));
}

ScalarFunctionSpec::Evaluator subdiff_default(const ScalarFunctionSpec& f) {
  if (!f.flags().convex && !f.flags().concave)
    raise(ErrorKind::NotConvexOrConcave,
          "subdifferential selection needs a convex or concave function, '" +
              f.name() + "' declares neither");
  if (!f.has_subdifferential())
    raise(ErrorKind::InvalidParameter,
          "function '" + f.name() + "' carries no derivative selection");
  ScalarFunctionSpec copy = f;
  return [copy](double x) { return copy.subdifferential(x); };
}

}  // namespace opineq
