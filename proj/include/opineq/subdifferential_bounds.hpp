#pragma once

#include <optional>

#include "opineq/norms.hpp"
#include "opineq/positive_maps.hpp"

namespace opineq {

/// The two-sided tangent/chord sandwich around the integrated image of f:
///   lower  = f(y) 1 + k(y) (I - y 1)          with I = integral of phi(x)
///   middle = integral of phi(f(x))
///   upper  = f(x) 1 - x integral of phi(k(x)) + integral of phi(k(x) x)
/// For convex f: lower <= middle <= upper; concave f reverses both.
struct SandwichReport {
  HermitianMatrix lower;
  HermitianMatrix middle;
  HermitianMatrix upper;
  ComparisonVerdict verdict_lower;
  ComparisonVerdict verdict_upper;
  double x_used = 0.0;
  double y_used = 0.0;
};

/// Evaluate the sandwich at base points x, y in the field's window [m, M].
/// k is a subdifferential selection for f (empty = the one stored on f).
/// Raises FlagViolation (f neither convex nor concave), PointOutOfInterval,
/// NotUnital.
SandwichReport sub1_sandwich(const PositiveMapField& field,
                             const ScalarFunctionSpec& f,
                             const ScalarFunctionSpec::Evaluator& k, double x,
                             double y, const TolerancePolicy& policy = {});

/// Verdicts for the norm-weighted chord bounds on positive data:
///   dk2: integral of phi(f(A)) <= f(0) 1
///          + integral of (f(||A||) - f(0))/||A|| phi(A)
///   dk3 (present when f(0) <= 0):
///        integral of phi(f(A)) <= integral of f(||A||)/||A|| phi(A)
struct Dk1Report {
  ComparisonVerdict dk2;
  std::optional<ComparisonVerdict> dk3;
  double f_at_zero = 0.0;
};

/// Requires convex f whose domain covers [0, max ||A||], positive data with
/// ||A|| > 0, and a gauge-normalized norm (so that A <= ||A|| 1). Raises
/// FlagViolation, ZeroOperator, NotGaugeNormalized, SpectrumOutOfRange.
Dk1Report dk1_norm_bound(const PositiveMapField& field,
                         const ScalarFunctionSpec& f, const NormSpec& nspec,
                         const TolerancePolicy& policy = {});

/// Which inequality dk11_bounds certified.
enum class Dk11Branch { convex_lower, concave_upper };

/// Norm-level bounds at y = ||integral of phi(x)||:
///   convex branch  (f increasing, f(0) <= 0, ||1|| = 1):
///       f(||integral of phi(x)||) <= ||integral of phi(f(x))||   (scalar)
///   concave branch (f increasing, integral of phi(x) <= ||...|| 1):
///       integral of phi(f(x)) <= f(||integral of phi(x)||) 1     (matrix)
struct Dk11Report {
  Dk11Branch branch = Dk11Branch::convex_lower;
  ComparisonVerdict verdict;
  double norm_of_mean = 0.0;
  double f_of_norm = 0.0;
  double norm_of_image = 0.0;  // convex branch only
};

/// Branch chosen by f's flags; every failing hypothesis raises
/// PreconditionViolated with a message naming it.
Dk11Report dk11_bounds(const PositiveMapField& field,
                       const ScalarFunctionSpec& f, const NormSpec& nspec,
                       const TolerancePolicy& policy = {});

/// Slater-type bound: with x = ||integral of phi(k(x) x)|| divided by
/// ||integral of phi(k(x))||, and under the Loewner hypothesis that the two
/// normalized integrals are ordered, integral of phi(f(x)) <= f(x) 1.
struct SlaterReport {
  ComparisonVerdict verdict;
  double x_bar = 0.0;
  HermitianMatrix bound;  // f(x_bar) * identity
};

/// Raises ConditionNotMet when the Loewner hypothesis fails (this is a
/// missing precondition, not a falsified verdict), ZeroDenominatorNorm,
/// XOutOfDomain, FlagViolation (f not convex).
SlaterReport slater_bound(const PositiveMapField& field,
                          const ScalarFunctionSpec& f,
                          const ScalarFunctionSpec::Evaluator& k,
                          const NormSpec& nspec,
                          const TolerancePolicy& policy = {});

}  // namespace opineq
