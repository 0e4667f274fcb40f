#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opineq/errors.hpp"
#include "opineq/interval.hpp"

namespace opineq {

/// Declared analytic properties of a scalar function. Flags are trusted by
/// the bound machinery (they select theorem branches); the generators and
/// tests spot-check them numerically.
struct FunctionFlags {
  bool convex = false;
  bool concave = false;
  bool operator_convex = false;
  bool operator_concave = false;
  bool operator_monotone = false;
  /// Nondecreasing on the nonnegative part of the domain (the sense the
  /// norm-bound theorems need).
  bool increasing = false;
  /// f >= 0 everywhere on the domain.
  bool nonneg = false;
};

/// Chord of f through (m, f(m)) and (M, f(M)): z -> alpha z + beta. For
/// convex f the chord dominates f on [m, M]; for concave f it minorizes.
struct ChordCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
  double m = 0.0;
  double M = 0.0;

  double at(double z) const { return alpha * z + beta; }
};

/// A named scalar function together with its domain, convexity/monotonicity
/// flags and a one-sided-derivative selection k with
/// f'_-(x) <= k(x) <= f'_+(x). The selection can be swapped out to exercise
/// the freedom the sandwich theorems allow.
class ScalarFunctionSpec {
 public:
  using Evaluator = std::function<double(double)>;

  ScalarFunctionSpec() = default;
  ScalarFunctionSpec(std::string name, std::vector<double> params,
                     Interval domain, FunctionFlags flags, Evaluator eval,
                     Evaluator subdiff);

  const std::string& name() const { return name_; }
  const std::vector<double>& params() const { return params_; }
  const Interval& domain() const { return domain_; }
  const FunctionFlags& flags() const { return flags_; }

  double evaluate(double x) const;

  /// The chosen subdifferential selection k(x).
  double subdifferential(double x) const;

  bool has_subdifferential() const { return static_cast<bool>(subdiff_); }

  /// Same function, different selection inside [f'_-, f'_+].
  ScalarFunctionSpec with_subdifferential(Evaluator k) const;

  ScalarFunctionSpec with_flags(FunctionFlags flags) const;

 private:
  std::string name_;
  std::vector<double> params_;
  Interval domain_;
  FunctionFlags flags_;
  Evaluator eval_;
  Evaluator subdiff_;
};

/// Catalogue lookup. Known names: "power" (param p), "sqrt", "exp", "log",
/// "tlogt", "abs", "identity", "affine" (params a, b). Raises
/// UnknownFunction / InvalidParameter.
ScalarFunctionSpec builtin(const std::string& name,
                           const std::map<std::string, double>& params = {});

/// f(scale * t + shift), domain pulled back accordingly; convexity flags
/// survive, monotone/increasing flags survive only when scale >= 0.
ScalarFunctionSpec compose_affine(const ScalarFunctionSpec& f, double scale,
                                  double shift);

/// Chord through the window endpoints; requires finite m < M inside the
/// domain of f.
ChordCoefficients chord(const ScalarFunctionSpec& f, double m, double M);

/// Expose the stored derivative selection; raises NotConvexOrConcave when f
/// declares neither convexity flag (one-sided derivatives are then not
/// guaranteed to exist).
ScalarFunctionSpec::Evaluator subdiff_default(const ScalarFunctionSpec& f);

/// Scalar evaluation with an explicit domain check (evaluate() itself only
/// checks finiteness); raises DomainViolation.
double evaluate_in_domain(const ScalarFunctionSpec& f, double x);

}  // namespace opineq
