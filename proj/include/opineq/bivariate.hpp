#pragma once

#include <functional>
#include <string>

#include "opineq/hermitian.hpp"

namespace opineq {

/// Bivariate objective F(u, v) used by the converse machinery, evaluated on
/// scalars while optimizing and on commuting-or-structured operator pairs
/// while verifying. Builtin kinds carry an exact operator counterpart;
/// custom callables are scalar-only.
class BivariateSpec {
 public:
  enum class Kind { difference, ratio, linear_probe, affine, custom };

  /// u - lambda v.
  static BivariateSpec difference(double lambda);
  /// u / v (operator side: V^{-1/2} U V^{-1/2}); v must be positive.
  static BivariateSpec ratio();
  /// u^{1/q} - lambda v, for u >= 0.
  static BivariateSpec linear_probe(double lambda, double q);
  /// a u + b v + c.
  static BivariateSpec affine(double a, double b, double c);
  /// Scalar-only custom objective; monotone_in_first is caller-declared.
  static BivariateSpec custom(std::string label,
                              std::function<double(double, double)> h,
                              bool monotone_in_first);

  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  bool monotone_in_first() const { return monotone_in_first_; }
  double lambda() const { return lambda_; }
  double q() const { return q_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

  /// Scalar evaluation; raises DomainViolation outside the objective's
  /// natural domain (ratio needs v > 0, linear_probe needs u >= 0).
  double evaluate(double u, double v) const;

  /// Operator evaluation for the builtin kinds; raises
  /// NonCommutingUnsupportedF for custom objectives.
  HermitianMatrix evaluate_operator(const HermitianMatrix& u,
                                    const HermitianMatrix& v) const;

 private:
  BivariateSpec() = default;

  Kind kind_ = Kind::difference;
  std::string label_;
  bool monotone_in_first_ = true;
  double lambda_ = 0.0;
  double q_ = 1.0;
  double a_ = 0.0;
  double b_ = 0.0;
  double c_ = 0.0;
  std::function<double(double, double)> h_;
};

}  // namespace opineq
