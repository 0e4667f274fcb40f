#include "opineq/bivariate.hpp"

#include <cmath>

namespace opineq {

BivariateSpec BivariateSpec::difference(double lambda) {
  if (!std::isfinite(lambda))
    raise(ErrorKind::InvalidParameter, "difference objective: lambda not finite");
  BivariateSpec f;
  f.kind_ = Kind::difference;
  f.label_ = "u - " + std::to_string(lambda) + " v";
  f.monotone_in_first_ = true;
  f.lambda_ = lambda;
  return f;
}

BivariateSpec BivariateSpec::ratio() {
  BivariateSpec f;
  f.kind_ = Kind::ratio;
  f.label_ = "u / v";
  f.monotone_in_first_ = true;
  return f;
}

BivariateSpec BivariateSpec::linear_probe(double lambda, double q) {
  if (!std::isfinite(lambda) || !std::isfinite(q) || q < 1.0)
    raise(ErrorKind::InvalidParameter,
          "linear probe objective needs finite lambda and q >= 1");
  BivariateSpec f;
  f.kind_ = Kind::linear_probe;
  f.label_ = "u^{1/" + std::to_string(q) + "} - " + std::to_string(lambda) + " v";
  f.monotone_in_first_ = true;
  f.lambda_ = lambda;
  f.q_ = q;
  return f;
}

BivariateSpec BivariateSpec::affine(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    raise(ErrorKind::InvalidParameter, "affine objective: coefficients not finite");
  BivariateSpec f;
  f.kind_ = Kind::affine;
  f.label_ = "a u + b v + c";
  f.monotone_in_first_ = (a >= 0.0);
  f.a_ = a;
  f.b_ = b;
  f.c_ = c;
  return f;
}

BivariateSpec BivariateSpec::custom(std::string label,
                                    std::function<double(double, double)> h,
                                    bool monotone_in_first) {
  if (!h) raise(ErrorKind::InvalidParameter, "custom objective without callable");
  BivariateSpec f;
  f.kind_ = Kind::custom;
  f.label_ = std::move(label);
  f.monotone_in_first_ = monotone_in_first;
  f.h_ = std::move(h);
  return f;
}

double BivariateSpec::evaluate(double u, double v) const {
  double y = 0.0;
  switch (kind_) {
    case Kind::difference:
      y = u - lambda_ * v;
      break;
    case Kind::ratio:
      if (!(v > 0.0))
        raise(ErrorKind::DomainViolation,
              "ratio objective needs v > 0, got v = " + std::to_string(v));
      y = u / v;
      break;
    case Kind::linear_probe: {
      if (u < -1e-12)
        raise(ErrorKind::DomainViolation,
              "linear probe objective needs u >= 0, got u = " +
                  std::to_string(u));
      y = std::pow(std::max(u, 0.0), 1.0 / q_) - lambda_ * v;
      break;
    }
    case Kind::affine:
      y = a_ * u + b_ * v + c_;
      break;
    case Kind::custom:
      y = h_(u, v);
      break;
  }
  if (!std::isfinite(y))
    raise(ErrorKind::NonFiniteValue,
          "objective '" + label_ + "' is not finite at (" + std::to_string(u) +
              ", " + std::to_string(v) + ")");
  return y;
}

HermitianMatrix BivariateSpec::evaluate_operator(const HermitianMatrix& u,
                                                 const HermitianMatrix& v) const {
  if (u.dim() != v.dim())
    raise(ErrorKind::DimMismatch, "objective operands have different dimensions");
  switch (kind_) {
    case Kind::difference:
      return u - v.scaled(lambda_);
    case Kind::ratio: {
      // V^{-1/2} U V^{-1/2}; matrix_power enforces positive definiteness.
      const HermitianMatrix w = matrix_power(v, -0.5);
      return congruence(w.matrix(), u);
    }
    case Kind::linear_probe: {
      const double floor = min_eigenvalue(u);
      if (floor < -endpoint_slack(operator_norm(u)))
        raise(ErrorKind::DomainViolation,
              "linear probe objective needs U >= 0; min eigenvalue is " +
                  std::to_string(floor));
      const double inv_q = 1.0 / q_;
      return apply_pointwise(
                 [inv_q](double x) { return std::pow(std::max(x, 0.0), inv_q); },
                 u) -
             v.scaled(lambda_);
    }
    case Kind::affine: {
      HermitianMatrix out = u.scaled(a_) + v.scaled(b_);
      return out.shifted(c_);
    }
    case Kind::custom:
      raise(ErrorKind::NonCommutingUnsupportedF,
            "custom objective '" + label_ +
                "' has no operator evaluation; use a builtin kind");
  }
  raise(ErrorKind::InvalidParameter, "unreachable objective kind");
}

}  // namespace opineq
