#pragma once

#include <functional>
#include <vector>

#include "opineq/bivariate.hpp"
#include "opineq/positive_maps.hpp"

namespace opineq {

/// Output of the certified scalar optimizer: the extremal value, where it
/// was attained, the grid that was scanned, and whether golden-section
/// refinement strictly improved on the grid scan.
struct ScalarBound {
  double value = 0.0;
  double argmax_z = 0.0;
  int grid_size = 0;
  bool refined = false;
};

enum class OptimizeMode { sup, inf };

/// Dense grid scan (default 10001 points) plus golden-section refinement on
/// the cell bracketing the best grid point. Ties prefer the smallest z; the
/// refinement tolerance in z is 1e-12 relative. Raises NonFiniteValue when
/// h produces a non-finite value.
ScalarBound optimize_scalar(const std::function<double(double)>& h, double m,
                            double M, OptimizeMode mode, int grid_size = 10001);

/// sup_{m<=z<=M} F[alpha_f z + beta_f, g(z)] for convex f — the constant on
/// the right of the Jensen converse. Concave f flips to the dual inf bound.
/// Raises FlagViolation (f neither convex nor concave, or F not monotone in
/// its first argument) and DomainViolation.
ScalarBound mond_pecaric_sup(const ScalarFunctionSpec& f,
                             const ScalarFunctionSpec& g,
                             const BivariateSpec& F, double m, double M);

/// Verify F[ integral of phi(f(x)), g(integral of phi(x)) ] <= bound * 1 in
/// the Loewner order (>= with the inf bound for concave f). The field must
/// be unital with a validated spectral window.
ComparisonVerdict verify_converse(const PositiveMapField& field,
                                  const ScalarFunctionSpec& f,
                                  const ScalarFunctionSpec& g,
                                  const BivariateSpec& F,
                                  const TolerancePolicy& policy = {});

/// The closed-form constant C(lambda, m, M, p, q): the maximum of
/// H(z) = (alpha_p z + beta_p)^{1/q} - lambda z over [m, M], evaluated by
/// branch. Requires lambda >= 0, 0 < m < M, p >= 1, q >= 1. At q = 1 the
/// interior branch degenerates (H is affine) and only the endpoint branches
/// apply.
double power_constant(double lambda, double m, double M, double p, double q);

struct PowerConstantDetail {
  double value = 0.0;
  double argmax_z = 0.0;
  int branch = 0;  // 1 = right endpoint, 2 = interior, 3 = left endpoint
};

PowerConstantDetail power_constant_detail(double lambda, double m, double M,
                                          double p, double q);

/// Verify the power-mean converse
///   ( sum w <A^p x, x> )^{1/q} - lambda sum w <A x, x> <= C(lambda,m,M,p,q)
/// for a normalized vector field with positive operators; [m, M] comes from
/// the field's window. The default tolerance is a pinned 1e-9 rtol at
/// scale max(1, |C|).
ComparisonVerdict verify_rev0(const VectorField& vf, double lambda, double p,
                              double q,
                              const TolerancePolicy& policy =
                                  TolerancePolicy::with_rtol(1e-9));

/// Kubo-Ando weighted geometric mean
/// A #_r B = A^{1/2} (A^{-1/2} B A^{-1/2})^r A^{1/2}, r in [0, 1]; both
/// operands must be positive definite.
HermitianMatrix geometric_mean(const HermitianMatrix& a,
                               const HermitianMatrix& b, double r);

/// One atom of the paired-operator field the geometric-mean corollary acts
/// on: weight, operators A and B, vector x.
struct Rev3Point {
  double weight = 0.0;
  HermitianMatrix a;
  HermitianMatrix b;
  std::vector<Complex> x;
};

/// Verify the geometric-mean converse
///   ( sum w <A^p x,x> )^{1/p} ( sum w <B^q x,x> )^{1/q}
///       - lambda sum w <(B^q #_{1/s} A^p) x, x>
///   <= C(lambda, m1^{p/s}/M2^{q/s}, M1^{p/s}/m2^{q/s}, s, p) * M2^q
/// with q conjugate to p (1/p + 1/q = 1, p > 1), lambda >= 0, s >= 1,
/// declared spectral bounds 0 < m1 < M1 for the A's and 0 < m2 < M2 for the
/// B's, and a normalized vector family. The interior operators
/// (B^{-q/2} A^p B^{-q/2})^{1/s} are checked against the derived window
/// (SpectralSandwichViolated flags inconsistent declared bounds).
ComparisonVerdict verify_rev3(const std::vector<Rev3Point>& points, double m1,
                              double M1, double m2, double M2, double lambda,
                              double s, double p,
                              const TolerancePolicy& policy = {});

/// inf_{m<=z<=M} F[f(z), g(z)] — the lower-bound constant valid for
/// operator convex f (dual sup for operator concave f). Raises
/// FlagViolation.
ScalarBound li_mathias_inf(const ScalarFunctionSpec& f,
                           const ScalarFunctionSpec& g, const BivariateSpec& F,
                           double m, double M);

/// inf_{m<=z<=M} F[f(y) + k(y)(z - y), g(z)] for the tangent at y in
/// [m, M], with k a subdifferential selection (defaults to the one stored
/// on f). Convex f takes inf, concave f the dual sup. Raises TangentLeavesU
/// when the tangent value leaves F's first-argument domain.
ScalarBound sub3_inf(const ScalarFunctionSpec& f, const ScalarFunctionSpec& g,
                     const BivariateSpec& F, double y, double m, double M,
                     const ScalarFunctionSpec::Evaluator& k = {});

}  // namespace opineq
