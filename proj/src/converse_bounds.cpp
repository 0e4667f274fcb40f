#include "opineq/converse_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opineq/interval.hpp"

namespace opineq {

namespace {

double checked_eval(const std::function<double(double)>& h, double z) {
  const double v = h(z);
  if (!std::isfinite(v))
    raise(ErrorKind::NonFiniteValue,
          "objective is not finite at z = " + std::to_string(z));
  return v;
}

/// Real part of <A x, x>.
double expectation(const HermitianMatrix& a, const std::vector<Complex>& x) {
  if (x.size() != a.dim())
    raise(ErrorKind::DimMismatch, "expectation: vector/operator mismatch");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Complex row(0.0, 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) row += a(i, j) * x[j];
    acc += std::conj(x[i]) * row;
  }
  return std::real(acc);
}

void require_monotone_objective(const BivariateSpec& F) {
  if (!F.monotone_in_first())
    raise(ErrorKind::FlagViolation,
          "objective '" + F.label() +
              "' is not monotone in its first argument, which every bound "
              "here requires");
}

/// Extremize z -> F[a z + b, g(z)] over [m, M]; shared by the chord bound
/// and its dual.
ScalarBound affine_front_bound(double a, double b, const ScalarFunctionSpec& g,
                               const BivariateSpec& F, double m, double M,
                               OptimizeMode mode) {
  auto h = [&](double z) {
    return F.evaluate(a * z + b, evaluate_in_domain(g, z));
  };
  return optimize_scalar(h, m, M, mode);
}

}  // namespace

ScalarBound optimize_scalar(const std::function<double(double)>& h, double m,
                            double M, OptimizeMode mode, int grid_size) {
  require_window(m, M, "optimize_scalar");
  if (grid_size < 3)
    raise(ErrorKind::InvalidParameter,
          "optimizer grid needs at least 3 points, got " +
              std::to_string(grid_size));

  const double sign = (mode == OptimizeMode::sup) ? 1.0 : -1.0;
  auto eval = [&](double z) { return sign * checked_eval(h, z); };

  // Dense scan; strict improvement keeps the leftmost maximizer on ties.
  const double step = (M - m) / static_cast<double>(grid_size - 1);
  double best_v = eval(m);
  double best_z = m;
  int best_i = 0;
  for (int i = 1; i < grid_size; ++i) {
    const double z = (i == grid_size - 1) ? M : m + step * i;
    const double v = eval(z);
    if (v > best_v) {
      best_v = v;
      best_z = z;
      best_i = i;
    }
  }
  const double grid_best = best_v;

  // Golden-section refinement on the bracketing cell.
  double lo = (best_i == 0) ? m : m + step * (best_i - 1);
  double hi = (best_i == grid_size - 1) ? M : m + step * (best_i + 1);
  hi = std::min(hi, M);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  auto consider = [&](double z, double v) {
    if (v > best_v || (v == best_v && z < best_z)) {
      best_v = v;
      best_z = z;
    }
  };
  consider(c, fc);
  consider(d, fd);
  const double ztol = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  while (b - a > ztol) {
    if (fc >= fd) {  // keep the left subinterval on ties
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = eval(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = eval(d);
      consider(d, fd);
    }
  }
  const double zmid = 0.5 * (a + b);
  consider(zmid, eval(zmid));

  ScalarBound out;
  out.value = sign * best_v;
  out.argmax_z = best_z;
  out.grid_size = grid_size;
  out.refined = best_v > grid_best;
  return out;
}

ScalarBound mond_pecaric_sup(const ScalarFunctionSpec& f,
                             const ScalarFunctionSpec& g,
                             const BivariateSpec& F, double m, double M) {
  require_monotone_objective(F);
  if (!f.flags().convex && !f.flags().concave)
    raise(ErrorKind::FlagViolation,
          "chord bound needs a convex (sup) or concave (inf) function, '" +
              f.name() + "' declares neither");
  const ChordCoefficients ch = chord(f, m, M);
  const OptimizeMode mode =
      f.flags().convex ? OptimizeMode::sup : OptimizeMode::inf;
  return affine_front_bound(ch.alpha, ch.beta, g, F, m, M, mode);
}

ComparisonVerdict verify_converse(const PositiveMapField& field,
                                  const ScalarFunctionSpec& f,
                                  const ScalarFunctionSpec& g,
                                  const BivariateSpec& F,
                                  const TolerancePolicy& policy) {
  field.require_unital();
  const Interval window = field.checked_interval();
  const ScalarBound bound = mond_pecaric_sup(f, g, F, window.lo, window.hi);

  const HermitianMatrix u_op = integrate_field(field, f);
  const HermitianMatrix v_op = apply_function(g, integrate_field(field));
  const HermitianMatrix f_op = F.evaluate_operator(u_op, v_op);
  const HermitianMatrix bound_op =
      HermitianMatrix::scalar_matrix(f_op.dim(), bound.value);

  return f.flags().convex ? loewner_leq(f_op, bound_op, policy)
                          : loewner_leq(bound_op, f_op, policy);
}

PowerConstantDetail power_constant_detail(double lambda, double m, double M,
                                          double p, double q) {
  if (!std::isfinite(lambda) || lambda < 0.0)
    raise(ErrorKind::InvalidParameter,
          "power constant needs lambda >= 0, got " + std::to_string(lambda));
  if (!std::isfinite(p) || p < 1.0 || !std::isfinite(q) || q < 1.0)
    raise(ErrorKind::InvalidParameter,
          "power constant needs p >= 1 and q >= 1, got p = " +
              std::to_string(p) + ", q = " + std::to_string(q));
  if (!std::isfinite(m) || !std::isfinite(M) || !(0.0 < m) || !(m < M))
    raise(ErrorKind::InvalidParameter,
          "power constant needs 0 < m < M, got m = " + std::to_string(m) +
              ", M = " + std::to_string(M));

  const double alpha = (std::pow(M, p) - std::pow(m, p)) / (M - m);
  const double beta =
      (M * std::pow(m, p) - m * std::pow(M, p)) / (M - m);
  const double thr_M = (alpha / q) * std::pow(M, p * (1.0 / q - 1.0));
  const double thr_m = (alpha / q) * std::pow(m, p * (1.0 / q - 1.0));

  PowerConstantDetail out;
  if (lambda <= thr_M) {
    out.branch = 1;
    out.argmax_z = M;
    out.value = M * (std::pow(M, p / q - 1.0) - lambda);
  } else if (lambda >= thr_m) {
    out.branch = 3;
    out.argmax_z = m;
    out.value = m * (std::pow(m, p / q - 1.0) - lambda);
  } else {
    // Interior stationary point; unreachable at q = 1 where both
    // thresholds coincide and H is affine.
    out.branch = 2;
    const double ratio = q * lambda / alpha;
    out.value = (q - 1.0) / q * std::pow(ratio, 1.0 / (1.0 - q)) +
                (beta / alpha) * lambda;
    const double w = std::pow(ratio, q / (1.0 - q));
    out.argmax_z = (w - beta) / alpha;
  }
  if (!std::isfinite(out.value))
    raise(ErrorKind::NonFiniteValue, "power constant evaluated non-finite");
  return out;
}

double power_constant(double lambda, double m, double M, double p, double q) {
  return power_constant_detail(lambda, m, M, p, q).value;
}

ComparisonVerdict verify_rev0(const VectorField& vf, double lambda, double p,
                              double q, const TolerancePolicy& policy) {
  vf.require_normalized();
  const Interval window = vf.checked_interval();
  const double c = power_constant(lambda, window.lo, window.hi, p, q);

  double sum_p = 0.0;
  double sum_1 = 0.0;
  for (const VectorFieldPoint& pt : vf.points()) {
    sum_p += pt.weight * expectation(matrix_power(pt.op, p), pt.vec);
    sum_1 += pt.weight * expectation(pt.op, pt.vec);
  }
  const double lhs = std::pow(std::max(sum_p, 0.0), 1.0 / q) - lambda * sum_1;
  const double slack = c - lhs;
  const double scale = std::max(1.0, std::abs(c));
  return make_verdict(slack, policy.tolerance(scale));
}

HermitianMatrix geometric_mean(const HermitianMatrix& a,
                               const HermitianMatrix& b, double r) {
  if (!std::isfinite(r) || r < 0.0 || r > 1.0)
    raise(ErrorKind::InvalidParameter,
          "geometric mean weight must lie in [0, 1], got " + std::to_string(r));
  const HermitianMatrix a_half = matrix_power(a, 0.5);
  const HermitianMatrix a_invh = matrix_power(a, -0.5);
  const HermitianMatrix inner =
      matrix_power(congruence(a_invh.matrix(), b), r);
  return congruence(a_half.matrix(), inner);
}

ComparisonVerdict verify_rev3(const std::vector<Rev3Point>& points, double m1,
                              double M1, double m2, double M2, double lambda,
                              double s, double p,
                              const TolerancePolicy& policy) {
  if (points.empty())
    raise(ErrorKind::InvalidParameter, "the paired field is empty");
  require_window(m1, M1, "verify_rev3 (A bounds)");
  require_window(m2, M2, "verify_rev3 (B bounds)");
  if (!(m1 > 0.0) || !(m2 > 0.0))
    raise(ErrorKind::InvalidParameter,
          "spectral bounds must be strictly positive");
  if (!std::isfinite(s) || s < 1.0)
    raise(ErrorKind::InvalidParameter,
          "verify_rev3 needs s >= 1, got " + std::to_string(s));
  if (!std::isfinite(lambda) || lambda < 0.0)
    raise(ErrorKind::InvalidParameter,
          "verify_rev3 needs lambda >= 0, got " + std::to_string(lambda));
  if (!std::isfinite(p) || !(p > 1.0))
    raise(ErrorKind::ConjugateExponentViolation,
          "the exponent pair needs p > 1 so that q = p/(p-1) is finite; got "
          "p = " + std::to_string(p));
  const double q = p / (p - 1.0);

  double mass = 0.0;
  for (const Rev3Point& pt : points) {
    if (!(pt.weight >= 0.0) || !std::isfinite(pt.weight))
      raise(ErrorKind::InvalidParameter, "weights must be finite nonnegative");
    double nrm2 = 0.0;
    for (const Complex& z : pt.x) nrm2 += std::norm(z);
    mass += pt.weight * nrm2;
  }
  if (std::abs(mass - 1.0) > 1e-10)
    raise(ErrorKind::NotNormalized,
          "sum of w ||x||^2 is " + std::to_string(mass) + ", expected 1");

  const Interval wa = Interval::closed(m1, M1);
  const Interval wb = Interval::closed(m2, M2);
  for (const Rev3Point& pt : points) {
    const auto ea = eig_hermitian(pt.a).eigenvalues;
    const auto eb = eig_hermitian(pt.b).eigenvalues;
    if (!wa.contains(ea.front(), endpoint_slack(ea.front())) ||
        !wa.contains(ea.back(), endpoint_slack(ea.back())))
      raise(ErrorKind::SpectrumOutOfRange,
            "an A operator leaves its declared window " + wa.describe());
    if (!wb.contains(eb.front(), endpoint_slack(eb.front())) ||
        !wb.contains(eb.back(), endpoint_slack(eb.back())))
      raise(ErrorKind::SpectrumOutOfRange,
            "a B operator leaves its declared window " + wb.describe());
  }

  const double mt = std::pow(m1, p / s) / std::pow(M2, q / s);
  const double Mt = std::pow(M1, p / s) / std::pow(m2, q / s);

  double sum_a = 0.0;
  double sum_b = 0.0;
  double sum_g = 0.0;
  for (const Rev3Point& pt : points) {
    const HermitianMatrix ap = matrix_power(pt.a, p);
    const HermitianMatrix bq = matrix_power(pt.b, q);

    // The substitution operator (B^{-q/2} A^p B^{-q/2})^{1/s} must sit in
    // the window the declared bounds promise.
    const HermitianMatrix b_invqh = matrix_power(pt.b, -q / 2.0);
    const HermitianMatrix w =
        matrix_power(congruence(b_invqh.matrix(), ap), 1.0 / s);
    const auto ew = eig_hermitian(w).eigenvalues;
    if (ew.front() < mt - endpoint_slack(mt) ||
        ew.back() > Mt + endpoint_slack(Mt))
      raise(ErrorKind::SpectralSandwichViolated,
            "the interior operator has spectrum [" +
                std::to_string(ew.front()) + ", " + std::to_string(ew.back()) +
                "], outside the derived window [" + std::to_string(mt) + ", " +
                std::to_string(Mt) + "]");

    sum_a += pt.weight * expectation(ap, pt.x);
    sum_b += pt.weight * expectation(bq, pt.x);
    sum_g += pt.weight * expectation(geometric_mean(bq, ap, 1.0 / s), pt.x);
  }

  const double lhs = std::pow(std::max(sum_a, 0.0), 1.0 / p) *
                         std::pow(std::max(sum_b, 0.0), 1.0 / q) -
                     lambda * sum_g;
  const double c = power_constant(lambda, mt, Mt, s, p);
  const double rhs = c * std::pow(M2, q);
  const double slack = rhs - lhs;
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return make_verdict(slack, policy.tolerance(scale));
}

ScalarBound li_mathias_inf(const ScalarFunctionSpec& f,
                           const ScalarFunctionSpec& g, const BivariateSpec& F,
                           double m, double M) {
  require_monotone_objective(F);
  if (!f.flags().operator_convex && !f.flags().operator_concave)
    raise(ErrorKind::FlagViolation,
          "this lower bound needs operator convexity (inf) or operator "
          "concavity (sup); '" + f.name() + "' declares neither");
  const OptimizeMode mode =
      f.flags().operator_convex ? OptimizeMode::inf : OptimizeMode::sup;
  auto h = [&](double z) {
    return F.evaluate(evaluate_in_domain(f, z), evaluate_in_domain(g, z));
  };
  return optimize_scalar(h, m, M, mode);
}

ScalarBound sub3_inf(const ScalarFunctionSpec& f, const ScalarFunctionSpec& g,
                     const BivariateSpec& F, double y, double m, double M,
                     const ScalarFunctionSpec::Evaluator& k) {
  require_monotone_objective(F);
  if (!f.flags().convex && !f.flags().concave)
    raise(ErrorKind::FlagViolation,
          "the tangent bound needs a convex (inf) or concave (sup) function, "
          "'" + f.name() + "' declares neither");
  require_window(m, M, "sub3_inf");
  if (!Interval::closed(m, M).contains(y, endpoint_slack(y)))
    raise(ErrorKind::PointOutOfInterval,
          "tangent base point y = " + std::to_string(y) +
              " lies outside [" + std::to_string(m) + ", " + std::to_string(M) +
              "]");

  const ScalarFunctionSpec::Evaluator sel = k ? k : subdiff_default(f);
  const double fy = evaluate_in_domain(f, y);
  const double ky = sel(y);
  if (!std::isfinite(ky))
    raise(ErrorKind::NonFiniteValue, "subdifferential selection at y");

  const bool probe_front = (F.kind() == BivariateSpec::Kind::linear_probe);
  auto h = [&, fy, ky](double z) {
    const double tangent = fy + ky * (z - y);
    if (probe_front && tangent < -1e-12)
      raise(ErrorKind::TangentLeavesU,
            "tangent value " + std::to_string(tangent) + " at z = " +
                std::to_string(z) +
                " leaves the first-argument domain of '" + F.label() + "'");
    return F.evaluate(tangent, evaluate_in_domain(g, z));
  };
  const OptimizeMode mode =
      f.flags().convex ? OptimizeMode::inf : OptimizeMode::sup;
  return optimize_scalar(h, m, M, mode);
}

}  // namespace opineq
