#include "opineq/subdifferential_bounds.hpp"

#include <cmath>
#include <string>

namespace opineq {

namespace {

ScalarFunctionSpec::Evaluator selection_or_default(
    const ScalarFunctionSpec& f, const ScalarFunctionSpec::Evaluator& k) {
  return k ? k : subdiff_default(f);
}

void require_convex_or_concave(const ScalarFunctionSpec& f,
                               const char* where) {
  if (!f.flags().convex && !f.flags().concave)
    raise(ErrorKind::FlagViolation,
          std::string(where) + " needs a convex or concave function, '" +
              f.name() + "' declares neither");
}

/// Data must be positive semidefinite for the norm-bound theorems.
void require_positive_data(const PositiveMapField& field) {
  for (const FieldPoint& pt : field.points()) {
    const double lo = min_eigenvalue(pt.datum);
    if (lo < -endpoint_slack(operator_norm(pt.datum)))
      raise(ErrorKind::SpectrumOutOfRange,
            "datum has eigenvalue " + std::to_string(lo) +
                "; positive operators are required here");
  }
}

}  // namespace

SandwichReport sub1_sandwich(const PositiveMapField& field,
                             const ScalarFunctionSpec& f,
                             const ScalarFunctionSpec::Evaluator& k, double x,
                             double y, const TolerancePolicy& policy) {
  require_convex_or_concave(f, "the sandwich");
  field.require_unital();
  const Interval window = field.checked_interval();
  for (double point : {x, y}) {
    if (!window.contains(point, endpoint_slack(point)))
      raise(ErrorKind::PointOutOfInterval,
            "base point " + std::to_string(point) +
                " lies outside the field window " + window.describe());
  }

  const ScalarFunctionSpec::Evaluator sel = selection_or_default(f, k);
  const std::size_t n = field.out_dim();
  const HermitianMatrix mean = integrate_field(field);

  SandwichReport report;
  report.x_used = x;
  report.y_used = y;

  const double fy = evaluate_in_domain(f, y);
  const double ky = sel(y);
  report.lower = HermitianMatrix::scalar_matrix(n, fy) +
                 (mean - HermitianMatrix::scalar_matrix(n, y)).scaled(ky);

  report.middle = integrate_field(field, f);

  const double fx = evaluate_in_domain(f, x);
  const HermitianMatrix int_k = integrate_field_pointwise(field, sel);
  const HermitianMatrix int_kx = integrate_field_pointwise(
      field, [&sel](double t) { return sel(t) * t; });
  report.upper = HermitianMatrix::scalar_matrix(n, fx) - int_k.scaled(x) +
                 int_kx;

  if (f.flags().convex) {
    report.verdict_lower = loewner_leq(report.lower, report.middle, policy);
    report.verdict_upper = loewner_leq(report.middle, report.upper, policy);
  } else {
    report.verdict_lower = loewner_leq(report.middle, report.lower, policy);
    report.verdict_upper = loewner_leq(report.upper, report.middle, policy);
  }
  return report;
}

Dk1Report dk1_norm_bound(const PositiveMapField& field,
                         const ScalarFunctionSpec& f, const NormSpec& nspec,
                         const TolerancePolicy& policy) {
  if (!f.flags().convex)
    raise(ErrorKind::FlagViolation,
          "this chord bound needs a convex function, '" + f.name() +
              "' is not declared convex");
  if (!nspec.is_gauge())
    raise(ErrorKind::NotGaugeNormalized,
          "the bound needs a gauge-normalized norm (so that A <= ||A|| 1); "
          "got " + nspec.name());
  field.require_unital();
  require_positive_data(field);

  const double f0 = evaluate_in_domain(f, 0.0);
  const std::size_t n = field.out_dim();

  const HermitianMatrix lhs = integrate_field(field, f);

  // sum over points of w (f(||A||) - f(0))/||A|| phi(A), and the same with
  // f(||A||)/||A|| for the f(0) <= 0 variant.
  HermitianMatrix rhs2_sum = HermitianMatrix::zero(n);
  HermitianMatrix rhs3_sum = HermitianMatrix::zero(n);
  for (const FieldPoint& pt : field.points()) {
    const double a_norm = norm(pt.datum, nspec);
    if (a_norm <= 1e-150)
      raise(ErrorKind::ZeroOperator,
            "a datum has norm " + std::to_string(a_norm) +
                "; the bound divides by ||A||");
    const double f_norm = evaluate_in_domain(f, a_norm);
    const HermitianMatrix image = pt.map.apply(pt.datum).scaled(pt.weight);
    rhs2_sum = rhs2_sum + image.scaled((f_norm - f0) / a_norm);
    rhs3_sum = rhs3_sum + image.scaled(f_norm / a_norm);
  }

  Dk1Report report;
  report.f_at_zero = f0;
  report.dk2 =
      loewner_leq(lhs, HermitianMatrix::scalar_matrix(n, f0) + rhs2_sum,
                  policy);
  if (f0 <= 0.0) report.dk3 = loewner_leq(lhs, rhs3_sum, policy);
  return report;
}

Dk11Report dk11_bounds(const PositiveMapField& field,
                       const ScalarFunctionSpec& f, const NormSpec& nspec,
                       const TolerancePolicy& policy) {
  if (!f.flags().increasing)
    raise(ErrorKind::PreconditionViolated,
          "hypothesis 'f increasing' fails: '" + f.name() +
              "' is not declared increasing");
  field.require_unital();
  require_positive_data(field);

  const std::size_t n = field.out_dim();
  const HermitianMatrix mean = integrate_field(field);
  const HermitianMatrix image = integrate_field(field, f);
  const double mean_norm = norm(mean, nspec);

  Dk11Report report;
  report.norm_of_mean = mean_norm;

  if (f.flags().convex) {
    report.branch = Dk11Branch::convex_lower;
    const double id_norm = nspec.on_identity(n);
    if (std::abs(id_norm - 1.0) > 1e-12)
      raise(ErrorKind::PreconditionViolated,
            "hypothesis '||1|| = 1' fails: the chosen norm gives ||1|| = " +
                std::to_string(id_norm) + " in dimension " +
                std::to_string(n));
    const double f0 = evaluate_in_domain(f, 0.0);
    if (f0 > 0.0)
      raise(ErrorKind::PreconditionViolated,
            "hypothesis 'f(0) <= 0' fails: f(0) = " + std::to_string(f0));
    // The proof rests on k(y) >= 0 and k(y) y - f(y) >= 0 at
    // y = ||mean||; assert both at that point.
    const ScalarFunctionSpec::Evaluator sel = subdiff_default(f);
    const double ky = sel(mean_norm);
    const double fy = evaluate_in_domain(f, mean_norm);
    const double slack0 = 1e-12 * std::max(1.0, std::abs(fy));
    if (ky < -slack0 || ky * mean_norm - fy < -slack0)
      raise(ErrorKind::PreconditionViolated,
            "hypothesis 'k(y) >= 0 and k(y) y - f(y) >= 0' fails at y = " +
                std::to_string(mean_norm));

    report.f_of_norm = fy;
    report.norm_of_image = norm(image, nspec);
    const double gap = report.norm_of_image - report.f_of_norm;
    const double scale =
        std::max({1.0, std::abs(report.norm_of_image), std::abs(fy)});
    report.verdict = make_verdict(gap, policy.tolerance(scale));
    return report;
  }

  if (f.flags().concave) {
    report.branch = Dk11Branch::concave_upper;
    const ComparisonVerdict hypothesis = loewner_leq(
        mean, HermitianMatrix::scalar_matrix(n, mean_norm), policy);
    if (!hypothesis.holds)
      raise(ErrorKind::PreconditionViolated,
            "hypothesis 'integral of phi(x) <= ||integral of phi(x)|| 1' "
            "fails by " + std::to_string(-hypothesis.min_eig_of_difference));
    report.f_of_norm = evaluate_in_domain(f, mean_norm);
    report.verdict = loewner_leq(
        image, HermitianMatrix::scalar_matrix(n, report.f_of_norm), policy);
    return report;
  }

  raise(ErrorKind::PreconditionViolated,
        "hypothesis 'f convex or concave' fails: '" + f.name() +
            "' declares neither");
}

SlaterReport slater_bound(const PositiveMapField& field,
                          const ScalarFunctionSpec& f,
                          const ScalarFunctionSpec::Evaluator& k,
                          const NormSpec& nspec,
                          const TolerancePolicy& policy) {
  if (!f.flags().convex)
    raise(ErrorKind::FlagViolation,
          "the Slater bound needs a convex function, '" + f.name() +
              "' is not declared convex");
  field.require_unital();

  const ScalarFunctionSpec::Evaluator sel = selection_or_default(f, k);
  const HermitianMatrix int_k = integrate_field_pointwise(field, sel);
  const HermitianMatrix int_kx = integrate_field_pointwise(
      field, [&sel](double t) { return sel(t) * t; });

  const double norm_k = norm(int_k, nspec);
  const double norm_kx = norm(int_kx, nspec);
  if (norm_k <= 1e-150 || norm_kx <= 1e-150)
    raise(ErrorKind::ZeroDenominatorNorm,
          "the normalizing norms are " + std::to_string(norm_kx) + " and " +
              std::to_string(norm_k) +
              "; the quotient point x is undefined");

  // Loewner hypothesis on the normalized integrals.
  const ComparisonVerdict hypothesis = loewner_leq(
      int_kx.scaled(1.0 / norm_kx), int_k.scaled(1.0 / norm_k), policy);
  if (!hypothesis.holds)
    raise(ErrorKind::ConditionNotMet,
          "the Loewner hypothesis on the normalized integrals fails by " +
              std::to_string(-hypothesis.min_eig_of_difference));

  SlaterReport report;
  report.x_bar = norm_kx / norm_k;
  if (!f.domain().contains(report.x_bar, endpoint_slack(report.x_bar)))
    raise(ErrorKind::XOutOfDomain,
          "the quotient point " + std::to_string(report.x_bar) +
              " lies outside the domain " + f.domain().describe() + " of '" +
              f.name() + "'");

  const double fx = f.evaluate(f.domain().clamp(report.x_bar));
  report.bound = HermitianMatrix::scalar_matrix(field.out_dim(), fx);
  report.verdict = loewner_leq(integrate_field(field, f), report.bound,
                               policy);
  return report;
}

}  // namespace opineq
