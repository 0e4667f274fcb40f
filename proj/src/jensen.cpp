#include "opineq/jensen.hpp"

#include <string>

namespace opineq {

JensenReport jensen_gap(const PositiveMapField& field,
                        const ScalarFunctionSpec& f,
                        const TolerancePolicy& policy) {
  field.require_unital();

  JensenReport report;
  const HermitianMatrix mean = integrate_field(field);
  report.lhs = apply_function(f, mean);
  report.rhs = integrate_field(field, f);

  const HermitianMatrix diff = report.rhs - report.lhs;
  report.gap_min_eig = min_eigenvalue(diff);
  const double scale = std::max(1.0, operator_norm(report.rhs));
  report.verdict =
      make_verdict(report.gap_min_eig, policy.tolerance(scale));
  return report;
}

JensenReport discrete_jensen(const std::vector<double>& weights,
                             const std::vector<KrausMap>& maps,
                             const std::vector<HermitianMatrix>& data,
                             const ScalarFunctionSpec& f,
                             const TolerancePolicy& policy) {
  if (weights.size() != maps.size() || maps.size() != data.size())
    raise(ErrorKind::DimMismatch,
          "discrete field arrays disagree: " + std::to_string(weights.size()) +
              " weights, " + std::to_string(maps.size()) + " maps, " +
              std::to_string(data.size()) + " data");
  std::vector<FieldPoint> pts;
  pts.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i)
    pts.push_back(FieldPoint{weights[i], maps[i], data[i]});
  return jensen_gap(PositiveMapField(std::move(pts)), f, policy);
}

}  // namespace opineq
