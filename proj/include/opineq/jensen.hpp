#pragma once

#include "opineq/positive_maps.hpp"

namespace opineq {

/// Full record of one Jensen comparison f(sum w phi(x)) <= sum w phi(f(x)).
struct JensenReport {
  HermitianMatrix lhs;      // f applied to the integrated field
  HermitianMatrix rhs;      // integrated image of f
  double gap_min_eig = 0.0; // min eigenvalue of rhs - lhs
  ComparisonVerdict verdict;
};

/// Evaluate both sides of the operator Jensen inequality for a unital
/// field and compare in the Loewner order. The tolerance scale is
/// max(1, ||rhs||): the verdict must stay meaningful when the gap itself is
/// tiny. Raises NotUnital / SpectrumOutOfDomain.
JensenReport jensen_gap(const PositiveMapField& field,
                        const ScalarFunctionSpec& f,
                        const TolerancePolicy& policy = {});

/// Convenience wrapper assembling the field from parallel arrays first;
/// weights/maps/data must have equal length.
JensenReport discrete_jensen(const std::vector<double>& weights,
                             const std::vector<KrausMap>& maps,
                             const std::vector<HermitianMatrix>& data,
                             const ScalarFunctionSpec& f,
                             const TolerancePolicy& policy = {});

}  // namespace opineq
