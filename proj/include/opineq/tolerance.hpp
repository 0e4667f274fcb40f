#pragma once

#include <algorithm>
#include <cmath>

namespace opineq {

/// Single tolerance knob threaded through every comparison verdict.
///
/// A Loewner comparison A <= B is accepted when the smallest eigenvalue of
/// B - A stays above -tolerance(scale), where the scale is stated by each
/// operation (for plain comparisons: the larger of the operator norms of
/// B - A and B). The default rtol is deliberately loose relative to the
/// eigensolver accuracy (~1e-14 per unit norm) so that genuine violations,
/// which sit orders of magnitude below, are never absorbed.
struct TolerancePolicy {
  double rtol = 1e-8;
  double atol = 0.0;

  double tolerance(double scale) const {
    return atol + rtol * std::max(1.0, scale);
  }

  static TolerancePolicy with_rtol(double r) { return TolerancePolicy{r, 0.0}; }
};

/// Residual ceiling for certifying a raw matrix as Hermitian (relative to
/// its largest entry).
inline constexpr double kHermitianRtol = 1e-12;

/// Frobenius residual ceiling for the unitality check of a map field.
inline constexpr double kUnitalityTol = 1e-8;

/// Slack granted when checking computed spectra against stated interval
/// endpoints; grows with the magnitude of the point being tested.
inline constexpr double kEndpointSlackBase = 1e-10;

inline double endpoint_slack(double x) {
  return kEndpointSlackBase * std::max(1.0, std::abs(x));
}

}  // namespace opineq
