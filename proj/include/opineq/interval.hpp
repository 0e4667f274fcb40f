#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "opineq/errors.hpp"

namespace opineq {

/// Real interval with independent open/closed endpoint flags; endpoints may
/// be infinite. Used both as a function domain and as the spectral window
/// [m, M] attached to operator data.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;

  static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
  static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval all() { return {}; }
  static Interval positive() {
    return {0.0, std::numeric_limits<double>::infinity(), true, false};
  }
  static Interval nonnegative() {
    return {0.0, std::numeric_limits<double>::infinity(), false, false};
  }

  bool degenerate() const { return !(lo < hi); }

  /// Membership with absolute slack: closed endpoints admit overshoot up to
  /// `slack`, open endpoints demand clearance of at least `slack`.
  bool contains(double x, double slack = 0.0) const {
    if (!std::isfinite(x)) return false;
    const bool above = lo_open ? (x >= lo + slack) : (x >= lo - slack);
    const bool below = hi_open ? (x <= hi - slack) : (x <= hi + slack);
    return above && below;
  }

  bool contains_pair(double m, double M, double slack = 0.0) const {
    return contains(m, slack) && contains(M, slack);
  }

  /// Pull a value that passed contains() back onto a closed endpoint it
  /// overshoots; leaves interior values untouched.
  double clamp(double x) const {
    if (!lo_open && x < lo) return lo;
    if (!hi_open && x > hi) return hi;
    return x;
  }

  std::string describe() const {
    return (lo_open ? "(" : "[") + std::to_string(lo) + ", " +
           std::to_string(hi) + (hi_open ? ")" : "]");
  }
};

/// Validate a finite non-degenerate window m < M, as required by every
/// chord/converse construction.
inline void require_window(double m, double M, const char* where) {
  if (!std::isfinite(m) || !std::isfinite(M) || !(m < M))
    raise(ErrorKind::DegenerateInterval,
          std::string(where) + ": need finite m < M, got m=" +
              std::to_string(m) + " M=" + std::to_string(M));
}

}  // namespace opineq
