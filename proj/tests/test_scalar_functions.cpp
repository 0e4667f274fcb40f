#include <doctest.h>

#include <cmath>
#include <vector>

#include "opineq/scalar_functions.hpp"

using namespace opineq;

namespace {

void check_flags(const ScalarFunctionSpec& f, bool convex, bool concave,
                 bool op_convex, bool op_concave, bool op_monotone,
                 bool increasing, bool nonneg) {
  INFO("function ", f.name());
  CHECK(f.flags().convex == convex);
  CHECK(f.flags().concave == concave);
  CHECK(f.flags().operator_convex == op_convex);
  CHECK(f.flags().operator_concave == op_concave);
  CHECK(f.flags().operator_monotone == op_monotone);
  CHECK(f.flags().increasing == increasing);
  CHECK(f.flags().nonneg == nonneg);
}

ScalarFunctionSpec power(double p) { return builtin("power", {{"p", p}}); }

/// Second difference f(x-h) - 2 f(x) + f(x+h), nonnegative for convex f.
double second_diff(const ScalarFunctionSpec& f, double x, double h) {
  return f.evaluate(x - h) - 2.0 * f.evaluate(x) + f.evaluate(x + h);
}

}  // namespace

TEST_CASE("power family flag table") {
  //                       cvx    ccv    opcvx  opccv  opmon  incr   nonneg
  check_flags(power(2.0),  true,  false, true,  false, false, true,  true);
  check_flags(power(3.0),  false, false, false, false, false, true,  false);
  check_flags(power(4.0),  true,  false, false, false, false, true,  true);
  check_flags(power(1.0),  true,  true,  true,  true,  true,  true,  false);
  check_flags(power(1.5),  true,  false, true,  false, false, true,  true);
  check_flags(power(0.5),  false, true,  false, true,  true,  true,  true);
  check_flags(power(-1.0), true,  false, true,  false, false, false, true);
  check_flags(power(0.0),  true,  true,  true,  true,  true,  true,  true);

  // Domains: integer p >= 0 keeps the whole line, fractional p >= 0 starts
  // at 0 closed, p < 0 starts at 0 open.
  CHECK(power(2.0).domain().contains(-5.0));
  CHECK(power(1.5).domain().lo == 0.0);
  CHECK_FALSE(power(1.5).domain().lo_open);
  CHECK_FALSE(power(1.5).domain().contains(-0.1));
  CHECK(power(-1.0).domain().lo == 0.0);
  CHECK(power(-1.0).domain().lo_open);
  // Open endpoints demand clearance once a positive slack is requested.
  CHECK_FALSE(power(-1.0).domain().contains(0.0, 1e-12));
  CHECK_FALSE(power(-1.0).domain().contains(-1e-9));

  CHECK(power(2.0).evaluate(-3.0) == 9.0);
  CHECK(power(0.0).evaluate(0.0) == 1.0);
  CHECK(power(-1.0).evaluate(4.0) == 0.25);
  CHECK(power(1.5).subdifferential(4.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(power(1.0).subdifferential(17.0) == 1.0);
  CHECK(power(0.0).subdifferential(17.0) == 0.0);
}

TEST_CASE("non-power builtins") {
  const ScalarFunctionSpec exp_f = builtin("exp");
  check_flags(exp_f, true, false, false, false, false, true, true);
  CHECK(exp_f.evaluate(0.0) == 1.0);
  CHECK(exp_f.domain().contains(-100.0));

  const ScalarFunctionSpec log_f = builtin("log");
  check_flags(log_f, false, true, false, true, true, true, false);
  CHECK(log_f.evaluate(std::exp(2.0)) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(log_f.domain().lo_open);

  const ScalarFunctionSpec tlogt = builtin("tlogt");
  check_flags(tlogt, true, false, true, false, false, false, false);
  CHECK(tlogt.evaluate(1.0) == 0.0);
  CHECK(tlogt.evaluate(std::exp(1.0)) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(tlogt.subdifferential(1.0) == doctest::Approx(1.0).epsilon(1e-15));

  const ScalarFunctionSpec abs_f = builtin("abs");
  check_flags(abs_f, true, false, false, false, false, false, true);
  CHECK(abs_f.evaluate(-2.5) == 2.5);
  // Canonical selection: sign with k(0) = 0, a valid point of [-1, 1].
  CHECK(abs_f.subdifferential(-3.0) == -1.0);
  CHECK(abs_f.subdifferential(0.0) == 0.0);
  CHECK(abs_f.subdifferential(3.0) == 1.0);

  const ScalarFunctionSpec sqrt_f = builtin("sqrt");
  check_flags(sqrt_f, false, true, false, true, true, true, true);
  CHECK(sqrt_f.name() == "sqrt");
  CHECK(sqrt_f.evaluate(9.0) == 3.0);
  CHECK(sqrt_f.subdifferential(4.0) == 0.25);

  const ScalarFunctionSpec id = builtin("identity");
  check_flags(id, true, true, true, true, true, true, false);
  CHECK(id.evaluate(-8.0) == -8.0);
  CHECK(id.subdifferential(5.0) == 1.0);

  const ScalarFunctionSpec aff = builtin("affine", {{"a", -2.0}, {"b", 1.0}});
  check_flags(aff, true, true, true, true, false, false, false);
  CHECK(aff.evaluate(2.0) == -3.0);
  CHECK(aff.subdifferential(99.0) == -2.0);
  // b defaults to 0.
  CHECK(builtin("affine", {{"a", 3.0}}).evaluate(2.0) == 6.0);
  // Constant nonnegative affine is flagged nonneg.
  CHECK(builtin("affine", {{"a", 0.0}, {"b", 2.0}}).flags().nonneg);
}

TEST_CASE("catalogue errors") {
  try {
    builtin("power");
    FAIL("missing exponent accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
  try {
    builtin("sinh");
    FAIL("unknown name accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownFunction);
  }
  CHECK_THROWS_AS(builtin("affine", {{"b", 1.0}}), Error);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(builtin("power", {{"p", inf}}), Error);
}

TEST_CASE("evaluation guardrails") {
  try {
    power(-1.0).evaluate(0.0);
    FAIL("1/0 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteValue);
  }
  try {
    evaluate_in_domain(builtin("log"), -1.0);
    FAIL("log(-1) accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainViolation);
  }
  // Slight overshoot of a closed endpoint is clamped onto it.
  CHECK(evaluate_in_domain(builtin("sqrt"), -1e-12) == 0.0);
  CHECK(evaluate_in_domain(power(2.0), 3.0) == 9.0);

  try {
    ScalarFunctionSpec().evaluate(1.0);
    FAIL("empty spec evaluated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("chords") {
  // t^2 through (1,1), (3,9): slope 4, intercept -3.
  const ChordCoefficients c = chord(power(2.0), 1.0, 3.0);
  CHECK(c.alpha == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(c.beta == doctest::Approx(-3.0).epsilon(1e-15));
  CHECK(c.at(2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(c.m == 1.0);
  CHECK(c.M == 3.0);

  // Chord of a convex function dominates it inside the window.
  for (double z = 1.0; z <= 3.0; z += 0.25)
    CHECK(c.at(z) >= z * z - 1e-12);

  try {
    chord(builtin("log"), -1.0, 2.0);
    FAIL("window outside the domain accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainViolation);
  }
  try {
    chord(power(2.0), 2.0, 2.0);
    FAIL("degenerate window accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInterval);
  }
}

TEST_CASE("subdifferential selections bracket finite differences") {
  // At smooth points the stored selection must match the symmetric
  // difference quotient.
  const double h = 1e-6;
  for (const ScalarFunctionSpec& f :
       {power(2.0), power(1.5), power(-1.0), builtin("exp"), builtin("log"),
        builtin("tlogt")}) {
    for (double x : {0.7, 1.3, 2.6}) {
      const double fd = (f.evaluate(x + h) - f.evaluate(x - h)) / (2.0 * h);
      CHECK(f.subdifferential(x) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
  // The abs kink: any k(0) in [-1, 1] is legal; the builtin picks 0.
  CHECK(builtin("abs").subdifferential(0.0) >= -1.0);
  CHECK(builtin("abs").subdifferential(0.0) <= 1.0);
}

TEST_CASE("declared convexity matches second differences") {
  const double h = 1e-3;
  for (const ScalarFunctionSpec& f :
       {power(2.0), power(1.5), power(-1.0), builtin("exp"), builtin("tlogt"),
        builtin("abs")}) {
    REQUIRE(f.flags().convex);
    for (double x = 0.4; x <= 3.0; x += 0.2)
      CHECK(second_diff(f, x, h) >= -1e-9);
  }
  for (const ScalarFunctionSpec& f : {builtin("sqrt"), builtin("log")}) {
    REQUIRE(f.flags().concave);
    for (double x = 0.4; x <= 3.0; x += 0.2)
      CHECK(second_diff(f, x, h) <= 1e-9);
  }
}

TEST_CASE("affine composition") {
  // g(t) = f(2t - 1) with f = t^2: g(1) = 1, g'(1) = 2 f'(1) = 4.
  const ScalarFunctionSpec g = compose_affine(power(2.0), 2.0, -1.0);
  CHECK(g.name() == "power@affine");
  CHECK(g.evaluate(1.0) == 1.0);
  CHECK(g.evaluate(2.0) == 9.0);
  CHECK(g.subdifferential(1.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(g.flags().convex);
  CHECK(g.flags().increasing);

  // Pullback of the domain: sqrt(2t - 1) lives on [0.5, inf).
  const ScalarFunctionSpec h = compose_affine(builtin("sqrt"), 2.0, -1.0);
  CHECK(h.domain().lo == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_FALSE(h.domain().lo_open);
  CHECK_FALSE(h.domain().contains(0.4));

  // Negative scale flips the domain and its endpoint openness, keeps
  // convexity and drops the monotone flags.
  const ScalarFunctionSpec r = compose_affine(builtin("log"), -1.0, 0.0);
  CHECK(r.domain().hi == 0.0);
  CHECK(r.domain().hi_open);
  CHECK(r.evaluate(-std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.flags().concave);
  CHECK_FALSE(r.flags().increasing);
  CHECK_FALSE(r.flags().operator_monotone);

  CHECK_THROWS_AS(compose_affine(power(2.0), 0.0, 1.0), Error);
}

TEST_CASE("selection and flag overrides") {
  // abs with the selection k(0) = 1 (the right-hand derivative).
  const ScalarFunctionSpec right =
      builtin("abs").with_subdifferential([](double x) {
        return x >= 0.0 ? 1.0 : -1.0;
      });
  CHECK(right.subdifferential(0.0) == 1.0);
  CHECK(right.evaluate(-2.0) == 2.0);  // evaluation untouched

  const ScalarFunctionSpec demoted = power(2.0).with_flags(FunctionFlags{});
  CHECK_FALSE(demoted.flags().convex);

  // subdiff_default exposes the stored selection for convex/concave f ...
  const auto k = subdiff_default(power(2.0));
  CHECK(k(3.0) == doctest::Approx(6.0).epsilon(1e-15));

  // ... and refuses a function that declares neither shape.
  FunctionFlags none;
  const ScalarFunctionSpec shapeless(
      "wiggle", {}, Interval::all(), none,
      [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); });
  try {
    subdiff_default(shapeless);
    FAIL("shapeless function accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotConvexOrConcave);
  }

  // A convex spec without any stored selection is rejected differently.
  FunctionFlags cvx;
  cvx.convex = true;
  const ScalarFunctionSpec bare("bare", {}, Interval::all(), cvx,
                                [](double x) { return x * x; }, {});
  CHECK_FALSE(bare.has_subdifferential());
  try {
    subdiff_default(bare);
    FAIL("missing selection accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
}
