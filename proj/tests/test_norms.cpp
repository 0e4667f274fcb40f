#include <doctest.h>

#include <cmath>
#include <vector>

#include "opineq/generators.hpp"
#include "opineq/norms.hpp"

using namespace opineq;

TEST_CASE("norm values on diag(3, -1)") {
  const HermitianMatrix d = HermitianMatrix::diagonal({3.0, -1.0});
  // Singular values {3, 1}.
  CHECK(norm(d, NormSpec::operator_norm()) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(norm(d, NormSpec::trace_norm()) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(norm(d, NormSpec::frobenius()) ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
  CHECK(norm(d, NormSpec::ky_fan(1)) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(norm(d, NormSpec::ky_fan(2)) == doctest::Approx(4.0).epsilon(1e-14));
  // Ky Fan order beyond the dimension saturates at the trace norm.
  CHECK(norm(d, NormSpec::ky_fan(7)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(norm(d, NormSpec::schatten(1.0)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(norm(d, NormSpec::schatten(4.0)) ==
        doctest::Approx(std::pow(82.0, 0.25)).epsilon(1e-14));

  // Unit normalization divides by the value on the identity.
  CHECK(norm(d, NormSpec::trace_norm().unit_normalized()) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(norm(d, NormSpec::operator_norm().unit_normalized()) ==
        doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("norm of the identity under both normalizations") {
  CHECK(NormSpec::operator_norm().on_identity(3) == 1.0);
  CHECK(NormSpec::trace_norm().on_identity(3) == 3.0);
  CHECK(NormSpec::frobenius().on_identity(3) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(NormSpec::ky_fan(2).on_identity(3) == 2.0);
  CHECK(NormSpec::ky_fan(5).on_identity(3) == 3.0);
  CHECK(NormSpec::schatten(3.0).on_identity(3) ==
        doctest::Approx(std::pow(3.0, 1.0 / 3.0)).epsilon(1e-15));
  for (const NormSpec& s :
       {NormSpec::operator_norm(), NormSpec::trace_norm(), NormSpec::ky_fan(2),
        NormSpec::schatten(3.0)})
    CHECK(s.unit_normalized().on_identity(4) == 1.0);

  // Cross-check against the actual norm of the identity matrix.
  const HermitianMatrix eye = HermitianMatrix::identity(3);
  CHECK(norm(eye, NormSpec::ky_fan(2)) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(norm(eye, NormSpec::schatten(3.0)) ==
        doctest::Approx(std::pow(3.0, 1.0 / 3.0)).epsilon(1e-13));

  CHECK_THROWS_AS(NormSpec::operator_norm().on_identity(0), Error);
}

TEST_CASE("gauge normalization dominates the matrix: A <= ||A|| 1") {
  SplitMix64 rng(7);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rep % 3);
    const HermitianMatrix a = random_hermitian(dim, -2.0, 4.0, rng.next());
    for (const NormSpec& s :
         {NormSpec::operator_norm(), NormSpec::trace_norm(),
          NormSpec::frobenius(), NormSpec::ky_fan(2), NormSpec::schatten(3.0)}) {
      const double v = norm(a, s);
      CHECK(max_eigenvalue(a) <= v + 1e-10);
    }
  }
}

TEST_CASE("norm axioms on random pairs") {
  SplitMix64 rng(11);
  const std::vector<NormSpec> specs = {
      NormSpec::operator_norm(), NormSpec::trace_norm(), NormSpec::frobenius(),
      NormSpec::ky_fan(2), NormSpec::schatten(3.0),
      NormSpec::trace_norm().unit_normalized()};
  for (int rep = 0; rep < 5; ++rep) {
    const HermitianMatrix a = random_hermitian(3, -2.0, 2.0, rng.next());
    const HermitianMatrix b = random_hermitian(3, -1.0, 3.0, rng.next());
    for (const NormSpec& s : specs) {
      const double na = norm(a, s);
      const double nb = norm(b, s);
      CHECK(na >= 0.0);
      CHECK(norm(a + b, s) <= na + nb + 1e-10);               // triangle
      CHECK(norm(a.scaled(-2.5), s) ==
            doctest::Approx(2.5 * na).epsilon(1e-10));        // homogeneity
    }
  }
}

TEST_CASE("unitary invariance") {
  SplitMix64 rng(13);
  for (int rep = 0; rep < 4; ++rep) {
    const HermitianMatrix a = random_hermitian(4, -3.0, 3.0, rng.next());
    const ComplexMatrix u = random_unitary(4, rng);
    const HermitianMatrix rotated = congruence(u, a);
    for (const NormSpec& s :
         {NormSpec::operator_norm(), NormSpec::trace_norm(),
          NormSpec::ky_fan(3), NormSpec::schatten(2.5)}) {
      CHECK(norm(rotated, s) == doctest::Approx(norm(a, s)).epsilon(1e-10));
    }
  }
}

TEST_CASE("invalid norm parameters") {
  try {
    norm(HermitianMatrix::identity(2), NormSpec::ky_fan(0));
    FAIL("ky_fan(0) accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidNormParameter);
  }
  try {
    norm(HermitianMatrix::identity(2), NormSpec::schatten(0.5));
    FAIL("schatten(0.5) accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidNormParameter);
  }
  CHECK_THROWS_AS(NormSpec::ky_fan(-1).validate(), Error);
  CHECK_THROWS_AS(norm(HermitianMatrix{}, NormSpec::operator_norm()), Error);
}

TEST_CASE("general (non-Hermitian) matrices go through singular values") {
  // Nilpotent [[0,1],[0,0]]: singular values {1, 0}.
  ComplexMatrix n(2, 2);
  n(0, 1) = 1.0;
  CHECK(norm(n, NormSpec::operator_norm()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(n, NormSpec::trace_norm()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(n, NormSpec::frobenius()) == doctest::Approx(1.0).epsilon(1e-12));

  // Row vector [1, 1]: the only singular value is sqrt(2).
  ComplexMatrix row(1, 2);
  row(0, 0) = 1.0;
  row(0, 1) = 1.0;
  CHECK(norm(row, NormSpec::trace_norm()) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(norm(row, NormSpec::operator_norm()) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(norm(ComplexMatrix{}, NormSpec::operator_norm()), Error);
}

TEST_CASE("norm names are stable identifiers") {
  CHECK(NormSpec::operator_norm().name() == "operator");
  CHECK(NormSpec::trace_norm().name() == "trace");
  CHECK(NormSpec::frobenius().name() == "frobenius");
  CHECK(NormSpec::ky_fan(2).name() == "ky_fan(2)");
  CHECK(NormSpec::trace_norm().unit_normalized().name() ==
        "trace, unit-normalized");
  CHECK(NormSpec::operator_norm().is_gauge());
  CHECK_FALSE(NormSpec::operator_norm().unit_normalized().is_gauge());
}
