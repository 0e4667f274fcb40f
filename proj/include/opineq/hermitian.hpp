#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "opineq/complex_matrix.hpp"
#include "opineq/scalar_functions.hpp"
#include "opineq/tolerance.hpp"

namespace opineq {

/// Outcome of a Loewner-order comparison A <= B. The certificate is the
/// smallest eigenvalue of B - A; the comparison holds when it clears
/// -tolerance.
struct ComparisonVerdict {
  double min_eig_of_difference = 0.0;
  double tolerance = 0.0;
  bool holds = false;
};

inline ComparisonVerdict make_verdict(double min_eig, double tol) {
  return ComparisonVerdict{min_eig, tol, min_eig >= -tol};
}

/// Hermitian matrix certified at construction: the raw input must be
/// Hermitian up to kHermitianRtol (relative to its largest entry) and is
/// then exactly symmetrized, so all downstream arithmetic stays Hermitian
/// to the last bit.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Certify-and-symmetrize constructor; raises NotHermitian.
  explicit HermitianMatrix(const ComplexMatrix& raw);

  static HermitianMatrix diagonal(const std::vector<double>& entries);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zero(std::size_t n);
  static HermitianMatrix scalar_matrix(std::size_t n, double c);

  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }
  Complex operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  /// Real scaling (complex factors would leave the Hermitian cone).
  HermitianMatrix scaled(double factor) const;
  /// A + c * identity.
  HermitianMatrix shifted(double c) const;

  double trace_real() const { return std::real(mat_.trace()); }
  double frobenius_norm() const { return mat_.frobenius_norm(); }

 private:
  struct certified_tag {};
  HermitianMatrix(ComplexMatrix m, certified_tag) : mat_(std::move(m)) {}

  ComplexMatrix mat_;

  friend HermitianMatrix certified_hermitian(ComplexMatrix m);
};

/// Wrap a matrix that is Hermitian by construction (congruences, function
/// calculus output) after exact symmetrization; no tolerance check.
HermitianMatrix certified_hermitian(ComplexMatrix m);

/// T* A T, exactly symmetrized.
HermitianMatrix congruence(const ComplexMatrix& t, const HermitianMatrix& a);

/// Eigendecomposition A = U diag(lambda) U*, eigenvalues ascending.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix frame;  // unitary; column j pairs with eigenvalues[j]

  ComplexMatrix reconstruct() const;

  /// U diag(f(lambda)) U* without any domain checking.
  HermitianMatrix apply(const std::function<double(double)>& f) const;

  /// Orthogonal projection onto the eigenspace cluster containing
  /// eigenvalue index j (neighbours within `cluster_tol` are merged).
  ComplexMatrix eigenprojector(std::size_t j, double cluster_tol) const;
};

/// Cyclic complex Jacobi iteration; intended for dim <= 64. Raises
/// NoConvergence if the off-diagonal mass refuses to die (does not happen
/// for genuine Hermitian input) and InvalidParameter above the size cap.
SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);
double max_eigenvalue(const HermitianMatrix& a);
/// Spectral norm = max |eigenvalue|.
double operator_norm(const HermitianMatrix& a);

/// Functional calculus f(A) with domain enforcement: every eigenvalue must
/// lie in domain(f) up to endpoint_slack, and closed-endpoint overshoot is
/// clamped before evaluation. Raises SpectrumOutOfDomain.
HermitianMatrix apply_function(const ScalarFunctionSpec& f,
                               const HermitianMatrix& a);

/// Functional calculus without domain checks, for internal callers that
/// have already validated the spectrum.
HermitianMatrix apply_pointwise(const std::function<double(double)>& f,
                                const HermitianMatrix& a);

/// A^r. Negative and fractional exponents require a positive definite
/// matrix (NotPositiveDefinite); nonnegative integer exponents work for any
/// Hermitian input.
HermitianMatrix matrix_power(const HermitianMatrix& a, double r);

/// Loewner comparison a <= b with the default scale rule
/// max(||b - a||, ||b||) in operator norm.
ComparisonVerdict loewner_leq(const HermitianMatrix& a,
                              const HermitianMatrix& b,
                              const TolerancePolicy& policy = {});

/// Loewner comparison with a caller-chosen tolerance scale.
ComparisonVerdict loewner_leq_scaled(const HermitianMatrix& a,
                                     const HermitianMatrix& b, double scale,
                                     const TolerancePolicy& policy = {});

}  // namespace opineq
