#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "opineq/hermitian.hpp"

namespace opineq {

/// A unitarily invariant norm, selected by kind + parameter, with a
/// normalization convention:
///   gauge - the symmetric gauge value itself, so every rank-one projection
///           has norm 1 (operator, Ky Fan, Schatten-p, trace, Frobenius all
///           qualify);
///   unit  - rescaled so the identity has norm 1, the convention some of
///           the norm bounds require.
struct NormSpec {
  enum class Kind { op, trace, frobenius, ky_fan, schatten };
  enum class Normalization { gauge, unit };

  Kind kind = Kind::op;
  int k = 1;        // Ky Fan order
  double p = 2.0;   // Schatten exponent
  Normalization normalization = Normalization::gauge;

  static NormSpec operator_norm() { return NormSpec{}; }
  static NormSpec trace_norm() { return NormSpec{Kind::trace, 1, 2.0, Normalization::gauge}; }
  static NormSpec frobenius() { return NormSpec{Kind::frobenius, 1, 2.0, Normalization::gauge}; }
  static NormSpec ky_fan(int k) { return NormSpec{Kind::ky_fan, k, 2.0, Normalization::gauge}; }
  static NormSpec schatten(double p) { return NormSpec{Kind::schatten, 1, p, Normalization::gauge}; }

  NormSpec unit_normalized() const {
    NormSpec out = *this;
    out.normalization = Normalization::unit;
    return out;
  }

  bool is_gauge() const { return normalization == Normalization::gauge; }

  /// Raises InvalidNormParameter for k < 1 or p < 1.
  void validate() const;

  std::string name() const;

  /// Value on the n-dimensional identity under this spec's normalization.
  double on_identity(std::size_t n) const;
};

/// Norm of a Hermitian matrix (singular values = |eigenvalues|).
double norm(const HermitianMatrix& a, const NormSpec& spec);

/// Norm of a general matrix via the singular values sqrt(eig(A* A)).
double norm(const ComplexMatrix& a, const NormSpec& spec);

/// Shared kernel: norm from an (unsorted) list of singular values of an
/// n-dimensional operator.
double norm_from_singular_values(std::vector<double> sigma, std::size_t n,
                                 const NormSpec& spec);

}  // namespace opineq
