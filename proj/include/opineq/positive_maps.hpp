#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "opineq/hermitian.hpp"
#include "opineq/interval.hpp"

namespace opineq {

/// Completely positive map in Kraus form, X -> sum_k K_k X K_k*, with each
/// K_k an out_dim x in_dim block. Unitality of a weighted family means the
/// weighted images of the identity sum to the identity on the output side.
class KrausMap {
 public:
  KrausMap(std::size_t in_dim, std::size_t out_dim,
           std::vector<ComplexMatrix> ops);

  static KrausMap identity_map(std::size_t dim);

  /// X -> V* X V for an isometry-like column frame V (in_dim x out_dim);
  /// the single Kraus block is V*.
  static KrausMap compression(const ComplexMatrix& frame);

  /// Pinching onto the diagonal: Kraus blocks are the diagonal rank-one
  /// projections e_j e_j*.
  static KrausMap pinching(std::size_t dim);

  /// A -> [ <A x, x> ] as a 1x1 output; the Kraus block is the row x*.
  static KrausMap vector_state(const std::vector<Complex>& x);

  std::size_t in_dim() const { return in_dim_; }
  std::size_t out_dim() const { return out_dim_; }
  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }

  HermitianMatrix apply(const HermitianMatrix& x) const;

  /// Linear action on an arbitrary matrix (used by linearity tests).
  ComplexMatrix apply_raw(const ComplexMatrix& x) const;

  /// Image of the input-side identity.
  HermitianMatrix image_of_identity() const;

  /// Replace every block K by S K (the left congruence used when
  /// renormalizing a family to unitality).
  KrausMap left_scaled(const ComplexMatrix& s) const;

 private:
  std::size_t in_dim_ = 0;
  std::size_t out_dim_ = 0;
  std::vector<ComplexMatrix> ops_;
};

HermitianMatrix apply_map(const KrausMap& phi, const HermitianMatrix& x);

/// One atom of a discrete field: weight w_i, map phi_i and the Hermitian
/// datum x_i it acts on. Input dimensions may vary per point; the output
/// dimension is shared.
struct FieldPoint {
  double weight = 0.0;
  KrausMap map;
  HermitianMatrix datum;
};

/// Weighted finite field of positive maps with attached operator data and
/// an optional spectral window [m, M] that every datum is supposed to obey.
class PositiveMapField {
 public:
  explicit PositiveMapField(std::vector<FieldPoint> points,
                            std::optional<Interval> interval = {});

  const std::vector<FieldPoint>& points() const { return points_; }
  std::size_t out_dim() const { return out_dim_; }
  const std::optional<Interval>& interval() const { return interval_; }

  PositiveMapField with_interval(Interval window) const;
  PositiveMapField with_data(std::vector<HermitianMatrix> data) const;

  /// sum_i w_i phi_i(1).
  HermitianMatrix unitality_image() const;

  /// Frobenius distance of the unitality image from the identity.
  double unitality_residual() const;

  /// Raises NotUnital when the residual exceeds tol.
  void require_unital(double tol = kUnitalityTol) const;

  /// Interval stated on the field, validated against the data spectra
  /// (raises SpectrumOutOfRange, or PreconditionViolated when no interval
  /// was attached).
  Interval checked_interval() const;

  /// Smallest and largest eigenvalue over all data.
  std::pair<double, double> spectral_hull() const;

 private:
  std::vector<FieldPoint> points_;
  std::size_t out_dim_ = 0;
  std::optional<Interval> interval_;
};

/// sum_i w_i phi_i(x_i).
HermitianMatrix integrate_field(const PositiveMapField& field);

/// sum_i w_i phi_i(f(x_i)), with f's domain enforced on every datum.
HermitianMatrix integrate_field(const PositiveMapField& field,
                                const ScalarFunctionSpec& f);

/// sum_i w_i phi_i(g(x_i)) for a raw callable; no domain checks.
HermitianMatrix integrate_field_pointwise(
    const PositiveMapField& field, const std::function<double(double)>& g);

/// Congruence-rescale every map by S^{-1/2}, S = sum w_i phi_i(1), making
/// the family exactly unital; raises SingularNormalizer when S is not
/// positive definite.
PositiveMapField normalize_to_unital(const PositiveMapField& field);

/// One atom of a vector-state field: weight, operator, vector.
struct VectorFieldPoint {
  double weight = 0.0;
  HermitianMatrix op;
  std::vector<Complex> vec;
};

/// Finite family (w_i, A_i, x_i) whose scalar field is
/// A -> sum w_i <A_i x_i, x_i>; normalized when sum w_i ||x_i||^2 = 1.
class VectorField {
 public:
  explicit VectorField(std::vector<VectorFieldPoint> points,
                       std::optional<Interval> interval = {});

  const std::vector<VectorFieldPoint>& points() const { return points_; }
  const std::optional<Interval>& interval() const { return interval_; }

  /// sum w_i ||x_i||^2; 1 means the induced map field is unital.
  double mass() const;

  void require_normalized(double tol = 1e-10) const;

  Interval checked_interval() const;

 private:
  std::vector<VectorFieldPoint> points_;
  std::optional<Interval> interval_;
};

/// Reinterpret the vector field as a field of 1-dimensional positive maps
/// A -> <A x, x>; requires a normalized field so the result is unital.
PositiveMapField vector_field_to_map_field(const VectorField& vf);

}  // namespace opineq
