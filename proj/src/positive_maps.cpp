#include "opineq/positive_maps.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace opineq {

KrausMap::KrausMap(std::size_t in_dim, std::size_t out_dim,
                   std::vector<ComplexMatrix> ops)
    : in_dim_(in_dim), out_dim_(out_dim), ops_(std::move(ops)) {
  if (in_dim_ == 0 || out_dim_ == 0)
    raise(ErrorKind::InvalidParameter, "Kraus map with empty input or output");
  if (ops_.empty())
    raise(ErrorKind::InvalidParameter, "Kraus map needs at least one block");
  for (const ComplexMatrix& k : ops_) {
    if (k.rows() != out_dim_ || k.cols() != in_dim_)
      raise(ErrorKind::DimMismatch,
            "Kraus block is " + std::to_string(k.rows()) + "x" +
                std::to_string(k.cols()) + ", expected " +
                std::to_string(out_dim_) + "x" + std::to_string(in_dim_));
  }
}

KrausMap KrausMap::identity_map(std::size_t dim) {
  return KrausMap(dim, dim, {ComplexMatrix::identity(dim)});
}

KrausMap KrausMap::compression(const ComplexMatrix& frame) {
  if (frame.rows() == 0 || frame.cols() == 0)
    raise(ErrorKind::InvalidParameter, "compression with empty frame");
  if (frame.cols() > frame.rows())
    raise(ErrorKind::InvalidParameter,
          "compression frame must have at most as many columns as rows");
  return KrausMap(frame.rows(), frame.cols(), {frame.adjoint()});
}

KrausMap KrausMap::pinching(std::size_t dim) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    ComplexMatrix p(dim, dim);
    p(j, j) = Complex(1.0, 0.0);
    blocks.push_back(std::move(p));
  }
  return KrausMap(dim, dim, std::move(blocks));
}

KrausMap KrausMap::vector_state(const std::vector<Complex>& x) {
  if (x.empty())
    raise(ErrorKind::InvalidParameter, "vector state with empty vector");
  ComplexMatrix row(1, x.size());
  for (std::size_t j = 0; j < x.size(); ++j) row(0, j) = std::conj(x[j]);
  return KrausMap(x.size(), 1, {row});
}

HermitianMatrix KrausMap::apply(const HermitianMatrix& x) const {
  if (x.dim() != in_dim_)
    raise(ErrorKind::DimMismatch,
          "map expects " + std::to_string(in_dim_) + "-dimensional input, got " +
              std::to_string(x.dim()));
  ComplexMatrix acc(out_dim_, out_dim_);
  for (const ComplexMatrix& k : ops_) acc = acc + k * x.matrix() * k.adjoint();
  return certified_hermitian(std::move(acc));
}

ComplexMatrix KrausMap::apply_raw(const ComplexMatrix& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_)
    raise(ErrorKind::DimMismatch, "raw map input has wrong shape");
  ComplexMatrix acc(out_dim_, out_dim_);
  for (const ComplexMatrix& k : ops_) acc = acc + k * x * k.adjoint();
  return acc;
}

HermitianMatrix KrausMap::image_of_identity() const {
  return apply(HermitianMatrix::identity(in_dim_));
}

KrausMap KrausMap::left_scaled(const ComplexMatrix& s) const {
  if (s.rows() != out_dim_ || s.cols() != out_dim_)
    raise(ErrorKind::DimMismatch, "left scaling has wrong shape");
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(ops_.size());
  for (const ComplexMatrix& k : ops_) blocks.push_back(s * k);
  return KrausMap(in_dim_, out_dim_, std::move(blocks));
}

HermitianMatrix apply_map(const KrausMap& phi, const HermitianMatrix& x) {
  return phi.apply(x);
}

PositiveMapField::PositiveMapField(std::vector<FieldPoint> points,
                                   std::optional<Interval> interval)
    : points_(std::move(points)), interval_(interval) {
  if (points_.empty())
    raise(ErrorKind::InvalidParameter, "field needs at least one point");
  out_dim_ = points_.front().map.out_dim();
  for (const FieldPoint& pt : points_) {
    if (!(pt.weight >= 0.0) || !std::isfinite(pt.weight))
      raise(ErrorKind::InvalidParameter,
            "field weights must be finite and nonnegative, got " +
                std::to_string(pt.weight));
    if (pt.map.out_dim() != out_dim_)
      raise(ErrorKind::DimMismatch,
            "all maps must share the output dimension " +
                std::to_string(out_dim_));
    if (pt.datum.dim() != pt.map.in_dim())
      raise(ErrorKind::DimMismatch,
            "datum is " + std::to_string(pt.datum.dim()) +
                "-dimensional but its map expects " +
                std::to_string(pt.map.in_dim()));
  }
  if (interval_ && interval_->degenerate())
    raise(ErrorKind::DegenerateInterval,
          "field interval " + interval_->describe() + " is degenerate");
}

PositiveMapField PositiveMapField::with_interval(Interval window) const {
  PositiveMapField out = *this;
  if (window.degenerate())
    raise(ErrorKind::DegenerateInterval,
          "field interval " + window.describe() + " is degenerate");
  out.interval_ = window;
  return out;
}

PositiveMapField PositiveMapField::with_data(
    std::vector<HermitianMatrix> data) const {
  if (data.size() != points_.size())
    raise(ErrorKind::DimMismatch,
          "expected " + std::to_string(points_.size()) + " data, got " +
              std::to_string(data.size()));
  std::vector<FieldPoint> pts = points_;
  for (std::size_t i = 0; i < pts.size(); ++i)
    pts[i].datum = std::move(data[i]);
  return PositiveMapField(std::move(pts), interval_);
}

HermitianMatrix PositiveMapField::unitality_image() const {
  HermitianMatrix acc = HermitianMatrix::zero(out_dim_);
  for (const FieldPoint& pt : points_)
    acc = acc + pt.map.image_of_identity().scaled(pt.weight);
  return acc;
}

double PositiveMapField::unitality_residual() const {
  return (unitality_image() - HermitianMatrix::identity(out_dim_))
      .frobenius_norm();
}

void PositiveMapField::require_unital(double tol) const {
  const double res = unitality_residual();
  if (res > tol)
    raise(ErrorKind::NotUnital,
          "unitality residual " + std::to_string(res) + " exceeds " +
              std::to_string(tol) +
              " (renormalize the family or fix the weights)");
}

Interval PositiveMapField::checked_interval() const {
  if (!interval_)
    raise(ErrorKind::PreconditionViolated,
          "this operation needs a spectral window attached to the field");
  const auto [lo, hi] = spectral_hull();
  if (!interval_->contains(lo, endpoint_slack(lo)) ||
      !interval_->contains(hi, endpoint_slack(hi)))
    raise(ErrorKind::SpectrumOutOfRange,
          "data spectra span [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "], outside the stated window " +
              interval_->describe());
  return *interval_;
}

std::pair<double, double> PositiveMapField::spectral_hull() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const FieldPoint& pt : points_) {
    const auto& eigs = eig_hermitian(pt.datum).eigenvalues;
    lo = std::min(lo, eigs.front());
    hi = std::max(hi, eigs.back());
  }
  return {lo, hi};
}

HermitianMatrix integrate_field(const PositiveMapField& field) {
  HermitianMatrix acc = HermitianMatrix::zero(field.out_dim());
  for (const FieldPoint& pt : field.points())
    acc = acc + pt.map.apply(pt.datum).scaled(pt.weight);
  return acc;
}

HermitianMatrix integrate_field(const PositiveMapField& field,
                                const ScalarFunctionSpec& f) {
  HermitianMatrix acc = HermitianMatrix::zero(field.out_dim());
  for (const FieldPoint& pt : field.points())
    acc = acc + pt.map.apply(apply_function(f, pt.datum)).scaled(pt.weight);
  return acc;
}

HermitianMatrix integrate_field_pointwise(
    const PositiveMapField& field, const std::function<double(double)>& g) {
  HermitianMatrix acc = HermitianMatrix::zero(field.out_dim());
  for (const FieldPoint& pt : field.points())
    acc = acc + pt.map.apply(apply_pointwise(g, pt.datum)).scaled(pt.weight);
  return acc;
}

PositiveMapField normalize_to_unital(const PositiveMapField& field) {
  const HermitianMatrix s = field.unitality_image();
  SpectralDecomposition sd = eig_hermitian(s);
  const double floor = 1e-10 * std::max(1.0, std::abs(sd.eigenvalues.back()));
  if (sd.eigenvalues.front() <= floor)
    raise(ErrorKind::SingularNormalizer,
          "the unitality image has min eigenvalue " +
              std::to_string(sd.eigenvalues.front()) +
              "; the family cannot be renormalized");
  const HermitianMatrix inv_sqrt =
      sd.apply([](double x) { return 1.0 / std::sqrt(x); });

  std::vector<FieldPoint> pts;
  pts.reserve(field.points().size());
  for (const FieldPoint& pt : field.points())
    pts.push_back(FieldPoint{pt.weight, pt.map.left_scaled(inv_sqrt.matrix()),
                             pt.datum});
  return PositiveMapField(std::move(pts), field.interval());
}

VectorField::VectorField(std::vector<VectorFieldPoint> points,
                         std::optional<Interval> interval)
    : points_(std::move(points)), interval_(interval) {
  if (points_.empty())
    raise(ErrorKind::InvalidParameter, "vector field needs at least one point");
  for (const VectorFieldPoint& pt : points_) {
    if (!(pt.weight >= 0.0) || !std::isfinite(pt.weight))
      raise(ErrorKind::InvalidParameter,
            "vector field weights must be finite and nonnegative");
    if (pt.vec.empty() || pt.vec.size() != pt.op.dim())
      raise(ErrorKind::DimMismatch,
            "vector length " + std::to_string(pt.vec.size()) +
                " does not match operator dimension " +
                std::to_string(pt.op.dim()));
  }
  if (interval_ && interval_->degenerate())
    raise(ErrorKind::DegenerateInterval,
          "vector field interval is degenerate");
}

double VectorField::mass() const {
  double total = 0.0;
  for (const VectorFieldPoint& pt : points_) {
    double nrm2 = 0.0;
    for (const Complex& z : pt.vec) nrm2 += std::norm(z);
    total += pt.weight * nrm2;
  }
  return total;
}

void VectorField::require_normalized(double tol) const {
  const double m = mass();
  if (std::abs(m - 1.0) > tol)
    raise(ErrorKind::NotNormalized,
          "sum of w_i ||x_i||^2 is " + std::to_string(m) + ", expected 1");
}

Interval VectorField::checked_interval() const {
  if (!interval_)
    raise(ErrorKind::PreconditionViolated,
          "this operation needs a spectral window attached to the field");
  for (const VectorFieldPoint& pt : points_) {
    const auto& eigs = eig_hermitian(pt.op).eigenvalues;
    if (!interval_->contains(eigs.front(), endpoint_slack(eigs.front())) ||
        !interval_->contains(eigs.back(), endpoint_slack(eigs.back())))
      raise(ErrorKind::SpectrumOutOfRange,
            "operator spectrum [" + std::to_string(eigs.front()) + ", " +
                std::to_string(eigs.back()) + "] leaves the stated window " +
                interval_->describe());
  }
  return *interval_;
}

PositiveMapField vector_field_to_map_field(const VectorField& vf) {
  vf.require_normalized();
  std::vector<FieldPoint> pts;
  pts.reserve(vf.points().size());
  for (const VectorFieldPoint& pt : vf.points())
    pts.push_back(
        FieldPoint{pt.weight, KrausMap::vector_state(pt.vec), pt.op});
  return PositiveMapField(std::move(pts), vf.interval());
}

}  // namespace opineq
