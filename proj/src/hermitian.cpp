#include "opineq/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace opineq {

namespace {

constexpr std::size_t kMaxDim = 64;

double offdiag_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

/// One two-sided Jacobi rotation on the (p, q) plane of M (Hermitian,
/// updated in place) with the same rotation accumulated into V.
///
/// With b = M(p,q) = |b| e^{i beta} and theta = (M(q,q) - M(p,p)) / (2|b|),
/// the rotation U = [[c, -conj(s)], [s, c]] with s = t c e^{-i beta},
/// c = 1/sqrt(1 + t^2) annihilates the pivot when t solves
/// t^2 - 2 theta t - 1 = 0; the smaller-magnitude root
/// t = -sign(theta) / (|theta| + sqrt(theta^2 + 1)) keeps the rotation
/// angle below pi/4 for numerical stability.
void jacobi_rotate(ComplexMatrix& m, ComplexMatrix& v, std::size_t p,
                   std::size_t q) {
  const Complex b = m(p, q);
  const double ab = std::abs(b);
  if (ab == 0.0) return;

  const double app = std::real(m(p, p));
  const double aqq = std::real(m(q, q));
  const double theta = (aqq - app) / (2.0 * ab);
  const double root = std::sqrt(theta * theta + 1.0);
  const double t =
      theta >= 0.0 ? -1.0 / (theta + root) : 1.0 / (-theta + root);
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const Complex phase = b / ab;
  const Complex s = t * c * std::conj(phase);
  const Complex sbar = std::conj(s);

  const std::size_t n = m.rows();
  // Columns: A <- A U.
  for (std::size_t i = 0; i < n; ++i) {
    const Complex mip = m(i, p);
    const Complex miq = m(i, q);
    m(i, p) = c * mip + s * miq;
    m(i, q) = -sbar * mip + c * miq;
  }
  // Rows: A <- U* A.
  for (std::size_t j = 0; j < n; ++j) {
    const Complex mpj = m(p, j);
    const Complex mqj = m(q, j);
    m(p, j) = c * mpj + sbar * mqj;
    m(q, j) = -s * mpj + c * mqj;
  }
  // The pivot is zero by construction; pin it (and the diagonal reality)
  // exactly so rounding noise cannot accumulate across sweeps.
  m(p, q) = Complex(0.0, 0.0);
  m(q, p) = Complex(0.0, 0.0);
  m(p, p) = Complex(std::real(m(p, p)), 0.0);
  m(q, q) = Complex(std::real(m(q, q)), 0.0);

  // Accumulate the eigenvector frame: V <- V U.
  for (std::size_t i = 0; i < v.rows(); ++i) {
    const Complex vip = v(i, p);
    const Complex viq = v(i, q);
    v(i, p) = c * vip + s * viq;
    v(i, q) = -sbar * vip + c * viq;
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& raw) {
  if (!raw.square())
    raise(ErrorKind::NotHermitian,
          "matrix is " + std::to_string(raw.rows()) + "x" +
              std::to_string(raw.cols()) + ", not square");
  const double defect = raw.hermiticity_defect();
  if (defect > kHermitianRtol)
    raise(ErrorKind::NotHermitian,
          "hermiticity defect " + std::to_string(defect) + " exceeds " +
              std::to_string(kHermitianRtol));
  mat_ = hermitian_part(raw);
}

HermitianMatrix certified_hermitian(ComplexMatrix m) {
  return HermitianMatrix(hermitian_part(m),
                         HermitianMatrix::certified_tag{});
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    m(i, i) = Complex(entries[i], 0.0);
  return certified_hermitian(std::move(m));
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return certified_hermitian(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
  return certified_hermitian(ComplexMatrix(n, n));
}

HermitianMatrix HermitianMatrix::scalar_matrix(std::size_t n, double c) {
  return certified_hermitian(ComplexMatrix::identity(n).scaled(c));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  return certified_hermitian(mat_ + other.mat_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  return certified_hermitian(mat_ - other.mat_);
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  return certified_hermitian(mat_.scaled(Complex(factor, 0.0)));
}

HermitianMatrix HermitianMatrix::shifted(double c) const {
  ComplexMatrix m = mat_;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += Complex(c, 0.0);
  return certified_hermitian(std::move(m));
}

HermitianMatrix congruence(const ComplexMatrix& t, const HermitianMatrix& a) {
  if (t.rows() != a.dim())
    raise(ErrorKind::DimMismatch,
          "congruence: transform has " + std::to_string(t.rows()) +
              " rows, operand is " + std::to_string(a.dim()) + "-dimensional");
  return certified_hermitian(t.adjoint() * a.matrix() * t);
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = Complex(eigenvalues[i], 0.0);
  return frame * d * frame.adjoint();
}

HermitianMatrix SpectralDecomposition::apply(
    const std::function<double(double)>& f) const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    d(i, i) = Complex(f(eigenvalues[i]), 0.0);
  return certified_hermitian(frame * d * frame.adjoint());
}

ComplexMatrix SpectralDecomposition::eigenprojector(std::size_t j,
                                                    double cluster_tol) const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix proj(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(eigenvalues[k] - eigenvalues[j]) > cluster_tol) continue;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        proj(r, c) += frame(r, k) * std::conj(frame(c, k));
  }
  return proj;
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 0)
    raise(ErrorKind::InvalidParameter, "eigendecomposition of empty matrix");
  if (n > kMaxDim)
    raise(ErrorKind::InvalidParameter,
          "dimension " + std::to_string(n) + " exceeds the supported cap " +
              std::to_string(kMaxDim));

  ComplexMatrix m = a.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(m.frobenius_norm(), 1e-300);
  const double target = 1e-14 * scale;
  const int max_sweeps = 60;

  int sweep = 0;
  while (offdiag_norm(m) > target) {
    if (++sweep > max_sweeps)
      raise(ErrorKind::NoConvergence,
            "Jacobi iteration stalled after " + std::to_string(max_sweeps) +
                " sweeps (off-diagonal " + std::to_string(offdiag_norm(m)) +
                ", target " + std::to_string(target) + ")");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(m, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&m](std::size_t i, std::size_t j) {
    return std::real(m(i, i)) < std::real(m(j, j));
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.frame = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = std::real(m(order[j], order[j]));
    for (std::size_t i = 0; i < n; ++i) out.frame(i, j) = v(i, order[j]);
  }
  return out;
}

double min_eigenvalue(const HermitianMatrix& a) {
  return eig_hermitian(a).eigenvalues.front();
}

double max_eigenvalue(const HermitianMatrix& a) {
  return eig_hermitian(a).eigenvalues.back();
}

double operator_norm(const HermitianMatrix& a) {
  const auto& eigs = eig_hermitian(a).eigenvalues;
  return std::max(std::abs(eigs.front()), std::abs(eigs.back()));
}

HermitianMatrix apply_function(const ScalarFunctionSpec& f,
                               const HermitianMatrix& a) {
  SpectralDecomposition sd = eig_hermitian(a);
  for (double lambda : sd.eigenvalues) {
    if (!f.domain().contains(lambda, endpoint_slack(lambda)))
      raise(ErrorKind::SpectrumOutOfDomain,
            "eigenvalue " + std::to_string(lambda) + " of the operand lies " +
                "outside the domain " + f.domain().describe() + " of '" +
                f.name() + "'");
  }
  return sd.apply(
      [&f](double x) { return f.evaluate(f.domain().clamp(x)); });
}

HermitianMatrix apply_pointwise(const std::function<double(double)>& f,
                                const HermitianMatrix& a) {
  return eig_hermitian(a).apply(f);
}

HermitianMatrix matrix_power(const HermitianMatrix& a, double r) {
  if (!std::isfinite(r))
    raise(ErrorKind::InvalidParameter, "matrix power with non-finite exponent");
  const bool integral = (std::rint(r) == r);
  SpectralDecomposition sd = eig_hermitian(a);
  if (!(integral && r >= 0.0)) {
    const double floor = 1e-12 * std::max(1.0, std::abs(sd.eigenvalues.back()));
    if (sd.eigenvalues.front() <= floor)
      raise(ErrorKind::NotPositiveDefinite,
            "matrix power " + std::to_string(r) +
                " needs a positive definite operand; min eigenvalue is " +
                std::to_string(sd.eigenvalues.front()));
  }
  return sd.apply([r](double x) { return std::pow(x, r); });
}

ComparisonVerdict loewner_leq(const HermitianMatrix& a,
                              const HermitianMatrix& b,
                              const TolerancePolicy& policy) {
  if (a.dim() != b.dim())
    raise(ErrorKind::DimMismatch,
          "Loewner comparison of " + std::to_string(a.dim()) + "- and " +
              std::to_string(b.dim()) + "-dimensional matrices");
  const HermitianMatrix diff = b - a;
  const auto& diff_eigs = eig_hermitian(diff).eigenvalues;
  const double diff_norm =
      std::max(std::abs(diff_eigs.front()), std::abs(diff_eigs.back()));
  const double scale = std::max(diff_norm, operator_norm(b));
  return make_verdict(diff_eigs.front(), policy.tolerance(scale));
}

ComparisonVerdict loewner_leq_scaled(const HermitianMatrix& a,
                                     const HermitianMatrix& b, double scale,
                                     const TolerancePolicy& policy) {
  if (a.dim() != b.dim())
    raise(ErrorKind::DimMismatch,
          "Loewner comparison of " + std::to_string(a.dim()) + "- and " +
              std::to_string(b.dim()) + "-dimensional matrices");
  return make_verdict(min_eigenvalue(b - a), policy.tolerance(scale));
}

}  // namespace opineq
