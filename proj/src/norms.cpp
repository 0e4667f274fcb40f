#include "opineq/norms.hpp"

#include <algorithm>
#include <cmath>

namespace opineq {

void NormSpec::validate() const {
  if (kind == Kind::ky_fan && k < 1)
    raise(ErrorKind::InvalidNormParameter,
          "Ky Fan order must be >= 1, got " + std::to_string(k));
  if (kind == Kind::schatten && !(p >= 1.0))
    raise(ErrorKind::InvalidNormParameter,
          "Schatten exponent must be >= 1, got " + std::to_string(p));
}

std::string NormSpec::name() const {
  std::string base;
  switch (kind) {
    case Kind::op: base = "operator"; break;
    case Kind::trace: base = "trace"; break;
    case Kind::frobenius: base = "frobenius"; break;
    case Kind::ky_fan: base = "ky_fan(" + std::to_string(k) + ")"; break;
    case Kind::schatten: base = "schatten(" + std::to_string(p) + ")"; break;
  }
  if (!is_gauge()) base += ", unit-normalized";
  return base;
}

double NormSpec::on_identity(std::size_t n) const {
  validate();
  if (n == 0) raise(ErrorKind::InvalidParameter, "norm on empty identity");
  if (normalization == Normalization::unit) return 1.0;
  const double nn = static_cast<double>(n);
  switch (kind) {
    case Kind::op: return 1.0;
    case Kind::trace: return nn;
    case Kind::frobenius: return std::sqrt(nn);
    case Kind::ky_fan: return static_cast<double>(std::min<std::size_t>(k, n));
    case Kind::schatten: return std::pow(nn, 1.0 / p);
  }
  return 1.0;
}

double norm_from_singular_values(std::vector<double> sigma, std::size_t n,
                                 const NormSpec& spec) {
  spec.validate();
  if (sigma.empty() || n == 0)
    raise(ErrorKind::InvalidParameter, "norm of an empty operator");
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());

  double value = 0.0;
  switch (spec.kind) {
    case NormSpec::Kind::op:
      value = sigma.front();
      break;
    case NormSpec::Kind::trace:
      for (double s : sigma) value += s;
      break;
    case NormSpec::Kind::frobenius: {
      double sum = 0.0;
      for (double s : sigma) sum += s * s;
      value = std::sqrt(sum);
      break;
    }
    case NormSpec::Kind::ky_fan: {
      const std::size_t take = std::min<std::size_t>(spec.k, sigma.size());
      for (std::size_t i = 0; i < take; ++i) value += sigma[i];
      break;
    }
    case NormSpec::Kind::schatten: {
      double sum = 0.0;
      for (double s : sigma) sum += std::pow(s, spec.p);
      value = std::pow(sum, 1.0 / spec.p);
      break;
    }
  }
  if (spec.normalization == NormSpec::Normalization::unit) {
    NormSpec gauge = spec;
    gauge.normalization = NormSpec::Normalization::gauge;
    value /= gauge.on_identity(n);
  }
  return value;
}

double norm(const HermitianMatrix& a, const NormSpec& spec) {
  std::vector<double> sigma = eig_hermitian(a).eigenvalues;
  for (double& s : sigma) s = std::abs(s);
  return norm_from_singular_values(std::move(sigma), a.dim(), spec);
}

double norm(const ComplexMatrix& a, const NormSpec& spec) {
  if (a.rows() == 0 || a.cols() == 0)
    raise(ErrorKind::InvalidParameter, "norm of an empty matrix");
  // Singular values via the Gram matrix; adequate at the conditioning this
  // engine targets (the Hermitian overload avoids the squaring entirely).
  const ComplexMatrix gram = a.adjoint() * a;
  std::vector<double> sigma = eig_hermitian(certified_hermitian(gram)).eigenvalues;
  for (double& s : sigma) s = std::sqrt(std::max(0.0, s));
  return norm_from_singular_values(std::move(sigma), std::max(a.rows(), a.cols()),
                                   spec);
}

}  // namespace opineq
