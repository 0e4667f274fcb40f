#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "opineq/errors.hpp"

namespace opineq {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage. This is deliberately a small
/// value type: the engine targets dimensions well below 64, where naive
/// O(n^3) kernels are both fast enough and easy to audit.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(const ComplexMatrix& other) const;
  ComplexMatrix scaled(Complex factor) const;

  /// Conjugate transpose.
  ComplexMatrix adjoint() const;

  Complex trace() const;
  double frobenius_norm() const;
  double max_abs_entry() const;

  /// Largest |A - A*| entry relative to the matrix scale; zero for exact
  /// Hermitian input.
  double hermiticity_defect() const;

  /// Column j as a vector (handy for eigenvector extraction).
  std::vector<Complex> column(std::size_t j) const;

  const std::vector<Complex>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator*(Complex factor, const ComplexMatrix& m);

/// Exactly symmetrize a numerically-Hermitian product: (M + M*) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

}  // namespace opineq
