#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "wbell/tolerances.hpp"

// Minimal dense complex linear algebra for dimensions up to 8. Everything a
// three-qubit Bell analysis needs: tensor products, expectation values and a
// small Hermitian eigensolver. All functions are pure; concurrent use is safe.

namespace wbell::qmath {

using Complex = std::complex<double>;

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : entries_(dim) {}
  ComplexVector(std::initializer_list<Complex> entries) : entries_(entries) {}

  std::size_t dim() const { return entries_.size(); }
  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  double norm() const;
  /// Inner product <this|other>, conjugate-linear in *this.
  Complex inner(const ComplexVector& other) const;

  const std::vector<Complex>& entries() const { return entries_; }

 private:
  std::vector<Complex> entries_;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  Complex trace() const;
  ComplexMatrix adjoint() const;
  bool is_hermitian(double tolerance = tol::kStructural) const;

  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix scaled(Complex factor) const;

  ComplexVector apply(const ComplexVector& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// Tensor product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// <psi|O|psi> for a Hermitian O. Throws on dimension mismatch, non-Hermitian
/// input, or an imaginary residue above tol::kImagResidue.
double expectation(const ComplexVector& psi, const ComplexMatrix& op);

/// tr(rho * O); same checks as the pure overload.
double expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

/// All eigenvalues of a Hermitian matrix (dim <= 8), ascending. Cyclic Jacobi
/// rotations iterated until the off-diagonal norm falls below
/// tol::kOffDiagonal; throws if the sweep cap is exceeded.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& op);

}  // namespace wbell::qmath
