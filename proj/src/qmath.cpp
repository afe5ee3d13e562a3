#include "wbell/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wbell::qmath {

double ComplexVector::norm() const {
  double sum = 0.0;
  for (const Complex& e : entries_) sum += std::norm(e);
  return std::sqrt(sum);
}

Complex ComplexVector::inner(const ComplexVector& other) const {
  if (dim() != other.dim())
    throw std::invalid_argument("inner: dimension mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    sum += std::conj(entries_[i]) * other.entries_[i];
  return sum;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c)
      throw std::invalid_argument("from_rows: ragged row lengths");
    std::size_t j = 0;
    for (const Complex& e : row) m.at(i, j++) = e;
    ++i;
  }
  return m;
}

Complex ComplexMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace: matrix not square");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) sum += at(i, i);
  return sum;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = std::conj(at(r, c));
  return m;
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tolerance) return false;
  return true;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix add: shape mismatch");
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m.entries_[i] = entries_[i] + rhs.entries_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  return *this + rhs.scaled(-1.0);
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw std::invalid_argument("matrix multiply: shape mismatch");
  ComplexMatrix m(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Complex a = at(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c)
        m.at(r, c) += a * rhs.at(k, c);
    }
  return m;
}

ComplexMatrix ComplexMatrix::scaled(Complex factor) const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m.entries_[i] = entries_[i] * factor;
  return m;
}

ComplexVector ComplexMatrix::apply(const ComplexVector& v) const {
  if (cols_ != v.dim())
    throw std::invalid_argument("matrix apply: dimension mismatch");
  ComplexVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex sum = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) sum += at(r, c) * v[c];
    out[r] = sum;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const Complex f = a.at(ra, ca);
      if (f == Complex{}) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          m.at(ra * b.rows() + rb, ca * b.cols() + cb) = f * b.at(rb, cb);
    }
  return m;
}

namespace {

double check_expectation_result(Complex value) {
  if (std::abs(value.imag()) > tol::kImagResidue)
    throw std::runtime_error("expectation: imaginary residue " +
                             std::to_string(value.imag()) +
                             " exceeds tolerance");
  return value.real();
}

void check_observable(const ComplexMatrix& op, std::size_t dim) {
  if (op.rows() != op.cols() || op.rows() != dim)
    throw std::invalid_argument("expectation: dimension mismatch");
  if (!op.is_hermitian())
    throw std::invalid_argument("expectation: observable is not Hermitian");
}

}  // namespace

double expectation(const ComplexVector& psi, const ComplexMatrix& op) {
  check_observable(op, psi.dim());
  return check_expectation_result(psi.inner(op.apply(psi)));
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
  check_observable(op, rho.rows());
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("expectation: density matrix not square");
  return check_expectation_result((rho * op).trace());
}

namespace {

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c) sum += std::norm(m.at(r, c));
  return std::sqrt(sum);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& op) {
  if (op.rows() != op.cols())
    throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
  if (!op.is_hermitian())
    throw std::invalid_argument("hermitian_eigenvalues: input not Hermitian");

  const std::size_t n = op.rows();
  ComplexMatrix a = op;
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  while (off_diagonal_norm(a) >= tol::kOffDiagonal) {
    if (++sweep > kMaxSweeps)
      throw std::runtime_error(
          "hermitian_eigenvalues: no convergence after " +
          std::to_string(kMaxSweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a.at(p, q));
        if (r < tol::kOffDiagonal / static_cast<double>(n * n)) continue;
        const Complex phase = a.at(p, q) / r;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();

        // Smaller-magnitude root of t^2 - 2*tau*t - 1 = 0; zeroes a(p,q).
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            -1.0 / (tau + std::copysign(std::sqrt(1.0 + tau * tau), tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- J^H A J with J(p,p)=c, J(p,q)=-s*phase, J(q,p)=s*conj(phase),
        // J(q,q)=c. Hermitian symmetry is maintained explicitly.
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a.at(k, p);
          const Complex akq = a.at(k, q);
          a.at(k, p) = c * akp + s * std::conj(phase) * akq;
          a.at(k, q) = -s * phase * akp + c * akq;
          a.at(p, k) = std::conj(a.at(k, p));
          a.at(q, k) = std::conj(a.at(k, q));
        }
        a.at(p, p) = app * c * c + 2.0 * r * s * c + aqq * s * s;
        a.at(q, q) = app * s * s - 2.0 * r * s * c + aqq * c * c;
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eigenvalues(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a.at(i, i).real();
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

}  // namespace wbell::qmath
