#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace gphase::numkit {

using cx = std::complex<double>;

/// Dense complex vector.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : entries_(dim) { require_nonempty(); }
  ComplexVector(std::initializer_list<cx> entries) : entries_(entries) { require_nonempty(); }
  explicit ComplexVector(std::vector<cx> entries) : entries_(std::move(entries)) {
    require_nonempty();
  }

  std::size_t dim() const { return entries_.size(); }
  cx& operator[](std::size_t i) { return entries_[i]; }
  const cx& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<cx>& entries() const { return entries_; }

  double norm() const;
  bool is_finite() const;

 private:
  void require_nonempty() const {
    if (entries_.empty()) throw std::invalid_argument("ComplexVector: dimension must be >= 1");
  }

  std::vector<cx> entries_;
};

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
    }
  }
  // Entries listed row by row; count must be rows*cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cx> entries);
  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cx& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  const std::vector<cx>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  cx trace() const;
  double frobenius_norm() const;
  bool is_finite() const;

  /// ||A - A^dagger||_F.
  double hermiticity_error() const;
  /// Hermitian within tol, relative to max(1, ||A||_F).
  bool is_hermitian(double tol = 1e-12) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cx> entries_;
};

/// Full spectrum of a Hermitian matrix: eigenvalues ascending, eigenvectors
/// orthonormal and listed in the same order. Each eigenvector is phased so
/// its largest-magnitude entry is real and non-negative (ties broken by the
/// lowest index), which makes results comparable across solvers.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  std::vector<ComplexVector> eigenvectors;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v);

/// <a|b>, conjugate-linear in the first argument.
cx inner(const ComplexVector& a, const ComplexVector& b);
/// |out><in|.
ComplexMatrix outer(const ComplexVector& out, const ComplexVector& in);

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cx s, const ComplexMatrix& a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
ComplexVector operator*(cx s, const ComplexVector& v);

/// Closed-form eigendecomposition of a 2x2 Hermitian matrix.
EigenDecomposition eig_hermitian_2x2(const ComplexMatrix& a);

/// Cyclic Jacobi eigensolver for Hermitian matrices. Sweeps until the
/// off-diagonal Frobenius norm drops below 1e-12 * ||A||_F; throws after
/// 100 sweeps without convergence.
EigenDecomposition eig_hermitian(const ComplexMatrix& a);

}  // namespace gphase::numkit
