#include "gphase/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gphase::numkit {

namespace {

// Rotate v so its largest-magnitude entry is real and non-negative.
// Ties go to the lowest index because the scan uses strict improvement.
void fix_phase(ComplexVector& v) {
  std::size_t best = 0;
  double best_mag = std::abs(v[0]);
  for (std::size_t i = 1; i < v.dim(); ++i) {
    double m = std::abs(v[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  if (best_mag == 0.0) return;
  cx phase = std::conj(v[best]) / best_mag;
  for (std::size_t i = 0; i < v.dim(); ++i) v[i] *= phase;
}

void check_hermitian(const ComplexMatrix& a, const char* where) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(where) + ": matrix is not square");
  }
  if (!a.is_finite()) {
    throw std::invalid_argument(std::string(where) + ": matrix has non-finite entries");
  }
  if (!a.is_hermitian()) {
    throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian within 1e-12");
  }
}

void sort_ascending(EigenDecomposition& d) {
  std::vector<std::size_t> order(d.eigenvalues.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return d.eigenvalues[i] < d.eigenvalues[j];
  });
  EigenDecomposition out;
  out.eigenvalues.reserve(order.size());
  out.eigenvectors.reserve(order.size());
  for (std::size_t k : order) {
    out.eigenvalues.push_back(d.eigenvalues[k]);
    out.eigenvectors.push_back(std::move(d.eigenvectors[k]));
  }
  d = std::move(out);
}

}  // namespace

double ComplexVector::norm() const {
  double s = 0.0;
  for (const cx& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

bool ComplexVector::is_finite() const {
  for (const cx& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  }
  return true;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<cx> entries)
    : rows_(rows), cols_(cols), entries_(entries) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("ComplexMatrix: dimensions must be >= 1");
  }
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

cx ComplexMatrix::trace() const {
  cx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cx& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

bool ComplexMatrix::is_finite() const {
  for (const cx& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  }
  return true;
}

double ComplexMatrix::hermiticity_error() const {
  if (rows_ != cols_) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    }
  }
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  return hermiticity_error() <= tol * std::max(1.0, frobenius_norm());
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions do not match");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      cx aik = a(i, k);
      if (aik == cx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.dim()) {
    throw std::invalid_argument("matvec: dimensions do not match");
  }
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

cx inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("inner: dimensions do not match");
  }
  cx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexMatrix outer(const ComplexVector& out, const ComplexVector& in) {
  ComplexMatrix m(out.dim(), in.dim());
  for (std::size_t i = 0; i < out.dim(); ++i) {
    for (std::size_t j = 0; j < in.dim(); ++j) m(i, j) = out[i] * std::conj(in[j]);
  }
  return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix addition: dimensions do not match");
  }
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  }
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix subtraction: dimensions do not match");
  }
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  }
  return c;
}

ComplexMatrix operator*(cx s, const ComplexMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  }
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("vector addition: dimensions do not match");
  }
  ComplexVector c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
  return c;
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("vector subtraction: dimensions do not match");
  }
  ComplexVector c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
  return c;
}

ComplexVector operator*(cx s, const ComplexVector& v) {
  ComplexVector c(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) c[i] = s * v[i];
  return c;
}

EigenDecomposition eig_hermitian_2x2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw std::invalid_argument("eig_hermitian_2x2: matrix is not 2x2");
  }
  check_hermitian(m, "eig_hermitian_2x2");

  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  // Symmetrize the off-diagonal so the tiny allowed asymmetry cannot leak in.
  const cx b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double babs = std::abs(b);

  EigenDecomposition out;
  if (babs == 0.0) {
    out.eigenvalues = {a, d};
    out.eigenvectors = {ComplexVector{1.0, 0.0}, ComplexVector{0.0, 1.0}};
    if (d < a) {
      std::swap(out.eigenvalues[0], out.eigenvalues[1]);
      std::swap(out.eigenvectors[0], out.eigenvectors[1]);
    }
    return out;
  }

  const double mean = 0.5 * (a + d);
  const double half_gap = 0.5 * (a - d);
  const double r = std::hypot(half_gap, babs);
  const double lo = mean - r;
  const double hi = mean + r;

  auto eigenvector_for = [&](double lambda) {
    // Two analytic candidates; the larger one avoids cancellation.
    ComplexVector u1{b, cx{lambda - a, 0.0}};
    ComplexVector u2{cx{lambda - d, 0.0}, std::conj(b)};
    ComplexVector& u = (u1.norm() >= u2.norm()) ? u1 : u2;
    cx scale = cx{1.0 / u.norm(), 0.0};
    ComplexVector v = scale * u;
    fix_phase(v);
    return v;
  };

  out.eigenvalues = {lo, hi};
  out.eigenvectors = {eigenvector_for(lo), eigenvector_for(hi)};
  return out;
}

EigenDecomposition eig_hermitian(const ComplexMatrix& a) {
  check_hermitian(a, "eig_hermitian");
  const std::size_t n = a.rows();

  // Work on the Hermitian average so the diagonal is exactly real.
  ComplexMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    }
    w(i, i) = cx{w(i, i).real(), 0.0};
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = 1e-12 * std::max(a.frobenius_norm(),
                                         std::numeric_limits<double>::min());
  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += std::norm(w(i, j));
      }
    }
    return std::sqrt(s);
  };

  const int max_sweeps = 100;
  int sweep = 0;
  while (off_norm() > target) {
    if (++sweep > max_sweeps) {
      throw std::runtime_error(
          "eig_hermitian: Jacobi iteration did not converge within 100 sweeps "
          "(off-diagonal norm " + std::to_string(off_norm()) + ")");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx apq = w(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        // Factor out the phase of w(p,q), then a real Jacobi rotation.
        const cx eib = apq / g;  // e^{i beta}
        const double app = w(p, p).real();
        const double aqq = w(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // U[p][p]=c, U[p][q]=s, U[q][p]=-s*conj(eib), U[q][q]=c*conj(eib).
        for (std::size_t k = 0; k < n; ++k) {  // rows: W <- U^dagger W
          const cx wp = w(p, k);
          const cx wq = w(q, k);
          w(p, k) = c * wp - s * eib * wq;
          w(q, k) = s * wp + c * eib * wq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // columns: W <- W U
          const cx wp = w(k, p);
          const cx wq = w(k, q);
          w(k, p) = c * wp - s * std::conj(eib) * wq;
          w(k, q) = s * wp + c * std::conj(eib) * wq;
        }
        w(p, q) = 0.0;
        w(q, p) = 0.0;
        w(p, p) = cx{w(p, p).real(), 0.0};
        w(q, q) = cx{w(q, q).real(), 0.0};
        for (std::size_t k = 0; k < n; ++k) {  // accumulate V <- V U
          const cx vp = v(k, p);
          const cx vq = v(k, q);
          v(k, p) = c * vp - s * std::conj(eib) * vq;
          v(k, q) = s * vp + c * std::conj(eib) * vq;
        }
      }
    }
  }

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = w(j, j).real();
    ComplexVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, j);
    fix_phase(col);
    out.eigenvectors[j] = std::move(col);
  }
  sort_ascending(out);
  return out;
}

}  // namespace gphase::numkit
