#include "dce/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dce/error.hpp"

namespace dce {

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

namespace {

template <class T>
DenseMatrix<T> multiply_impl(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidParameter, "matrix shape mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
double max_abs_diff_impl(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::InvalidParameter, "matrix shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace

Matrix multiply(const Matrix& a, const Matrix& b) { return multiply_impl(a, b); }
CMatrix multiply(const CMatrix& a, const CMatrix& b) { return multiply_impl(a, b); }

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return max_abs_diff_impl(a, b); }
double max_abs_diff(const CMatrix& a, const CMatrix& b) { return max_abs_diff_impl(a, b); }

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

SymmetricEigen jacobi_eigen(const Matrix& input, double rel_tol, int max_sweeps) {
  if (!input.square()) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  const double threshold = rel_tol * frobenius_norm(input);
  int sweep = 0;
  for (;; ++sweep) {
    if (off_norm() <= threshold) break;
    if (sweep >= max_sweeps)
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle from the classic stable formulation (Golub & Van Loan 8.5).
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  out.vectors = std::move(v);
  out.sweeps = sweep;
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h) {
  if (!h.square()) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  const std::size_t n = h.rows();
  Matrix e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize so that rounding noise in the input cannot break Jacobi.
      const cplx x = 0.5 * (h(i, j) + std::conj(h(j, i)));
      e(i, j) = x.real();
      e(i + n, j + n) = x.real();
      e(i, j + n) = -x.imag();
      e(i + n, j) = x.imag();
    }
  auto eig = jacobi_eigen(e);
  std::sort(eig.values.begin(), eig.values.end());
  std::vector<double> vals(n);
  for (std::size_t k = 0; k < n; ++k) vals[k] = 0.5 * (eig.values[2 * k] + eig.values[2 * k + 1]);
  return vals;
}

LuResult lu_invert(const CMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::InvalidParameter, "matrix is not square");
  const std::size_t n = a.rows();
  CMatrix lu = a;
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  cplx det = 1.0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == cplx{}) throw Error(ErrorCode::InvalidParameter, "singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(perm[k], perm[piv]);
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
    }
  }

  CMatrix inv(n, n);
  std::vector<cplx> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) col[i] = (perm[i] == c) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) col[i] -= lu(i, j) * col[j];
      col[i] /= lu(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return {std::move(inv), det};
}

}  // namespace dce
