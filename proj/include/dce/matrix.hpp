#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dce {

using cplx = std::complex<double>;

// Row-major dense matrix. Sizes in this project stay in the hundreds, so a
// plain owning vector is all we need.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  DenseMatrix(std::initializer_list<std::initializer_list<T>> init);

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const T> data() const noexcept { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
DenseMatrix<T>::DenseMatrix(std::initializer_list<std::initializer_list<T>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) data_.insert(data_.end(), r.begin(), r.end());
}

using Matrix = DenseMatrix<double>;
using CMatrix = DenseMatrix<cplx>;

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
CMatrix multiply(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double frobenius_norm(const Matrix& a);

struct SymmetricEigen {
  std::vector<double> values;  // unsorted, in Jacobi output order
  Matrix vectors;              // column k is the eigenvector of values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations. Stops once the off-diagonal Frobenius norm drops
// below rel_tol * ||a||_F; throws NoConvergence after max_sweeps.
SymmetricEigen jacobi_eigen(const Matrix& a, double rel_tol = 1e-14, int max_sweeps = 100);

// Eigenvalues of a Hermitian matrix, ascending. Uses the real symmetric
// embedding [[Re, -Im], [Im, Re]], whose spectrum is that of the input with
// every eigenvalue doubled.
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

struct LuResult {
  CMatrix inverse;
  cplx determinant;
};

// Partial-pivot LU; throws InvalidParameter on an exactly singular input.
LuResult lu_invert(const CMatrix& a);

}  // namespace dce
