#pragma once

// Data-parallel inner loops. Every kernel comes in two flavours: a plain
// serial reference and an OpenMP version. Both evaluate each output element
// with the same arithmetic in the same order, so their results are bitwise
// identical; the tests rely on that.

#include <cstddef>
#include <span>
#include <vector>

#include "dce/matrix.hpp"

namespace dce {

enum class Exec { Serial, Parallel };

// Worker count used by Exec::Parallel: DCE_WORKERS if set and positive,
// otherwise the OpenMP default.
int worker_count();

namespace kernels {

// out(i, j) = sum_n modes(n, i) * modes(n, j) * weights[n]
// i.e. C diag(w) C^T with C(i, n) = modes(n, i). This is the matrix function
// of the Laplacian behind every observable.
namespace serial {
Matrix mode_sum(const Matrix& modes, std::span<const double> weights);
std::vector<double> mode_sum_diagonal(const Matrix& modes, std::span<const double> weights);
}  // namespace serial

namespace omp {
Matrix mode_sum(const Matrix& modes, std::span<const double> weights, int workers);
std::vector<double> mode_sum_diagonal(const Matrix& modes, std::span<const double> weights,
                                      int workers);
}  // namespace omp

Matrix mode_sum(const Matrix& modes, std::span<const double> weights, Exec exec = Exec::Parallel);
std::vector<double> mode_sum_diagonal(const Matrix& modes, std::span<const double> weights,
                                      Exec exec = Exec::Parallel);

}  // namespace kernels

// Evaluates fn(k) for k in [0, count). The parallel path uses dynamic
// scheduling; callers write into pre-sized, index-addressed storage so the
// result order never depends on thread timing. fn must not throw.
template <class Fn>
void for_each_index(std::size_t count, Exec exec, int workers, Fn&& fn) {
  if (exec == Exec::Serial || workers <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
  for (long long k = 0; k < n; ++k) fn(static_cast<std::size_t>(k));
}

}  // namespace dce
