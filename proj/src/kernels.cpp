#include "dce/kernels.hpp"

#include <cstdlib>
#include <omp.h>

#include "dce/error.hpp"

namespace dce {

int worker_count() {
  if (const char* env = std::getenv("DCE_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

namespace kernels {

namespace {

void check_shape(const Matrix& modes, std::span<const double> weights) {
  if (!modes.square() || modes.rows() != weights.size())
    throw Error(ErrorCode::InvalidParameter, "mode matrix and weight vector disagree in size");
}

inline double element(const Matrix& modes, std::span<const double> w, std::size_t i,
                      std::size_t j) {
  double s = 0.0;
  for (std::size_t n = 0; n < w.size(); ++n) s += modes(n, i) * modes(n, j) * w[n];
  return s;
}

}  // namespace

namespace serial {

Matrix mode_sum(const Matrix& modes, std::span<const double> weights) {
  check_shape(modes, weights);
  const std::size_t n = weights.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out(i, j) = out(j, i) = element(modes, weights, i, j);
  return out;
}

std::vector<double> mode_sum_diagonal(const Matrix& modes, std::span<const double> weights) {
  check_shape(modes, weights);
  std::vector<double> out(weights.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = element(modes, weights, i, i);
  return out;
}

}  // namespace serial

namespace omp {

Matrix mode_sum(const Matrix& modes, std::span<const double> weights, int workers) {
  check_shape(modes, weights);
  const long long n = static_cast<long long>(weights.size());
  Matrix out(weights.size(), weights.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers)
  for (long long i = 0; i < n; ++i)
    for (long long j = i; j < n; ++j) {
      const double v = element(modes, weights, static_cast<std::size_t>(i),
                               static_cast<std::size_t>(j));
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

std::vector<double> mode_sum_diagonal(const Matrix& modes, std::span<const double> weights,
                                      int workers) {
  check_shape(modes, weights);
  const long long n = static_cast<long long>(weights.size());
  std::vector<double> out(weights.size());
#pragma omp parallel for schedule(static) num_threads(workers)
  for (long long i = 0; i < n; ++i)
    out[i] = element(modes, weights, static_cast<std::size_t>(i), static_cast<std::size_t>(i));
  return out;
}

}  // namespace omp

// Below this size thread start-up dominates; the serial loop is used.
constexpr std::size_t kParallelThreshold = 48;

Matrix mode_sum(const Matrix& modes, std::span<const double> weights, Exec exec) {
  if (exec == Exec::Serial || weights.size() < kParallelThreshold)
    return serial::mode_sum(modes, weights);
  return omp::mode_sum(modes, weights, worker_count());
}

std::vector<double> mode_sum_diagonal(const Matrix& modes, std::span<const double> weights,
                                      Exec exec) {
  if (exec == Exec::Serial || weights.size() < kParallelThreshold)
    return serial::mode_sum_diagonal(modes, weights);
  return omp::mode_sum_diagonal(modes, weights, worker_count());
}

}  // namespace kernels
}  // namespace dce
