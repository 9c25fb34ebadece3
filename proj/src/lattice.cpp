#include "dce/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dce/constants.hpp"
#include "dce/error.hpp"

namespace dce {

namespace {

void validate(const ArrayTopology& t) {
  if (t.n < 1) throw Error(ErrorCode::InvalidTopology, "array needs at least one waveguide");
  if (t.kind == TopologyKind::Ring && t.n < 3)
    throw Error(ErrorCode::RingTooSmall, "ring needs n >= 3, got " + std::to_string(t.n));
  if (t.kind == TopologyKind::CustomGraph) {
    for (const auto& e : t.edges) {
      if (e.a >= t.n || e.b >= t.n) throw Error(ErrorCode::InvalidTopology, "edge index out of range");
      if (e.a == e.b) throw Error(ErrorCode::InvalidTopology, "self-loop on site " + std::to_string(e.a));
      if (!(e.weight >= 0.0)) throw Error(ErrorCode::NegativeWeight, "edge weight must be >= 0");
    }
  }
}

std::vector<Edge> edges_of(const ArrayTopology& t) {
  std::vector<Edge> edges;
  switch (t.kind) {
    case TopologyKind::OpenChain:
      for (std::size_t i = 0; i + 1 < t.n; ++i) edges.push_back({i, i + 1, 1.0});
      break;
    case TopologyKind::Ring:
      for (std::size_t i = 0; i < t.n; ++i) edges.push_back({i, (i + 1) % t.n, 1.0});
      break;
    case TopologyKind::CustomGraph:
      edges = t.edges;
      break;
  }
  return edges;
}

LaplacianSpectrum sorted_spectrum(std::vector<double> values, const Matrix& columns) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  LaplacianSpectrum s;
  s.lambdas.resize(n);
  s.modes = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    s.lambdas[k] = values[order[k]];
    for (std::size_t i = 0; i < n; ++i) s.modes(k, i) = columns(i, order[k]);
    fix_sign(s.modes.row(k));
  }
  return s;
}

}  // namespace

void fix_sign(std::span<double> v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return;
  for (double x : v) {
    if (std::abs(x) >= peak * (1.0 - 1e-10)) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

Matrix build_laplacian(const ArrayTopology& topology) {
  validate(topology);
  Matrix l(topology.n, topology.n);
  for (const auto& e : edges_of(topology)) {
    l(e.a, e.a) += e.weight;
    l(e.b, e.b) += e.weight;
    l(e.a, e.b) -= e.weight;
    l(e.b, e.a) -= e.weight;
  }
  return l;
}

LaplacianSpectrum eigendecompose(const Matrix& laplacian) {
  if (!laplacian.square()) throw Error(ErrorCode::NotSymmetric, "Laplacian is not square");
  const std::size_t n = laplacian.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(laplacian(i, j) - laplacian(j, i)) > 1e-12)
        throw Error(ErrorCode::NotSymmetric, "asymmetric entry at (" + std::to_string(i) + ", " +
                                                 std::to_string(j) + ")");
  auto eig = jacobi_eigen(laplacian, 1e-14, 100);
  return sorted_spectrum(std::move(eig.values), eig.vectors);
}

LaplacianSpectrum analytic_spectrum(const ArrayTopology& topology) {
  validate(topology);
  const std::size_t n = topology.n;
  const double nn = static_cast<double>(n);
  const double pi = constants::pi;
  std::vector<double> values(n);
  Matrix columns(n, n);

  if (topology.kind == TopologyKind::OpenChain) {
    for (std::size_t k = 0; k < n; ++k) {
      values[k] = 2.0 - 2.0 * std::cos(pi * static_cast<double>(k) / nn);
      const double norm = (k == 0) ? std::sqrt(1.0 / nn) : std::sqrt(2.0 / nn);
      for (std::size_t i = 0; i < n; ++i)
        columns(i, k) = norm * std::cos(pi * static_cast<double>(k) * (static_cast<double>(i) + 0.5) / nn);
    }
  } else if (topology.kind == TopologyKind::Ring) {
    // k = 0 uniform; k < n/2 cosine/sine pairs; k = n/2 alternating (even n).
    std::size_t col = 0;
    auto put = [&](double lambda, auto&& f, double norm) {
      values[col] = lambda;
      for (std::size_t i = 0; i < n; ++i) columns(i, col) = norm * f(static_cast<double>(i));
      ++col;
    };
    put(0.0, [](double) { return 1.0; }, std::sqrt(1.0 / nn));
    for (std::size_t k = 1; 2 * k < n; ++k) {
      const double q = 2.0 * pi * static_cast<double>(k) / nn;
      const double lambda = 2.0 - 2.0 * std::cos(q);
      put(lambda, [q](double i) { return std::cos(q * i); }, std::sqrt(2.0 / nn));
      put(lambda, [q](double i) { return std::sin(q * i); }, std::sqrt(2.0 / nn));
    }
    if (n % 2 == 0)
      put(4.0, [](double i) { return std::fmod(i, 2.0) == 0.0 ? 1.0 : -1.0; }, std::sqrt(1.0 / nn));
  } else {
    throw Error(ErrorCode::UnsupportedTopology, "no closed form for a custom graph");
  }
  return sorted_spectrum(std::move(values), columns);
}

LaplacianSpectrum spectrum_of(const ArrayTopology& topology) {
  return eigendecompose(build_laplacian(topology));
}

}  // namespace dce
