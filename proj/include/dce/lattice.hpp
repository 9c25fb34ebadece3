#pragma once

#include <cstddef>
#include <vector>

#include "dce/matrix.hpp"

namespace dce {

enum class TopologyKind { OpenChain, Ring, CustomGraph };

struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 1.0;
};

// Coupling graph of the waveguide array. Site i couples to its neighbours
// through the coupling SQUIDs; an edge weight rescales one coupling SQUID
// (weight 0 removes it).
struct ArrayTopology {
  TopologyKind kind = TopologyKind::OpenChain;
  std::size_t n = 1;
  std::vector<Edge> edges;  // CustomGraph only

  static ArrayTopology open_chain(std::size_t n) { return {TopologyKind::OpenChain, n, {}}; }
  static ArrayTopology ring(std::size_t n) { return {TopologyKind::Ring, n, {}}; }
  static ArrayTopology custom(std::size_t n, std::vector<Edge> edges) {
    return {TopologyKind::CustomGraph, n, std::move(edges)};
  }
};

// Normal-mode decomposition of the coupling Laplacian.
//   lambdas  ascending eigenvalues
//   modes    orthogonal; modes(n, i) is the weight of waveguide i in mode n
// Construct through eigendecompose()/analytic_spectrum(), or directly when a
// caller needs a different basis of a degenerate eigenspace.
struct LaplacianSpectrum {
  std::vector<double> lambdas;
  Matrix modes;

  std::size_t size() const noexcept { return lambdas.size(); }
  double coefficient(std::size_t mode, std::size_t site) const { return modes(mode, site); }
};

// Weighted graph Laplacian: L_ii = weighted degree, L_ij = -w_ij.
Matrix build_laplacian(const ArrayTopology& topology);

// Cyclic Jacobi diagonalization, sorted ascending with the sign convention
// applied to each eigenvector.
LaplacianSpectrum eigendecompose(const Matrix& laplacian);

// Closed-form path/cycle spectra (cosine modes for the chain, cosine/sine
// pairs for the ring). Independent cross-check of eigendecompose().
LaplacianSpectrum analytic_spectrum(const ArrayTopology& topology);

// Shorthand for eigendecompose(build_laplacian(topology)).
LaplacianSpectrum spectrum_of(const ArrayTopology& topology);

// Flips v in place so that its largest-magnitude entry is positive; the first
// entry within 1e-10 (relative) of the maximum decides on ties.
void fix_sign(std::span<double> v);

}  // namespace dce
