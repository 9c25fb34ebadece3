#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "dce/correlations.hpp"
#include "dce/drive.hpp"
#include "dce/lattice.hpp"
#include "dce/matrix.hpp"

namespace dce {

// Zero-mean Gaussian state of the degenerate output band.
//   number(i, j)    = <a_i^dag a_j>
//   anomalous(i, j) = <a_i a_j>
// Each normal mode is an exact single-mode Bogoliubov transform
// b_out = u b_in + v b_in^dag, u = sqrt(1 + eps^2), v = -i eps, of a thermal
// input; to first order in eps this is the linear input-output relation.
struct GaussianOutputState {
  CMatrix number;
  CMatrix anomalous;
  double temperature = 0.0;
  double thermal_occupation = 0.0;

  std::size_t modes() const noexcept { return number.rows(); }

  // [[1 + N^T, M], [M^*, N]] >= 0, the bosonic uncertainty relation in
  // complex form.
  bool is_physical(double tol = 1e-12) const;
};

GaussianOutputState output_gaussian(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                                    double temperature);

struct Ladder {
  std::size_t mode = 0;
  bool dagger = false;
};
using Word = std::vector<Ladder>;

inline Ladder create(std::size_t mode) { return {mode, true}; }
inline Ladder annihilate(std::size_t mode) { return {mode, false}; }

// Normal-ordered moment by Wick's theorem. Odd words give zero; words with a
// creator right of an annihilator throw NotNormalOrdered.
cplx wick_moment(const GaussianOutputState& state, const Word& word);

// Exact g2 of the Gaussian state (all disconnected terms included).
// pair_amplitude holds -Im <a_i a_j>.
CorrelationSet correlations_from_state(const GaussianOutputState& state);

// Fock matrix elements <bra|rho|ket> of a Gaussian state. The Husimi
// function gives exp(|alpha|^2) <alpha|rho|alpha> = exp(z^T A z / 2) / sqrt(det S)
// with z = (alpha^*, alpha), S the anti-normally ordered covariance and
// A = (1 - S^-1) X; the coefficient of each monomial is a hafnian of A,
// which is again a sum over perfect matchings.
class FockElements {
 public:
  explicit FockElements(const GaussianOutputState& state);

  cplx element(std::span<const int> bra, std::span<const int> ket) const;
  double vacuum_probability() const noexcept { return vacuum_; }

 private:
  std::size_t modes_;
  CMatrix a_;
  double vacuum_;
};

// Two-waveguide state on qutrit (x) qutrit, basis |n1 n2> at index 3 n1 + n2.
struct TruncatedDensityMatrix {
  CMatrix rho = CMatrix(9, 9);
  bool post_selected = false;

  static constexpr std::size_t index(int n1, int n2) { return static_cast<std::size_t>(3 * n1 + n2); }
};

enum class DensityMethod {
  Exact,              // hafnian of the Husimi generating matrix
  ProjectorSeries,    // :exp(-sum a^dag a): expanded to a fixed operator degree
};

struct DensityOptions {
  DensityMethod method = DensityMethod::Exact;
  int max_degree = 8;               // ProjectorSeries only
  double remainder_tolerance = 1e-4;  // of the trace; ProjectorSeries only
};

// Projects the state onto n_i <= 2, optionally discards |00> (post-selection
// P = 1 - |00><00|), and renormalizes. Two waveguides only.
TruncatedDensityMatrix density_matrix(const GaussianOutputState& state, bool post_select,
                                      const DensityOptions& options = {});

// Leading-order two-photon state sum_ij beta_ij a_i^dag a_j^dag |0>,
// beta = (i/2) C diag(eps) C^T, expressed in the |2_i>, |1_i 1_j> basis.
struct PairState {
  CMatrix beta;
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // (i, i) is |2_i>, (i, j) is |1_i 1_j>
  std::vector<cplx> amplitudes;                             // normalized

  cplx amplitude(std::size_t i, std::size_t j) const;
};

PairState perturbative_pure_state(const ModeResponse& modes, const LaplacianSpectrum& spectrum);

// |psi><psi| of a two-waveguide pair state on the qutrit basis.
TruncatedDensityMatrix pure_density_matrix(const PairState& state);

// Base-3 entropy of the reduced state after tracing out qutrit
// `traced_subsystem` (0 or 1).
double von_neumann_entropy(const TruncatedDensityMatrix& rho, int traced_subsystem);
double total_entropy(const TruncatedDensityMatrix& rho);
double purity(const TruncatedDensityMatrix& rho);

double noon_fidelity(const TruncatedDensityMatrix& rho);
// Fidelity to (|11> + |20> + |02>) / sqrt(3).
double maximally_entangled_fidelity(const TruncatedDensityMatrix& rho);
// Multimode fidelity to (1/sqrt(N)) sum_i |2_i>.
double noon_fidelity(const PairState& state);

}  // namespace dce
