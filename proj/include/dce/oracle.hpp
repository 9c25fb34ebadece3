#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dce/matrix.hpp"
#include "dce/quantum_state.hpp"

namespace dce::oracle {

// Truncated annihilation operator on span{|0>, .., |cutoff>}.
Eigen::MatrixXd annihilation(int cutoff);

// Brute-force reference for the output state of at most three waveguides.
// Every normal mode n is a thermal state squeezed by
// S = exp(-(i r / 2)(b^2 + b^dag 2)), sinh r = eps_n, computed as a dense
// matrix exponential in a padded Fock space and then cut to `cutoff`.
// Waveguide operators are a_i = sum_n modes(n, i) b_n. Throws CutoffTooSmall
// when the truncated trace of a mode falls short of one by more than
// trace_tolerance.
class FockOracle {
 public:
  FockOracle(std::span<const double> eps, const Matrix& modes, double thermal_occupation,
             int cutoff = 8, double trace_tolerance = 1e-10);

  std::size_t modes() const noexcept { return rho_.size(); }
  int cutoff() const noexcept { return cutoff_; }
  // (cutoff + 1)^modes
  std::size_t dimension() const noexcept;

  // Density matrix of normal mode n on its truncated Fock space.
  const Eigen::MatrixXcd& mode_state(std::size_t n) const { return rho_.at(n); }

  // tr(rho w) for a word in the waveguide operators, read left to right.
  cplx moment(const Word& word) const;

  // <bra|rho|ket> in the waveguide number basis.
  cplx fock_element(std::span<const int> bra, std::span<const int> ket) const;

  // Same projection, post-selection and renormalization as density_matrix().
  TruncatedDensityMatrix density_matrix(bool post_select) const;

 private:
  int cutoff_;
  Matrix modes_;
  std::vector<Eigen::MatrixXcd> rho_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd adag_;
};

// Largest absolute differences between the Gaussian/Wick path and the oracle
// for one two-waveguide state.
struct Comparison {
  double moments = 0.0;      // every normal-ordered word of length 2 and 4
  double raw_elements = 0.0; // the 81 <n1 n2|rho|m1 m2>, n, m <= 2
  double density = 0.0;      // post-selected, renormalized qutrit rho
  std::size_t words = 0;
};

// Two waveguides with normal-mode amplitudes eps and matrix `modes`, thermal
// occupation nt per mode.
Comparison compare_two_mode(std::span<const double> eps, const Matrix& modes, double nt, int cutoff,
                            double trace_tolerance = 1e-10);

// Gaussian output state with the given per-mode amplitudes and thermal
// occupation, built through output_gaussian().
GaussianOutputState gaussian_state(std::span<const double> eps, const Matrix& modes, double nt);

}  // namespace dce::oracle
