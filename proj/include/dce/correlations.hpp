#pragma once

#include <cstddef>
#include <vector>

#include "dce/drive.hpp"
#include "dce/kernels.hpp"
#include "dce/lattice.hpp"
#include "dce/matrix.hpp"

namespace dce {

// Degenerate-band (omega_d / 2) photon statistics of the output fields.
struct CorrelationSet {
  std::vector<double> intensities;  // N_i (G1_i at finite temperature)
  Matrix pair_amplitude;            // M_ij = sum_n c_n^i c_n^j eps_n
  Matrix G2;
  Matrix g2;                        // G2_ij / sqrt(N_i N_j)
  double temperature = 0.0;         // K
  double thermal_occupation = 0.0;  // N_T at omega_d / 2
};

// Bose occupation 1 / (exp(hbar omega / k_B T) - 1); zero at T = 0.
double thermal_occupation(double omega, double temperature);

// N_i = sum_n (c_n^i)^2 eps_n^2
std::vector<double> intensities(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                                Exec exec = Exec::Parallel);

Matrix pair_amplitude(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                      Exec exec = Exec::Parallel);

// Vacuum input, leading order: G2_ij = M_ij^2.
// Throws ZeroIntensity if some waveguide emits nothing.
CorrelationSet g2_zero_T(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                         Exec exec = Exec::Parallel);

// Thermal input with Gaussian factorization:
//   G1_i  = sum_n (c_n^i)^2 P_n,             P_n = N_T + (1 + N_T) eps_n^2
//   G2_ij = (2 N_T + 1)^2 M_ij^2 + Q_ij^2 + G1_i G1_j,   Q_ij = sum_n c_n^i c_n^j P_n
// normalized by sqrt(G1_i G1_j). At T = 0 this keeps the O(eps^4)
// disconnected terms that g2_zero_T drops.
CorrelationSet g2_thermal(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                          double temperature, Exec exec = Exec::Parallel);

// g2_ij - g2_ii for a symmetric pair (N_i == N_j to 1e-9 relative);
// positive values violate the classical Cauchy-Schwarz bound.
double cauchy_schwarz(const CorrelationSet& corr, std::size_t i, std::size_t j);

}  // namespace dce
