#pragma once

#include <cstddef>
#include <vector>

#include "dce/drive.hpp"
#include "dce/kernels.hpp"
#include "dce/lattice.hpp"
#include "dce/matrix.hpp"

namespace dce {

// Broadband (voltage-based) observables of the output lines.
struct SpectralConfig {
  double omega_d = constants::default_omega_d;
  std::size_t omega_points = 2048;  // interior points of (0, omega_d)
  std::vector<double> tau;          // seconds
  double temperature = 0.0;         // K
  LineParams line;

  // tau grid of `points` values with omega_d * tau uniformly in [0, max_phase].
  static std::vector<double> default_tau(double omega_d, std::size_t points = 512,
                                         double max_phase = 30.0);
};

void validate(const SpectralConfig& config);

// S_n(w1, w2) = -i (deltaL_n / v) sqrt(w1 w2) H(w1) H(w2)
cplx scattering(std::size_t mode, double omega1, double omega2, const ModeResponse& modes);

// Output photon flux spectral density of waveguide i. At T = 0 it is
// sum_n (c_n^i)^2 |S_n(w, w_d - w)|^2; at finite T the thermal reflection
// N_T(w) is added and the parametric part is stimulated by 1 + N_T(w_d - w).
double photon_flux_density(std::size_t site, double omega, const ModeResponse& modes,
                           const LaplacianSpectrum& spectrum, double temperature);

// Interior frequency grid omega_k = omega_d (k + 1) / (points + 1).
std::vector<double> frequency_grid(const SpectralConfig& config);

// n_i(omega) on frequency_grid(config); rows are sites, columns frequencies.
Matrix flux_spectrum(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                     const SpectralConfig& config, Exec exec = Exec::Parallel);

// J(tau) = int_0^{w_d} w (w_d - w) exp(i w tau) dw, closed form (series for
// small w_d tau).
cplx pair_kernel(double omega_d, double tau);
// Same integral by adaptive Simpson quadrature.
cplx pair_kernel_quadrature(double omega_d, double tau, double rel_tol = 1e-13);

// I_n(tau) = int_0^{w_d} sqrt(w (w_d - w)) S_n(w, w_d - w) exp(i w tau) dw
//          = -i (deltaL_n / v) J(tau).
// With verify set, the quadrature value is compared and a relative mismatch
// above 1e-9 throws QuadratureDisagreement.
cplx mode_integral(std::size_t mode, double tau, const ModeResponse& modes, bool verify = true);

// (hbar Z0 / 4 pi) sum_n (c_n^i)^2 (deltaL_n / v)^2 w_d^4 / 12
double g1_broadband(std::size_t site, const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                    const LineParams& line);
// The same from the frequency integral, by adaptive quadrature.
double g1_broadband_quadrature(std::size_t site, const ModeResponse& modes,
                               const LaplacianSpectrum& spectrum, const LineParams& line);

// (hbar Z0 / 4 pi)^2 sum_nm c_n^i c_n^j c_m^j c_m^i I_n(tau) I_m(tau)^*
double g2_broadband(std::size_t i, std::size_t j, double tau, const ModeResponse& modes,
                    const LaplacianSpectrum& spectrum, const LineParams& line, bool verify = true);

// G2_ij(0) / sqrt(G1_i G1_j), expressed in units of the band-centre
// single-photon voltage scale (hbar Z0 / 4 pi) (w_d / 2)^2 so that the value
// is dimensionless. Not bounded by one.
double g2_broadband_normalized(std::size_t i, std::size_t j, const ModeResponse& modes,
                               const LaplacianSpectrum& spectrum, const LineParams& line);

// G2_ij(tau) / G2_ref(0) over config.tau for every j, with ref = (i, i).
// Rows are tau points, columns j.
Matrix time_delay_table(std::size_t i, const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                        const SpectralConfig& config, Exec exec = Exec::Parallel);

// Adaptive Simpson on [a, b] for a complex integrand.
template <class F>
cplx adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 48);

}  // namespace dce

#include "dce/detail/adaptive_simpson.hpp"
