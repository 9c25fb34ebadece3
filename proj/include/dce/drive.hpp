#pragma once

#include <vector>

#include "dce/constants.hpp"
#include "dce/lattice.hpp"

namespace dce {

// Harmonic flux drive of the terminating (E_J) and coupling (F_J) SQUIDs:
//   E_J(t) = A0 sin(phi) + dA0 sin(theta) cos(omega_d t)
//   F_J(t) = A0 cos(phi) + dA0 cos(theta) cos(omega_d t)
// Energies in joule, angles in radian, omega_d in rad/s.
struct DriveParams {
  double A0 = 1.0;
  double dA0 = 0.0;
  double phi = constants::pi / 4.0;
  double theta = 0.0;
  double omega_d = constants::default_omega_d;
};

struct LineParams {
  double Z0 = constants::default_z0;              // ohm
  double v = constants::default_phase_velocity;   // m/s

  double L0() const noexcept { return Z0 / v; }          // H/m
  double C0() const noexcept { return 1.0 / (Z0 * v); }  // F/m
  static constexpr double flux_quantum = constants::flux_quantum;
};

// Per-normal-mode drive response, indexed like LaplacianSpectrum::lambdas.
struct ModeResponse {
  std::vector<double> Lambda0;  // static mode energy A0 (sin phi + lambda cos phi), J
  std::vector<double> dLambda;  // modulation dA0 (sin theta + lambda cos theta), J
  std::vector<double> deltaL;   // effective length modulation, m
  std::vector<double> eps;      // pair amplitude (omega_d / 2v) deltaL
  double omega_d = constants::default_omega_d;
  double v = constants::default_phase_velocity;
  bool outside_perturbative = false;  // dA0 / A0 > 0.1

  std::size_t size() const noexcept { return eps.size(); }
};

void validate(const DriveParams& drive);
void validate(const LineParams& line);

// deltaL_n = (phi0 / 2pi)^2 dLambda_n / (L0 Lambda0_n^2).
// Throws NonPositiveModeEnergy when some sin(phi) + lambda_n cos(phi) <= 0.
ModeResponse mode_response(const DriveParams& drive, const LineParams& line,
                           const LaplacianSpectrum& spectrum);

// Rescales dA0 so that the largest single-band intensity equals the target.
// Intensities scale exactly as dA0^2, so one evaluation suffices.
DriveParams calibrate_dA0(const DriveParams& drive, const LineParams& line,
                          const LaplacianSpectrum& spectrum, double target_max_occupancy);

// Symmetric-SQUID Josephson energy EJmax |cos(pi Phi / phi0)|.
double flux_to_energy(double flux, double ej_max);

}  // namespace dce
