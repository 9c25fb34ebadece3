#pragma once

#include <numbers>

namespace dce::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double planck = 6.62607015e-34;         // J s
inline constexpr double hbar = planck / (2.0 * pi);      // J s
inline constexpr double boltzmann = 1.380649e-23;        // J / K
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);  // Wb

// Line and drive defaults of the two-waveguide reference device.
inline constexpr double default_z0 = 55.0;                       // ohm
inline constexpr double default_phase_velocity = 1.2e8;          // m / s
inline constexpr double default_omega_d = 2.0 * pi * 10.3e9;     // rad / s

}  // namespace dce::constants
