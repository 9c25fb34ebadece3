#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dce/drive.hpp"
#include "dce/lattice.hpp"

namespace dce {

// Run parameters for the command-line driver. Angles in radian, energies in
// joule, temperatures in millikelvin as given (kelvin via temperatures_k()).
struct RunConfig {
  TopologyKind topology = TopologyKind::OpenChain;
  std::size_t n = 2;
  double a0 = 0.0;
  std::optional<double> da0;
  std::optional<double> target_occupancy;
  double phi = constants::pi / 4.0;
  double theta_start = 0.0;
  double theta_end = 0.0;
  std::size_t theta_steps = 1;
  double omega_d = constants::default_omega_d;
  double z0 = constants::default_z0;
  double v = constants::default_phase_velocity;
  std::vector<double> temperature_mk{0.0};
  std::vector<std::string> observables{"n", "g2"};
  std::string out = "-";

  ArrayTopology array() const;
  LineParams line() const { return {z0, v}; }
  // Drive at theta with dA0 as configured (the seed value when calibrating).
  DriveParams drive(double theta) const;
  std::vector<double> theta_grid() const;
  std::vector<double> temperatures_k() const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

// key=value lines; blank lines and lines starting with '#' are skipped.
// Overrides are applied after the text, in order. Throws UnknownKey,
// MissingRequired or RangeError.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

// The accepted keys, in documentation order.
const std::vector<std::string>& config_keys();

}  // namespace dce
