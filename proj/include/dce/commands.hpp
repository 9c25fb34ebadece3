#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dce/config.hpp"
#include "dce/kernels.hpp"

namespace dce {

struct CommandOptions {
  Exec exec = Exec::Parallel;
  std::size_t omega_points = 2048;  // spectrum
  std::size_t tau_points = 512;     // time-delay
  double tau_max_phase = 30.0;      // time-delay, largest omega_d tau
  std::size_t site = 1;             // time-delay reference waveguide, 1-based
  bool rho = false;                 // entangle: also fill rho_csv
};

// CSV text of one command. Numbers use %.17g; the column header, metadata
// and the trailing status line start with '#'.
struct CommandResult {
  std::string csv;
  std::string rho_csv;
  std::size_t rows = 0;
  std::size_t failed_rows = 0;

  bool partial() const noexcept { return failed_rows != 0; }
};

// One resolved output column of the sweep command.
struct Observable {
  enum class Kind {
    Intensity, G2, CauchySchwarz, Entropy, NoonFidelity, Eq10Fidelity,
    EntropyPerturbative, NoonFidelityPerturbative, Eq10FidelityPerturbative
  };
  Kind kind = Kind::Intensity;
  std::size_t i = 0;  // 0-based
  std::size_t j = 0;
  std::string name;
};

// Expands tokens such as n, n_2, g2, g2_1_2, g2_row_16, cs, cs_violation_1_2,
// entropy, f_noon, f_eq10 and the *_pt variants into columns. Indices are
// 1-based in tokens and names. Throws RangeError on unknown tokens.
std::vector<Observable> expand_observables(const std::vector<std::string>& tokens, std::size_t n);

// dA0 such that the largest intensity over the theta grid equals the
// target; returns config.da0 unchanged when no target is set.
double resolve_da0(const RunConfig& config);

CommandResult run_sweep(const RunConfig& config, const CommandOptions& options = {});
CommandResult run_spectrum(const RunConfig& config, const CommandOptions& options = {});
CommandResult run_time_delay(const RunConfig& config, const CommandOptions& options = {});
CommandResult run_broadband(const RunConfig& config, const CommandOptions& options = {});
CommandResult run_entangle(const RunConfig& config, const CommandOptions& options = {});
CommandResult run_calibrate(const RunConfig& config, const CommandOptions& options = {});

// "%.17g"
std::string format_number(double x);

}  // namespace dce
