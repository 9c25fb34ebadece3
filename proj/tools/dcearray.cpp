// dcearray: photon statistics of a modulated waveguide array, as CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dce/commands.hpp"
#include "dce/config.hpp"
#include "dce/error.hpp"

int run_oracle_check(int sets, unsigned seed, int cutoff, std::ostream& out);

namespace {

struct KeyFlag {
  std::string key;
  std::string value;
};

std::string kebab(std::string key) {
  for (char& c : key)
    if (c == '_') c = '-';
  return key;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dce::Error(dce::ErrorCode::RangeError, "cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw dce::Error(dce::ErrorCode::RangeError, "cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical-Casimir photon statistics of coupled waveguide arrays"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    dce::CommandResult (*run)(const dce::RunConfig&, const dce::CommandOptions&);
    CLI::App* sub = nullptr;
  };
  std::vector<Command> commands{
      {"sweep", "single-frequency intensities, g2 and entanglement over a theta/T grid", dce::run_sweep},
      {"spectrum", "output photon flux spectral density n_i(omega)", dce::run_spectrum},
      {"time-delay", "broadband G2_ij(tau) / G2_ii(0)", dce::run_time_delay},
      {"broadband", "broadband normalized g2 over theta", dce::run_broadband},
      {"entangle", "post-selected two-qutrit state: entropy and fidelities", dce::run_entangle},
      {"calibrate", "dA0 giving a target peak occupancy", dce::run_calibrate},
  };

  std::string config_path;
  std::vector<KeyFlag> flags;
  for (const auto& key : dce::config_keys()) flags.push_back({key, {}});
  dce::CommandOptions options;
  bool serial = false;
  std::string rho_out;

  for (auto& cmd : commands) {
    cmd.sub = app.add_subcommand(cmd.name, cmd.help);
    cmd.sub->add_option("--config", config_path, "key=value configuration file");
    for (auto& f : flags) cmd.sub->add_option("--" + kebab(f.key), f.value, "config key " + f.key);
    cmd.sub->add_flag("--serial", serial, "evaluate grid points on one thread");
  }
  auto* spectrum = commands[1].sub;
  spectrum->add_option("--omega-points", options.omega_points, "frequency grid points")
      ->capture_default_str();
  auto* delay = commands[2].sub;
  delay->add_option("--tau-points", options.tau_points, "tau grid points")->capture_default_str();
  delay->add_option("--tau-max", options.tau_max_phase, "largest omega_d tau")->capture_default_str();
  delay->add_option("--site", options.site, "reference waveguide (1-based)")->capture_default_str();
  commands[4].sub->add_option("--rho-out", rho_out, "write the 9x9 density matrices here");

  int sets = 50, cutoff = 30;
  unsigned seed = 20240601;
  auto* oracle = app.add_subcommand("oracle-check", "compare the Gaussian path with the Fock oracle");
  oracle->group("");
  oracle->add_option("--sets", sets)->capture_default_str();
  oracle->add_option("--seed", seed)->capture_default_str();
  oracle->add_option("--cutoff", cutoff)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (oracle->parsed()) return run_oracle_check(sets, seed, cutoff, std::cout);

  for (const auto& cmd : commands) {
    if (!cmd.sub->parsed()) continue;
    dce::RunConfig config;
    try {
      dce::Overrides overrides;
      for (const auto& f : flags) {
        if (cmd.sub->get_option("--" + kebab(f.key))->count() > 0) overrides.emplace_back(f.key, f.value);
      }
      config = dce::parse_config(config_path.empty() ? std::string() : read_file(config_path), overrides);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "dcearray: configuration error: %s\n", e.what());
      return 1;
    }
    options.exec = serial ? dce::Exec::Serial : dce::Exec::Parallel;
    options.rho = !rho_out.empty();
    try {
      const auto result = cmd.run(config, options);
      emit(config.out, result.csv);
      if (options.rho) emit(rho_out, result.rho_csv);
      if (result.partial()) {
        std::fprintf(stderr, "dcearray: %zu of %zu rows failed\n", result.failed_rows, result.rows);
        return 2;
      }
      return 0;
    } catch (const dce::Error& e) {
      std::fprintf(stderr, "dcearray: %s\n", e.what());
      return 1;
    }
  }
  return 1;
}
