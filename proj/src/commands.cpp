#include "dce/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "dce/correlations.hpp"
#include "dce/error.hpp"
#include "dce/quantum_state.hpp"
#include "dce/spectral.hpp"

namespace dce {

namespace {

using Cell = std::optional<double>;

struct Row {
  std::vector<Cell> cells;
  std::string error;
};

std::string describe(const std::exception& e) {
  std::string msg = e.what();
  for (char& ch : msg)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return msg;
}

const char* topology_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::OpenChain: return "open_chain";
    case TopologyKind::Ring: return "ring";
    case TopologyKind::CustomGraph: return "custom";
  }
  return "?";
}

std::string metadata(const char* command, const RunConfig& c, double da0) {
  std::ostringstream s;
  s << "# dcearray " << command << "\n"
    << "# topology=" << topology_name(c.topology) << " n=" << c.n
    << " a0_joule=" << format_number(c.a0) << " da0_joule=" << format_number(da0)
    << " phi_rad=" << format_number(c.phi) << "\n"
    << "# omega_d_rad_s=" << format_number(c.omega_d) << " z0_ohm=" << format_number(c.z0)
    << " v_m_s=" << format_number(c.v) << "\n";
  return s.str();
}

void write_header(std::ostringstream& s, const std::vector<std::string>& columns) {
  s << "# ";
  for (std::size_t k = 0; k < columns.size(); ++k) s << (k ? "," : "") << columns[k];
  s << ",error\n";
}

void write_rows(std::ostringstream& s, const std::vector<Row>& rows, CommandResult& result) {
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < r.cells.size(); ++k) {
      if (k) s << ',';
      if (r.cells[k]) s << format_number(*r.cells[k]);
    }
    s << ',' << r.error << '\n';
    ++result.rows;
    if (!r.error.empty()) ++result.failed_rows;
  }
}

void write_status(std::ostringstream& s, const CommandResult& result) {
  if (result.failed_rows == 0)
    s << "# status: ok (" << result.rows << " rows)\n";
  else
    s << "# status: partial (" << result.failed_rows << " of " << result.rows << " rows failed)\n";
}

std::size_t parse_index(const std::string& token, std::string_view digits, std::size_t n) {
  std::size_t k = 0;
  if (digits.empty()) throw Error(ErrorCode::RangeError, "bad observable '" + token + "'");
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw Error(ErrorCode::RangeError, "bad observable '" + token + "'");
    k = 10 * k + static_cast<std::size_t>(ch - '0');
  }
  if (k < 1 || k > n)
    throw Error(ErrorCode::RangeError, "observable '" + token + "' index out of range 1.." + std::to_string(n));
  return k - 1;
}

// "a_b" -> (a, b)
std::pair<std::size_t, std::size_t> parse_pair(const std::string& token, std::string_view rest,
                                               std::size_t n) {
  const auto us = rest.find('_');
  if (us == std::string_view::npos) throw Error(ErrorCode::RangeError, "bad observable '" + token + "'");
  return {parse_index(token, rest.substr(0, us), n), parse_index(token, rest.substr(us + 1), n)};
}

std::string pair_name(const char* prefix, std::size_t i, std::size_t j) {
  return std::string(prefix) + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

// Everything one (theta, T) point can report, computed on demand.
class PointEvaluator {
 public:
  PointEvaluator(const RunConfig& c, const LaplacianSpectrum& spectrum, double da0, double theta,
                 double temperature)
      : spectrum_(spectrum), temperature_(temperature) {
    DriveParams d = c.drive(theta);
    d.dA0 = da0;
    modes_ = mode_response(d, c.line(), spectrum);
  }

  const ModeResponse& modes() const { return modes_; }

  const CorrelationSet& correlations() {
    if (!corr_)
      corr_ = temperature_ == 0.0 ? g2_zero_T(modes_, spectrum_, Exec::Serial)
                                  : g2_thermal(modes_, spectrum_, temperature_, Exec::Serial);
    return *corr_;
  }

  const TruncatedDensityMatrix& gaussian_rho() {
    if (!rho_) rho_ = density_matrix(output_gaussian(modes_, spectrum_, temperature_), true);
    return *rho_;
  }

  const PairState& pair_state() {
    if (!pair_) pair_ = perturbative_pure_state(modes_, spectrum_);
    return *pair_;
  }

  const TruncatedDensityMatrix& pair_rho() {
    if (!pair_rho_) pair_rho_ = pure_density_matrix(pair_state());
    return *pair_rho_;
  }

  double value(const Observable& o) {
    using K = Observable::Kind;
    const bool two = spectrum_.size() == 2;
    switch (o.kind) {
      case K::Intensity: return correlations().intensities[o.i];
      case K::G2: return correlations().g2(o.i, o.j);
      case K::CauchySchwarz: return cauchy_schwarz(correlations(), o.i, o.j);
      case K::Entropy:
        require_two(two, o);
        return von_neumann_entropy(gaussian_rho(), 0);
      case K::NoonFidelity:
        if (two) return noon_fidelity(gaussian_rho());
        if (temperature_ != 0.0)
          throw Error(ErrorCode::InvalidParameter, "f_noon for n > 2 is available at T = 0 only");
        return noon_fidelity(pair_state());
      case K::Eq10Fidelity:
        require_two(two, o);
        return maximally_entangled_fidelity(gaussian_rho());
      case K::EntropyPerturbative:
        require_two(two, o);
        return von_neumann_entropy(pair_rho(), 0);
      case K::NoonFidelityPerturbative: return noon_fidelity(pair_state());
      case K::Eq10FidelityPerturbative:
        require_two(two, o);
        return maximally_entangled_fidelity(pair_rho());
    }
    return 0.0;
  }

 private:
  static void require_two(bool two, const Observable& o) {
    if (!two) throw Error(ErrorCode::InvalidParameter, o.name + " needs exactly two waveguides");
  }

  const LaplacianSpectrum& spectrum_;
  double temperature_;
  ModeResponse modes_;
  std::optional<CorrelationSet> corr_;
  std::optional<TruncatedDensityMatrix> rho_;
  std::optional<PairState> pair_;
  std::optional<TruncatedDensityMatrix> pair_rho_;
};

struct GridPoint {
  double theta;
  double temperature_mk;
};

std::vector<GridPoint> grid(const RunConfig& c) {
  std::vector<GridPoint> g;
  const auto thetas = c.theta_grid();
  for (double t : c.temperature_mk)
    for (double th : thetas) g.push_back({th, t});
  return g;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<Observable> expand_observables(const std::vector<std::string>& tokens, std::size_t n) {
  using K = Observable::Kind;
  std::vector<Observable> out;
  auto starts = [](const std::string& s, std::string_view p) { return s.rfind(p, 0) == 0; };
  for (const auto& t : tokens) {
    if (t == "n") {
      for (std::size_t i = 0; i < n; ++i) out.push_back({K::Intensity, i, i, "n_" + std::to_string(i + 1)});
    } else if (t == "g2") {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) out.push_back({K::G2, i, j, pair_name("g2_", i, j)});
    } else if (t == "cs") {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          out.push_back({K::CauchySchwarz, i, j, pair_name("cs_violation_", i, j)});
    } else if (t == "entropy") {
      out.push_back({K::Entropy, 0, 0, t});
    } else if (t == "f_noon") {
      out.push_back({K::NoonFidelity, 0, 0, t});
    } else if (t == "f_eq10") {
      out.push_back({K::Eq10Fidelity, 0, 0, t});
    } else if (t == "entropy_pt") {
      out.push_back({K::EntropyPerturbative, 0, 0, t});
    } else if (t == "f_noon_pt") {
      out.push_back({K::NoonFidelityPerturbative, 0, 0, t});
    } else if (t == "f_eq10_pt") {
      out.push_back({K::Eq10FidelityPerturbative, 0, 0, t});
    } else if (starts(t, "g2_row_")) {
      const auto i = parse_index(t, std::string_view(t).substr(7), n);
      for (std::size_t j = 0; j < n; ++j) out.push_back({K::G2, i, j, pair_name("g2_", i, j)});
    } else if (starts(t, "cs_violation_")) {
      const auto [i, j] = parse_pair(t, std::string_view(t).substr(13), n);
      out.push_back({K::CauchySchwarz, i, j, pair_name("cs_violation_", i, j)});
    } else if (starts(t, "g2_")) {
      const auto [i, j] = parse_pair(t, std::string_view(t).substr(3), n);
      out.push_back({K::G2, i, j, pair_name("g2_", i, j)});
    } else if (starts(t, "n_")) {
      const auto i = parse_index(t, std::string_view(t).substr(2), n);
      out.push_back({K::Intensity, i, i, "n_" + std::to_string(i + 1)});
    } else {
      throw Error(ErrorCode::RangeError, "unknown observable '" + t + "'");
    }
  }
  return out;
}

double resolve_da0(const RunConfig& c) {
  if (!c.target_occupancy) return *c.da0;
  const auto spectrum = spectrum_of(c.array());
  const double seed = c.drive(0.0).dA0;
  double peak = 0.0;
  std::optional<Error> failure;
  for (double theta : c.theta_grid()) {
    try {
      const auto modes = mode_response(c.drive(theta), c.line(), spectrum);
      const auto n = intensities(modes, spectrum, Exec::Serial);
      peak = std::max(peak, *std::max_element(n.begin(), n.end()));
    } catch (const Error& e) {
      failure = e;
    }
  }
  if (!(peak > 0.0)) {
    if (failure) throw *failure;
    throw Error(ErrorCode::NoResponse, "drive produces no photons anywhere on the theta grid");
  }
  return seed * std::sqrt(*c.target_occupancy / peak);
}

CommandResult run_sweep(const RunConfig& c, const CommandOptions& options) {
  const auto columns = expand_observables(c.observables, c.n);
  const auto spectrum = spectrum_of(c.array());
  const double da0 = resolve_da0(c);
  const auto points = grid(c);

  std::vector<Row> rows(points.size());
  for_each_index(points.size(), options.exec, worker_count(), [&](std::size_t k) {
    Row& r = rows[k];
    const auto& p = points[k];
    r.cells = {p.theta, c.phi, p.temperature_mk};
    r.cells.resize(3 + columns.size());
    try {
      PointEvaluator eval(c, spectrum, da0, p.theta, p.temperature_mk * 1e-3);
      for (std::size_t m = 0; m < columns.size(); ++m) {
        try {
          r.cells[3 + m] = eval.value(columns[m]);
        } catch (const std::exception& e) {
          if (r.error.empty()) r.error = columns[m].name + ": " + describe(e);
        }
      }
    } catch (const std::exception& e) {
      r.error = describe(e);
    }
  });

  CommandResult result;
  std::ostringstream s;
  s << metadata("sweep", c, da0);
  std::vector<std::string> names{"theta", "phi", "temperature_mk"};
  for (const auto& o : columns) names.push_back(o.name);
  write_header(s, names);
  write_rows(s, rows, result);
  write_status(s, result);
  result.csv = s.str();
  return result;
}

CommandResult run_spectrum(const RunConfig& c, const CommandOptions& options) {
  const auto spectrum = spectrum_of(c.array());
  const double da0 = resolve_da0(c);
  SpectralConfig sc;
  sc.omega_d = c.omega_d;
  sc.omega_points = options.omega_points;
  sc.line = c.line();
  const auto freqs = frequency_grid(sc);

  std::vector<Row> rows;
  for (const auto& p : grid(c)) {
    std::optional<Matrix> table;
    std::string error;
    try {
      DriveParams d = c.drive(p.theta);
      d.dA0 = da0;
      const auto modes = mode_response(d, c.line(), spectrum);
      sc.temperature = p.temperature_mk * 1e-3;
      table = flux_spectrum(modes, spectrum, sc, options.exec);
    } catch (const std::exception& e) {
      error = describe(e);
    }
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      Row r;
      r.cells = {p.theta, p.temperature_mk, freqs[k]};
      for (std::size_t i = 0; i < c.n; ++i) r.cells.push_back(table ? Cell((*table)(i, k)) : Cell());
      r.error = error;
      rows.push_back(std::move(r));
    }
  }

  CommandResult result;
  std::ostringstream s;
  s << metadata("spectrum", c, da0);
  std::vector<std::string> names{"theta", "temperature_mk", "omega_rad_s"};
  for (std::size_t i = 0; i < c.n; ++i) names.push_back("n_" + std::to_string(i + 1));
  write_header(s, names);
  write_rows(s, rows, result);
  write_status(s, result);
  result.csv = s.str();
  return result;
}

CommandResult run_time_delay(const RunConfig& c, const CommandOptions& options) {
  if (options.site < 1 || options.site > c.n)
    throw Error(ErrorCode::RangeError, "site must lie in 1.." + std::to_string(c.n));
  if (options.tau_points < 1) throw Error(ErrorCode::RangeError, "tau points must be >= 1");
  if (!(options.tau_max_phase >= 0.0)) throw Error(ErrorCode::RangeError, "tau max must be >= 0");
  const std::size_t i = options.site - 1;
  const auto spectrum = spectrum_of(c.array());
  const double da0 = resolve_da0(c);
  SpectralConfig sc;
  sc.omega_d = c.omega_d;
  sc.line = c.line();
  sc.tau = SpectralConfig::default_tau(c.omega_d, options.tau_points, options.tau_max_phase);

  std::vector<Row> rows;
  for (double theta : c.theta_grid()) {
    std::optional<Matrix> table;
    std::string error;
    try {
      DriveParams d = c.drive(theta);
      d.dA0 = da0;
      table = time_delay_table(i, mode_response(d, c.line(), spectrum), spectrum, sc, options.exec);
    } catch (const std::exception& e) {
      error = describe(e);
    }
    for (std::size_t k = 0; k < sc.tau.size(); ++k) {
      Row r;
      r.cells = {theta, sc.tau[k], c.omega_d * sc.tau[k]};
      for (std::size_t j = 0; j < c.n; ++j) r.cells.push_back(table ? Cell((*table)(k, j)) : Cell());
      r.error = error;
      rows.push_back(std::move(r));
    }
  }

  CommandResult result;
  std::ostringstream s;
  s << metadata("time-delay", c, da0) << "# G2_ij(tau) / G2_ii(0) at T = 0, i = " << options.site << "\n";
  std::vector<std::string> names{"theta", "tau_s", "omega_d_tau"};
  for (std::size_t j = 0; j < c.n; ++j) names.push_back(pair_name("g2_", i, j));
  write_header(s, names);
  write_rows(s, rows, result);
  write_status(s, result);
  result.csv = s.str();
  return result;
}

CommandResult run_broadband(const RunConfig& c, const CommandOptions& options) {
  const auto spectrum = spectrum_of(c.array());
  const double da0 = resolve_da0(c);
  const auto thetas = c.theta_grid();
  const std::size_t n = c.n;
  const std::size_t pairs = n * (n + 1) / 2;

  std::vector<Row> rows(thetas.size());
  for_each_index(thetas.size(), options.exec, worker_count(), [&](std::size_t k) {
    Row& r = rows[k];
    r.cells = {thetas[k], c.phi};
    r.cells.resize(2 + n + pairs);
    try {
      DriveParams d = c.drive(thetas[k]);
      d.dA0 = da0;
      const auto modes = mode_response(d, c.line(), spectrum);
      for (std::size_t i = 0; i < n; ++i) r.cells[2 + i] = g1_broadband(i, modes, spectrum, c.line());
      std::size_t col = 2 + n;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j, ++col) {
          try {
            r.cells[col] = g2_broadband_normalized(i, j, modes, spectrum, c.line());
          } catch (const std::exception& e) {
            if (r.error.empty()) r.error = describe(e);
          }
        }
    } catch (const std::exception& e) {
      r.error = describe(e);
    }
  });

  CommandResult result;
  std::ostringstream s;
  s << metadata("broadband", c, da0)
    << "# g2_i_j = G2_ij(0) / sqrt(G1_i G1_j) / ((hbar Z0 / 4 pi) (omega_d / 2)^2); G1 in W\n";
  std::vector<std::string> names{"theta", "phi"};
  for (std::size_t i = 0; i < n; ++i) names.push_back("g1_" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) names.push_back(pair_name("g2_", i, j));
  write_header(s, names);
  write_rows(s, rows, result);
  write_status(s, result);
  result.csv = s.str();
  return result;
}

CommandResult run_entangle(const RunConfig& c, const CommandOptions& options) {
  if (c.n != 2) throw Error(ErrorCode::RangeError, "entangle needs n = 2");
  const auto spectrum = spectrum_of(c.array());
  const double da0 = resolve_da0(c);
  const auto points = grid(c);

  std::vector<Row> rows(points.size());
  std::vector<std::optional<TruncatedDensityMatrix>> rhos(points.size());
  for_each_index(points.size(), options.exec, worker_count(), [&](std::size_t k) {
    Row& r = rows[k];
    const auto& p = points[k];
    r.cells = {p.theta, p.temperature_mk};
    r.cells.resize(2 + 9);
    try {
      PointEvaluator eval(c, spectrum, da0, p.theta, p.temperature_mk * 1e-3);
      const auto& rho = eval.gaussian_rho();
      rhos[k] = rho;
      r.cells[2] = std::max(eval.correlations().intensities[0], eval.correlations().intensities[1]);
      r.cells[3] = von_neumann_entropy(rho, 0);
      r.cells[4] = total_entropy(rho);
      r.cells[5] = purity(rho);
      r.cells[6] = noon_fidelity(rho);
      r.cells[7] = maximally_entangled_fidelity(rho);
      r.cells[8] = von_neumann_entropy(eval.pair_rho(), 0);
      r.cells[9] = noon_fidelity(eval.pair_state());
      r.cells[10] = maximally_entangled_fidelity(eval.pair_rho());
    } catch (const std::exception& e) {
      r.error = describe(e);
    }
  });

  CommandResult result;
  std::ostringstream s;
  s << metadata("entangle", c, da0);
  write_header(s, {"theta", "temperature_mk", "n_max", "entropy", "entropy_total", "purity", "f_noon",
                   "f_eq10", "entropy_pt", "f_noon_pt", "f_eq10_pt"});
  write_rows(s, rows, result);
  write_status(s, result);
  result.csv = s.str();

  if (options.rho) {
    static const char* labels[9] = {"00", "01", "02", "10", "11", "12", "20", "21", "22"};
    std::ostringstream q;
    q << metadata("entangle rho", c, da0)
      << "# post-selected rho(bra, ket) = <bra|rho|ket>, basis |n1 n2>\n"
      << "# theta,temperature_mk,bra,ket,re,im\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (!rhos[k]) continue;
      for (std::size_t a = 0; a < 9; ++a)
        for (std::size_t b = 0; b < 9; ++b) {
          const cplx z = rhos[k]->rho(a, b);
          q << format_number(points[k].theta) << ',' << format_number(points[k].temperature_mk) << ','
            << labels[a] << ',' << labels[b] << ',' << format_number(z.real()) << ','
            << format_number(z.imag()) << '\n';
        }
    }
    q << "# status: " << (result.partial() ? "partial" : "ok") << "\n";
    result.rho_csv = q.str();
  }
  return result;
}

CommandResult run_calibrate(const RunConfig& c, const CommandOptions&) {
  const auto spectrum = spectrum_of(c.array());
  const auto thetas = c.theta_grid();
  const double target = c.target_occupancy.value_or(0.1);
  std::optional<double> global;
  std::string global_error;
  try {
    RunConfig g = c;
    if (!g.target_occupancy) {
      g.target_occupancy = target;
      g.da0.reset();
    }
    global = resolve_da0(g);
  } catch (const std::exception& e) {
    global_error = describe(e);
  }

  std::vector<Row> rows(thetas.size());
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    Row& r = rows[k];
    r.cells = {thetas[k], target, Cell(), Cell()};
    try {
      DriveParams seed = c.drive(thetas[k]);
      seed.dA0 = 1e-3 * c.a0;
      const auto d = calibrate_dA0(seed, c.line(), spectrum, target);
      r.cells[2] = d.dA0;
      const auto modes = mode_response(d, c.line(), spectrum);
      double eps = 0.0;
      for (double e : modes.eps) eps = std::max(eps, std::abs(e));
      r.cells[3] = eps;
    } catch (const std::exception& e) {
      r.error = describe(e);
    }
  }

  CommandResult result;
  std::ostringstream s;
  s << metadata("calibrate", c, global.value_or(0.0));
  if (global)
    s << "# grid-wide da0_joule=" << format_number(*global) << "\n";
  else
    s << "# grid-wide da0_joule unavailable: " << global_error << "\n";
  write_header(s, {"theta", "target_occupancy", "da0_joule", "eps_max"});
  write_rows(s, rows, result);
  write_status(s, result);
  result.csv = s.str();
  return result;
}

}  // namespace dce
