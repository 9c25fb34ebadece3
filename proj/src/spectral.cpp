#include "dce/spectral.hpp"

#include <cmath>
#include <string>

#include "dce/constants.hpp"
#include "dce/correlations.hpp"
#include "dce/error.hpp"

namespace dce {

namespace {

constexpr cplx kI{0.0, 1.0};

double voltage_scale(const LineParams& line) {
  return constants::hbar * line.Z0 / (4.0 * constants::pi);
}

// K(x) = int_0^1 u (1 - u) exp(i x u) du, so that J(tau) = w_d^3 K(w_d tau).
cplx unit_pair_kernel(double x) {
  if (std::abs(x) <= 2.0) {
    cplx term = 1.0, sum = 0.0;
    for (int k = 0; k < 40; ++k) {
      if (k > 0) term *= kI * x / static_cast<double>(k);
      sum += term / static_cast<double>((k + 2) * (k + 3));
    }
    return sum;
  }
  const double x2 = x * x, x3 = x2 * x;
  const cplx e = std::exp(kI * x);
  return e * (-1.0 / x2 - 2.0 * kI / x3) - 1.0 / x2 + 2.0 * kI / x3;
}

void check_mode(std::size_t mode, const ModeResponse& modes) {
  if (mode >= modes.size()) throw Error(ErrorCode::RangeError, "mode index out of range");
}

void check_site(std::size_t site, const LaplacianSpectrum& spectrum) {
  if (site >= spectrum.size()) throw Error(ErrorCode::RangeError, "waveguide index out of range");
}

// sum_n c_n^i c_n^j deltaL_n / v
double pair_weight(std::size_t i, std::size_t j, const ModeResponse& modes,
                   const LaplacianSpectrum& spectrum) {
  double s = 0.0;
  for (std::size_t n = 0; n < modes.size(); ++n)
    s += spectrum.modes(n, i) * spectrum.modes(n, j) * modes.deltaL[n] / modes.v;
  return s;
}

}  // namespace

std::vector<double> SpectralConfig::default_tau(double omega_d, std::size_t points,
                                                double max_phase) {
  std::vector<double> tau(points);
  for (std::size_t k = 0; k < points; ++k)
    tau[k] = points > 1 ? max_phase * static_cast<double>(k) / static_cast<double>(points - 1) / omega_d
                        : 0.0;
  return tau;
}

void validate(const SpectralConfig& c) {
  if (!(c.omega_d > 0.0)) throw Error(ErrorCode::InvalidParameter, "omega_d must be > 0");
  if (c.omega_points < 16) throw Error(ErrorCode::RangeError, "frequency grid needs >= 16 points");
  if (c.temperature < 0.0) throw Error(ErrorCode::RangeError, "temperature must be >= 0");
  validate(c.line);
}

cplx scattering(std::size_t mode, double omega1, double omega2, const ModeResponse& modes) {
  check_mode(mode, modes);
  if (omega1 <= 0.0 || omega2 <= 0.0) return 0.0;
  return -kI * (modes.deltaL[mode] / modes.v) * std::sqrt(omega1 * omega2);
}

double photon_flux_density(std::size_t site, double omega, const ModeResponse& modes,
                           const LaplacianSpectrum& spectrum, double temperature) {
  check_site(site, spectrum);
  double parametric = 0.0;
  for (std::size_t n = 0; n < modes.size(); ++n) {
    const double c = spectrum.modes(n, site);
    parametric += c * c * std::norm(scattering(n, omega, modes.omega_d - omega, modes));
  }
  if (temperature == 0.0) return parametric;
  const double idler = modes.omega_d - omega;
  return thermal_occupation(omega, temperature) +
         parametric * (1.0 + thermal_occupation(idler, temperature));
}

std::vector<double> frequency_grid(const SpectralConfig& config) {
  validate(config);
  std::vector<double> w(config.omega_points);
  const double step = config.omega_d / static_cast<double>(config.omega_points + 1);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = step * static_cast<double>(k + 1);
  return w;
}

Matrix flux_spectrum(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                     const SpectralConfig& config, Exec exec) {
  const auto grid = frequency_grid(config);
  const std::size_t sites = spectrum.size();
  Matrix out(sites, grid.size());
  for_each_index(grid.size(), exec, worker_count(), [&](std::size_t k) {
    for (std::size_t i = 0; i < sites; ++i)
      out(i, k) = photon_flux_density(i, grid[k], modes, spectrum, config.temperature);
  });
  return out;
}

cplx pair_kernel(double omega_d, double tau) {
  return omega_d * omega_d * omega_d * unit_pair_kernel(omega_d * tau);
}

cplx pair_kernel_quadrature(double omega_d, double tau, double rel_tol) {
  const double x = omega_d * tau;
  auto f = [x](double u) { return u * (1.0 - u) * std::exp(kI * x * u); };
  // Tolerance relative to J(0) = w_d^3 / 6.
  const cplx k = adaptive_simpson(f, 0.0, 1.0, rel_tol / 6.0);
  return omega_d * omega_d * omega_d * k;
}

cplx mode_integral(std::size_t mode, double tau, const ModeResponse& modes, bool verify) {
  check_mode(mode, modes);
  const cplx closed = -kI * (modes.deltaL[mode] / modes.v) * pair_kernel(modes.omega_d, tau);
  if (!verify) return closed;
  const double wd = modes.omega_d;
  auto f = [&](double w) {
    return std::sqrt(w * (wd - w)) * scattering(mode, w, wd - w, modes) * std::exp(kI * w * tau);
  };
  const double scale = std::abs(modes.deltaL[mode] / modes.v) * wd * wd * wd / 6.0;
  const cplx quad = adaptive_simpson(f, 0.0, wd, 1e-13 * scale);
  if (std::abs(quad - closed) > 1e-9 * std::abs(closed) + 1e-300)
    throw Error(ErrorCode::QuadratureDisagreement,
                "I_n(tau) closed form and quadrature differ at omega_d tau = " +
                    std::to_string(wd * tau));
  return closed;
}

double g1_broadband(std::size_t site, const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                    const LineParams& line) {
  check_site(site, spectrum);
  const double wd = modes.omega_d;
  double s = 0.0;
  for (std::size_t n = 0; n < modes.size(); ++n) {
    const double c = spectrum.modes(n, site);
    const double r = modes.deltaL[n] / modes.v;
    s += c * c * r * r;
  }
  return voltage_scale(line) * s * wd * wd * wd * wd / 12.0;
}

double g1_broadband_quadrature(std::size_t site, const ModeResponse& modes,
                               const LaplacianSpectrum& spectrum, const LineParams& line) {
  check_site(site, spectrum);
  const double wd = modes.omega_d;
  double total = 0.0;
  for (std::size_t n = 0; n < modes.size(); ++n) {
    const double c = spectrum.modes(n, site);
    auto f = [&](double w) -> cplx { return w * std::norm(scattering(n, w, wd - w, modes)); };
    const double r = modes.deltaL[n] / modes.v;
    const double scale = r * r * wd * wd * wd * wd / 12.0;
    total += c * c * adaptive_simpson(f, 0.0, wd, 1e-14 * scale + 1e-300).real();
  }
  return voltage_scale(line) * total;
}

double g2_broadband(std::size_t i, std::size_t j, double tau, const ModeResponse& modes,
                    const LaplacianSpectrum& spectrum, const LineParams& line, bool verify) {
  check_site(i, spectrum);
  check_site(j, spectrum);
  const cplx kernel = pair_kernel(modes.omega_d, tau);
  if (verify) {
    const cplx quad = pair_kernel_quadrature(modes.omega_d, tau);
    if (std::abs(quad - kernel) > 1e-9 * std::abs(kernel))
      throw Error(ErrorCode::QuadratureDisagreement,
                  "pair kernel closed form and quadrature differ at omega_d tau = " +
                      std::to_string(modes.omega_d * tau));
  }
  // sum_n c_n^i c_n^j I_n = -i J(tau) sum_n c_n^i c_n^j deltaL_n / v
  const cplx sum = -kI * kernel * pair_weight(i, j, modes, spectrum);
  const double vs = voltage_scale(line);
  return vs * vs * std::norm(sum);
}

double g2_broadband_normalized(std::size_t i, std::size_t j, const ModeResponse& modes,
                               const LaplacianSpectrum& spectrum, const LineParams& line) {
  const double g1i = g1_broadband(i, modes, spectrum, line);
  const double g1j = g1_broadband(j, modes, spectrum, line);
  if (!(g1i > 0.0) || !(g1j > 0.0))
    throw Error(ErrorCode::ZeroIntensity, "broadband intensity vanishes");
  const double half = modes.omega_d / 2.0;
  const double unit = voltage_scale(line) * half * half;
  return g2_broadband(i, j, 0.0, modes, spectrum, line) / std::sqrt(g1i * g1j) / unit;
}

Matrix time_delay_table(std::size_t i, const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                        const SpectralConfig& config, Exec exec) {
  check_site(i, spectrum);
  const std::size_t sites = spectrum.size();
  const double ref = g2_broadband(i, i, 0.0, modes, spectrum, config.line);
  if (!(ref > 0.0)) throw Error(ErrorCode::ZeroIntensity, "G2_ii(0) vanishes");
  Matrix out(config.tau.size(), sites);
  std::vector<std::string> failures(config.tau.size());
  for_each_index(config.tau.size(), exec, worker_count(), [&](std::size_t k) {
    try {
      for (std::size_t j = 0; j < sites; ++j)
        out(k, j) = g2_broadband(i, j, config.tau[k], modes, spectrum, config.line) / ref;
    } catch (const std::exception& e) {
      failures[k] = e.what();
    }
  });
  for (const auto& f : failures)
    if (!f.empty()) throw Error(ErrorCode::QuadratureDisagreement, f);
  return out;
}

}  // namespace dce
