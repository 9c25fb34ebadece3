#include "dce/correlations.hpp"

#include <cmath>
#include <string>

#include "dce/constants.hpp"
#include "dce/error.hpp"

namespace dce {

double thermal_occupation(double omega, double temperature) {
  if (temperature < 0.0) throw Error(ErrorCode::RangeError, "temperature must be >= 0");
  if (temperature == 0.0 || omega <= 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

std::vector<double> intensities(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                                Exec exec) {
  std::vector<double> w(modes.size());
  for (std::size_t n = 0; n < w.size(); ++n) w[n] = modes.eps[n] * modes.eps[n];
  return kernels::mode_sum_diagonal(spectrum.modes, w, exec);
}

Matrix pair_amplitude(const ModeResponse& modes, const LaplacianSpectrum& spectrum, Exec exec) {
  return kernels::mode_sum(spectrum.modes, modes.eps, exec);
}

namespace {

void normalize(CorrelationSet& c) {
  const std::size_t n = c.intensities.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(c.intensities[i] > 0.0))
      throw Error(ErrorCode::ZeroIntensity, "waveguide " + std::to_string(i + 1) + " emits no photons");
  c.g2 = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c.g2(i, j) = c.G2(i, j) / std::sqrt(c.intensities[i] * c.intensities[j]);
}

}  // namespace

CorrelationSet g2_zero_T(const ModeResponse& modes, const LaplacianSpectrum& spectrum, Exec exec) {
  CorrelationSet c;
  c.intensities = intensities(modes, spectrum, exec);
  c.pair_amplitude = pair_amplitude(modes, spectrum, exec);
  const std::size_t n = c.intensities.size();
  c.G2 = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.G2(i, j) = c.pair_amplitude(i, j) * c.pair_amplitude(i, j);
  normalize(c);
  return c;
}

CorrelationSet g2_thermal(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                          double temperature, Exec exec) {
  CorrelationSet c;
  c.temperature = temperature;
  const double nt = thermal_occupation(modes.omega_d / 2.0, temperature);
  c.thermal_occupation = nt;

  std::vector<double> p(modes.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = nt + (1.0 + nt) * modes.eps[k] * modes.eps[k];
  const Matrix q = kernels::mode_sum(spectrum.modes, p, exec);
  c.pair_amplitude = pair_amplitude(modes, spectrum, exec);

  const std::size_t n = p.size();
  c.intensities.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.intensities[i] = q(i, i);
  const double stim = (2.0 * nt + 1.0) * (2.0 * nt + 1.0);
  c.G2 = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double m = c.pair_amplitude(i, j);
      c.G2(i, j) = stim * m * m + q(i, j) * q(i, j) + c.intensities[i] * c.intensities[j];
    }
  normalize(c);
  return c;
}

double cauchy_schwarz(const CorrelationSet& corr, std::size_t i, std::size_t j) {
  const std::size_t n = corr.intensities.size();
  if (i >= n || j >= n) throw Error(ErrorCode::RangeError, "waveguide index out of range");
  const double ni = corr.intensities[i], nj = corr.intensities[j];
  if (std::abs(ni - nj) > 1e-9 * std::max(std::abs(ni), std::abs(nj)))
    throw Error(ErrorCode::AsymmetricModes, "Cauchy-Schwarz test needs N_i == N_j");
  return corr.g2(i, j) - corr.g2(i, i);
}

}  // namespace dce
