#include "dce/drive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dce/correlations.hpp"
#include "dce/error.hpp"

namespace dce {

void validate(const DriveParams& d) {
  if (!(d.A0 > 0.0) || !std::isfinite(d.A0)) throw Error(ErrorCode::InvalidParameter, "A0 must be > 0");
  if (!(d.dA0 >= 0.0) || !std::isfinite(d.dA0)) throw Error(ErrorCode::InvalidParameter, "dA0 must be >= 0");
  if (!(d.omega_d > 0.0) || !std::isfinite(d.omega_d))
    throw Error(ErrorCode::InvalidParameter, "omega_d must be > 0");
  if (!std::isfinite(d.phi) || !std::isfinite(d.theta))
    throw Error(ErrorCode::InvalidParameter, "drive angles must be finite");
}

void validate(const LineParams& line) {
  if (!(line.Z0 > 0.0) || !(line.v > 0.0))
    throw Error(ErrorCode::InvalidParameter, "Z0 and v must be > 0");
}

ModeResponse mode_response(const DriveParams& drive, const LineParams& line,
                           const LaplacianSpectrum& spectrum) {
  validate(drive);
  validate(line);
  const std::size_t n = spectrum.size();
  const double flux_scale = std::pow(LineParams::flux_quantum / (2.0 * constants::pi), 2);
  const double pair_scale = drive.omega_d / (2.0 * line.v);

  ModeResponse r;
  r.omega_d = drive.omega_d;
  r.v = line.v;
  r.outside_perturbative = drive.dA0 > 0.1 * drive.A0;
  r.Lambda0.resize(n);
  r.dLambda.resize(n);
  r.deltaL.resize(n);
  r.eps.resize(n);
  const double sp = std::sin(drive.phi), cp = std::cos(drive.phi);
  const double st = std::sin(drive.theta), ct = std::cos(drive.theta);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = spectrum.lambdas[k];
    const double stat = sp + lam * cp;
    if (!(stat > 0.0))
      throw Error(ErrorCode::NonPositiveModeEnergy,
                  "sin(phi) + lambda cos(phi) = " + std::to_string(stat) + " for mode " +
                      std::to_string(k));
    r.Lambda0[k] = drive.A0 * stat;
    r.dLambda[k] = drive.dA0 * (st + lam * ct);
    r.deltaL[k] = flux_scale * r.dLambda[k] / (line.L0() * r.Lambda0[k] * r.Lambda0[k]);
    r.eps[k] = pair_scale * r.deltaL[k];
  }
  return r;
}

DriveParams calibrate_dA0(const DriveParams& drive, const LineParams& line,
                          const LaplacianSpectrum& spectrum, double target) {
  if (!(target > 0.0 && target < 1.0))
    throw Error(ErrorCode::RangeError, "target occupancy must lie in (0, 1)");
  if (!(drive.dA0 > 0.0)) throw Error(ErrorCode::InvalidParameter, "calibration needs a seed dA0 > 0");
  const auto modes = mode_response(drive, line, spectrum);
  const auto n = intensities(modes, spectrum);
  const double peak = *std::max_element(n.begin(), n.end());
  // Exact zero only when every sin(theta) + lambda cos(theta) vanishes.
  if (!(peak > 0.0)) throw Error(ErrorCode::NoResponse, "drive produces no photons at this theta");
  DriveParams out = drive;
  out.dA0 = drive.dA0 * std::sqrt(target / peak);
  return out;
}

double flux_to_energy(double flux, double ej_max) {
  return ej_max * std::abs(std::cos(constants::pi * flux / LineParams::flux_quantum));
}

}  // namespace dce
