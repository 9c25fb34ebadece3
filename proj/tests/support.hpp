#pragma once

#include <cmath>
#include <random>

#include "dce/constants.hpp"
#include "dce/drive.hpp"
#include "dce/lattice.hpp"

namespace support {

inline dce::DriveParams drive(double phi, double theta, double a0 = 1e-24, double da0 = 1e-27) {
  dce::DriveParams d;
  d.A0 = a0;
  d.dA0 = da0;
  d.phi = phi;
  d.theta = theta;
  return d;
}

// Two-waveguide effective-length modulations written out for lambda = {0, 2}.
struct TwoSw {
  double dl1, dl2;
};

inline TwoSw two_sw_lengths(const dce::DriveParams& d, const dce::LineParams& line) {
  const double k = std::pow(dce::constants::flux_quantum / (2.0 * dce::constants::pi), 2) / line.L0() *
                   d.dA0 / (d.A0 * d.A0);
  const double s = std::sin(d.phi) + 2.0 * std::cos(d.phi);
  return {k * std::sin(d.theta) / (std::sin(d.phi) * std::sin(d.phi)),
          k * (std::sin(d.theta) + 2.0 * std::cos(d.theta)) / (s * s)};
}

inline double g11_closed(const TwoSw& t) {
  return (t.dl1 + t.dl2) * (t.dl1 + t.dl2) / (2.0 * (t.dl1 * t.dl1 + t.dl2 * t.dl2));
}

inline double g12_closed(const TwoSw& t) {
  return (t.dl1 - t.dl2) * (t.dl1 - t.dl2) / (2.0 * (t.dl1 * t.dl1 + t.dl2 * t.dl2));
}

// Random orthogonal rotation inside every degenerate eigenspace.
inline dce::LaplacianSpectrum rotate_degenerate(const dce::LaplacianSpectrum& s, std::mt19937_64& rng) {
  dce::LaplacianSpectrum out = s;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * dce::constants::pi);
  const std::size_t n = s.size();
  for (std::size_t a = 0; a + 1 < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      if (std::abs(s.lambdas[a] - s.lambdas[b]) > 1e-9) continue;
      const double t = angle(rng), c = std::cos(t), sn = std::sin(t);
      for (std::size_t i = 0; i < n; ++i) {
        const double x = out.modes(a, i), y = out.modes(b, i);
        out.modes(a, i) = c * x - sn * y;
        out.modes(b, i) = sn * x + c * y;
      }
    }
  return out;
}

}  // namespace support

#include "dce/error.hpp"

// Expression must throw dce::Error with the given code.
#define CHECK_ERROR_CODE(expr, ecode)                          \
  do {                                                         \
    bool thrown_ = false;                                      \
    try {                                                      \
      (void)(expr);                                            \
    } catch (const dce::Error& e_) {                           \
      thrown_ = true;                                          \
      CHECK_MESSAGE(e_.code() == (ecode), e_.what());          \
    }                                                          \
    CHECK_MESSAGE(thrown_, "expected " << dce::to_string(ecode)); \
  } while (0)
