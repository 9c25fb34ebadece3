#include <cmath>
#include <random>

#include "doctest.h"
#include "dce/correlations.hpp"
#include "dce/quantum_state.hpp"
#include "support.hpp"

using namespace dce;

namespace {
const auto two = spectrum_of(ArrayTopology::open_chain(2));
const LineParams line;
constexpr double pi = constants::pi;

ModeResponse response(double phi, double theta, const LaplacianSpectrum& s = two, double da0 = 1e-27) {
  return mode_response(support::drive(phi, theta, 1e-24, da0), line, s);
}
}  // namespace

TEST_CASE("two waveguides: closed-form g2 and the sum rule") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> phi(0.02, 1.55), theta(-pi, pi);
  int draws = 0;
  while (draws < 200) {
    const auto d = support::drive(phi(rng), theta(rng));
    ModeResponse m;
    try {
      m = mode_response(d, line, two);
    } catch (const Error&) {
      continue;
    }
    ++draws;
    const auto c = g2_zero_T(m, two);
    const auto t = support::two_sw_lengths(d, line);
    CHECK(std::abs(c.g2(0, 0) - support::g11_closed(t)) < 1e-12);
    CHECK(std::abs(c.g2(0, 1) - support::g12_closed(t)) < 1e-12);
    CHECK(std::abs(c.g2(0, 0) + c.g2(0, 1) - 1.0) < 1e-12);
    CHECK(c.intensities[0] == doctest::Approx(c.intensities[1]).epsilon(1e-14));
    const double k = d.omega_d / (2.0 * line.v);
    CHECK(c.intensities[0] ==
          doctest::Approx(k * k * (t.dl1 * t.dl1 + t.dl2 * t.dl2) / 2.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(c.g2(i, j) >= -1e-15);
        CHECK(c.g2(i, j) <= 1.0 + 1e-12);
        CHECK(c.g2(i, j) == c.g2(j, i));
      }
  }
}

TEST_CASE("special angles and the Cauchy-Schwarz test") {
  const auto bound = g2_zero_T(response(pi / 4, std::atan(0.25)), two);
  CHECK(std::abs(bound.g2(0, 1)) < 1e-12);
  CHECK(std::abs(bound.g2(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(cauchy_schwarz(bound, 0, 1) + 1.0) < 1e-12);

  const auto split = g2_zero_T(response(pi / 4, std::atan(-0.2)), two);
  CHECK(std::abs(split.g2(0, 0)) < 1e-12);
  CHECK(std::abs(split.g2(0, 1) - 1.0) < 1e-12);
  CHECK(std::abs(cauchy_schwarz(split, 0, 1) - 1.0) < 1e-12);

  // deltaL_1 = 0 at theta = 0
  const auto half = g2_zero_T(response(pi / 4, 0.0), two);
  CHECK(std::abs(half.g2(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(half.g2(0, 1) - 0.5) < 1e-12);
  CHECK(std::abs(cauchy_schwarz(half, 0, 1)) < 1e-12);
}

TEST_CASE("zero intensity and asymmetric pairs") {
  const auto none = response(pi / 4, 0.3, two, 0.0);
  for (double x : intensities(none, two)) CHECK(x == 0.0);
  CHECK_ERROR_CODE(g2_zero_T(none, two), ErrorCode::ZeroIntensity);

  const auto chain = spectrum_of(ArrayTopology::open_chain(3));
  const auto c = g2_zero_T(response(pi / 4, 0.7, chain), chain);
  CHECK_ERROR_CODE(cauchy_schwarz(c, 0, 1), ErrorCode::AsymmetricModes);
  CHECK(std::isfinite(cauchy_schwarz(c, 0, 2)));
}

TEST_CASE("ring translation invariance") {
  const auto ring = spectrum_of(ArrayTopology::ring(31));
  for (double theta : {0.17, 1.2, 2.56, 2.78}) {
    const auto c = g2_zero_T(response(pi / 4, theta, ring), ring);
    for (std::size_t i = 0; i < 31; ++i) {
      CHECK(c.intensities[i] == doctest::Approx(c.intensities[0]).epsilon(1e-10));
      for (std::size_t j = 0; j < 31; ++j)
        CHECK(std::abs(c.g2(i, (i + j) % 31) - c.g2(0, j)) < 1e-10);
    }
  }
}

TEST_CASE("g2 at T = 0 does not depend on the drive magnitudes") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> scale(0.1, 10.0), theta(-pi, pi);
  const auto ring = spectrum_of(ArrayTopology::ring(8));
  for (int k = 0; k < 30; ++k) {
    const double th = theta(rng);
    const auto a = g2_zero_T(mode_response(support::drive(pi / 4, th), line, ring), ring);
    const auto b = g2_zero_T(
        mode_response(support::drive(pi / 4, th, 1e-24 * scale(rng), 1e-27 * scale(rng)), line, ring), ring);
    CHECK(max_abs_diff(a.g2, b.g2) < 1e-12);
  }
}

TEST_CASE("thermal occupation") {
  const double w = constants::default_omega_d / 2.0;
  CHECK(thermal_occupation(w, 0.0) == 0.0);
  const double nt = thermal_occupation(w, 0.025);
  const double x = constants::hbar * 2.0 * pi * 5.15e9 / (constants::boltzmann * 0.025);
  CHECK(nt == doctest::Approx(1.0 / (std::exp(x) - 1.0)).epsilon(1e-12));
  CHECK(std::abs(nt / 5.1e-5 - 1.0) < 0.05);
  CHECK(thermal_occupation(w, 0.040) > nt);
  CHECK_ERROR_CODE(thermal_occupation(w, -1.0), ErrorCode::RangeError);
}

TEST_CASE("thermal formulas at T = 0 reduce to the vacuum ones") {
  for (double da0 : {1e-28, 1e-27, 3e-27}) {
    const auto m = response(pi / 4, 1.0, two, da0);
    const auto zero = g2_zero_T(m, two);
    const auto th = g2_thermal(m, two, 0.0);
    const double eps2 = std::max(m.eps[0] * m.eps[0], m.eps[1] * m.eps[1]);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(th.g2(i, j) - zero.g2(i, j)) <= 10.0 * eps2 * std::max(1.0, zero.g2(i, j)));
        // G2 - M^2 is fourth order in eps
        CHECK(std::abs(th.G2(i, j) - zero.G2(i, j)) <= 4.0 * eps2 * eps2);
      }
    CHECK(zero.G2(0, 1) == doctest::Approx(zero.pair_amplitude(0, 1) * zero.pair_amplitude(0, 1)));
  }
}

TEST_CASE("factorized thermal G2 agrees with the exact Gaussian state to leading order") {
  const auto m = response(pi / 4, 1.0, two, 1e-28);
  for (double t : {0.0, 0.025, 0.040}) {
    const auto a = g2_thermal(m, two, t);
    const auto b = correlations_from_state(output_gaussian(m, two, t));
    const double eps2 = std::max(m.eps[0] * m.eps[0], m.eps[1] * m.eps[1]);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(std::abs(a.intensities[i] - b.intensities[i]) < 2.0 * eps2 * (a.thermal_occupation + eps2));
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(a.G2(i, j) - b.G2(i, j)) < 1e-2 * std::abs(b.G2(i, j)));
    }
  }
}

TEST_CASE("finite temperature pulls g2 away from its extremes, more at higher T") {
  for (double theta : {std::atan(0.25), std::atan(-0.2)}) {
    const auto m = mode_response(
        calibrate_dA0(support::drive(pi / 4, theta), line, two, 0.1), line, two);
    const auto z = g2_thermal(m, two, 0.0);
    const auto a = g2_thermal(m, two, 0.025);
    const auto b = g2_thermal(m, two, 0.040);
    for (std::size_t j = 0; j < 2; ++j) {
      const double da = std::abs(a.g2(0, j) - z.g2(0, j));
      const double db = std::abs(b.g2(0, j) - z.g2(0, j));
      CHECK(da > 0.0);
      CHECK(db > da);
    }
  }
}

TEST_CASE("observables are invariant under rotations of degenerate modes") {
  std::mt19937_64 rng(4);
  const auto ring = spectrum_of(ArrayTopology::ring(10));
  const auto rotated = support::rotate_degenerate(ring, rng);
  CHECK(max_abs_diff(ring.modes, rotated.modes) > 1e-3);
  for (double theta : {0.3, 1.7, 2.9}) {
    const auto m = response(pi / 4, theta, ring);
    const auto a = g2_thermal(m, ring, 0.03);
    const auto b = g2_thermal(m, rotated, 0.03);
    CHECK(max_abs_diff(a.g2, b.g2) < 1e-10);
    CHECK(max_abs_diff(a.pair_amplitude, b.pair_amplitude) < 1e-10 * std::abs(m.eps[0]) + 1e-300);
    const auto za = g2_zero_T(m, ring), zb = g2_zero_T(m, rotated);
    CHECK(max_abs_diff(za.g2, zb.g2) < 1e-10);
  }
}
