#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "dce/oracle.hpp"
#include "dce/quantum_state.hpp"
#include "support.hpp"

using namespace dce;

namespace {
const auto two = spectrum_of(ArrayTopology::open_chain(2));
const LineParams line;
constexpr double pi = constants::pi;
constexpr cplx kI{0.0, 1.0};

ModeResponse with_eps(std::vector<double> eps) {
  ModeResponse m;
  m.eps = std::move(eps);
  return m;
}

ModeResponse calibrated(double theta, double target = 0.1, const LaplacianSpectrum& s = two) {
  return mode_response(calibrate_dA0(support::drive(pi / 4, theta), line, s, target), line, s);
}

std::size_t idx(int a, int b) { return TruncatedDensityMatrix::index(a, b); }

double max_eigen_deviation(const TruncatedDensityMatrix& r) {
  const auto ev = hermitian_eigenvalues(r.rho);
  return std::min(0.0, ev.front());
}
}  // namespace

TEST_CASE("Gaussian output state: equal amplitudes") {
  const double e = 0.2;
  const auto s = output_gaussian(with_eps({e, e}), two, 0.0);
  CHECK(std::abs(s.anomalous(0, 1)) < 1e-16);
  CHECK(std::abs(s.anomalous(0, 0) - (-kI * e * std::sqrt(1 + e * e))) < 1e-15);
  CHECK(s.number(0, 0).real() == doctest::Approx(e * e));
  CHECK(s.is_physical());
}

TEST_CASE("Gaussian output state: opposite amplitudes") {
  const double e = 0.15;
  const auto s = output_gaussian(with_eps({e, -e}), two, 0.0);
  CHECK(std::abs(s.anomalous(0, 0)) < 1e-16);
  CHECK(std::abs(s.anomalous(1, 1)) < 1e-16);
  CHECK(std::abs(s.anomalous(0, 1) - (-kI * e * std::sqrt(1 + e * e))) < 1e-15);
}

TEST_CASE("vacuum in, vacuum out") {
  const auto s = output_gaussian(with_eps({0.0, 0.0}), two, 0.0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(s.number(i, j) == cplx{});
      CHECK(s.anomalous(i, j) == cplx{});
    }
  const auto rho = density_matrix(s, false);
  CHECK(std::abs(rho.rho(0, 0) - 1.0) < 1e-15);
  CHECK(purity(rho) == doctest::Approx(1.0));
  CHECK_ERROR_CODE(density_matrix(s, true), ErrorCode::NoPhotons);
}

TEST_CASE("state invariants hold for random states") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> e(-0.6, 0.6), t(0.0, 0.08);
  for (int k = 0; k < 40; ++k) {
    const auto s = output_gaussian(with_eps({e(rng), e(rng)}), two, t(rng));
    CHECK(s.is_physical());
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(s.number(i, j) - std::conj(s.number(j, i))) < 1e-16);
        CHECK(std::abs(s.anomalous(i, j) - s.anomalous(j, i)) < 1e-16);
      }
    for (bool post : {false, true}) {
      const auto r = density_matrix(s, post);
      double tr = 0.0;
      for (std::size_t a = 0; a < 9; ++a) tr += r.rho(a, a).real();
      CHECK(tr == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(max_abs_diff(r.rho, adjoint(r.rho)) < 1e-15);
      CHECK(max_eigen_deviation(r) > -1e-9);
      if (post) {
        CHECK(r.rho(0, 0) == cplx{});
        const double e0 = von_neumann_entropy(r, 0), e1 = von_neumann_entropy(r, 1);
        CHECK(e0 >= 0.0);
        CHECK(e0 <= 1.0 + 1e-12);
        CHECK(e0 == doctest::Approx(e1).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("an unphysical covariance is detected") {
  GaussianOutputState s;
  s.number = CMatrix(1, 1);
  s.anomalous = CMatrix{{cplx(0.5, 0.0)}};
  CHECK_FALSE(s.is_physical());
}

TEST_CASE("post-selected states at the special angles") {
  const auto noon = density_matrix(output_gaussian(calibrated(std::atan(0.25), 0.01), two, 0.0), true);
  CHECK(noon_fidelity(noon) > 0.99);
  const auto split = density_matrix(output_gaussian(calibrated(std::atan(-0.2), 0.01), two, 0.0), true);
  CHECK(split.rho(idx(1, 1), idx(1, 1)).real() > 0.97);
  CHECK(noon_fidelity(split) < 1e-6);
}

TEST_CASE("perturbative pair state") {
  const double e1 = 0.03, e2 = 0.01;
  const auto p = perturbative_pure_state(with_eps({e1, e2}), two);
  CHECK(std::abs(p.beta(0, 0) - 0.5 * kI * (e1 + e2) / 2.0) < 1e-16);
  const double norm = std::sqrt(2 * std::pow((e1 + e2) / (2 * std::sqrt(2.0)), 2) + std::pow((e1 - e2) / 2, 2));
  CHECK(std::abs(std::abs(p.amplitude(0, 0)) - (e1 + e2) / (2 * std::sqrt(2.0)) / norm) < 1e-14);
  CHECK(std::abs(std::abs(p.amplitude(1, 1)) - (e1 + e2) / (2 * std::sqrt(2.0)) / norm) < 1e-14);
  CHECK(std::abs(std::abs(p.amplitude(0, 1)) - (e1 - e2) / 2 / norm) < 1e-14);

  const auto noon = perturbative_pure_state(with_eps({0.02, 0.02}), two);
  CHECK(std::abs(noon_fidelity(noon) - 1.0) < 1e-12);
  CHECK(std::abs(p.amplitude(0, 1)) > 0.0);
  const auto eleven = perturbative_pure_state(with_eps({0.02, -0.02}), two);
  CHECK(std::abs(std::abs(eleven.amplitude(0, 1)) - 1.0) < 1e-12);
  const auto rho = pure_density_matrix(eleven);
  CHECK(std::abs(rho.rho(idx(1, 1), idx(1, 1)) - 1.0) < 1e-12);
}

TEST_CASE("ring of 31: at theta = 0.17 the pair stays in one waveguide") {
  const auto ring = spectrum_of(ArrayTopology::ring(31));
  const auto p = perturbative_pure_state(calibrated(0.17, 0.1, ring), ring);
  double cross = 0.0, self = 0.0;
  for (std::size_t i = 0; i < 31; ++i) {
    self += std::norm(p.amplitude(i, i));
    for (std::size_t j = i + 1; j < 31; ++j) cross += std::norm(p.amplitude(i, j));
  }
  CHECK(cross < 0.05);
  CHECK(self == doctest::Approx(1.0 - cross));
}

TEST_CASE("multimode NOON fidelity") {
  const auto ring = spectrum_of(ArrayTopology::ring(5));
  // Uniform eps: beta is proportional to the identity.
  const auto p = perturbative_pure_state(with_eps({0.01, 0.01, 0.01, 0.01, 0.01}), ring);
  CHECK(std::abs(noon_fidelity(p) - 1.0) < 1e-12);
}

TEST_CASE("entropy and fidelity reference values") {
  const auto noon = pure_density_matrix(perturbative_pure_state(with_eps({0.02, 0.02}), two));
  CHECK(std::abs(von_neumann_entropy(noon, 0) - std::log(2.0) / std::log(3.0)) < 1e-12);
  CHECK(std::abs(maximally_entangled_fidelity(noon) - std::sqrt(2.0 / 3.0)) < 1e-12);
  CHECK(std::abs(total_entropy(noon)) < 1e-12);
  const auto eleven = pure_density_matrix(perturbative_pure_state(with_eps({0.02, -0.02}), two));
  CHECK(std::abs(maximally_entangled_fidelity(eleven) - 1.0 / std::sqrt(3.0)) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(eleven, 0)) < 1e-12);

  TruncatedDensityMatrix bad;
  bad.rho(0, 0) = 0.5;
  CHECK_ERROR_CODE(von_neumann_entropy(bad, 0), ErrorCode::NotNormalized);
}

TEST_CASE("entanglement along the theta sweep at T = 0") {
  // Root of (dL1 + dL2)^2 = 2 (dL1 - dL2)^2 with tan(theta) = 3.674..
  const double root = 1.3052;
  const auto r = density_matrix(output_gaussian(calibrated(root, 1e-3), two, 0.0), true);
  CHECK(von_neumann_entropy(r, 0) > 0.99);
  const auto p = pure_density_matrix(perturbative_pure_state(calibrated(2.94), two));
  CHECK(von_neumann_entropy(p, 0) <= 0.02);
}

TEST_CASE("T = 0: Gaussian and perturbative states agree to O(eps)") {
  for (double theta : {0.3, 1.0, 2.0, 2.8}) {
    for (double target : {1e-3, 1e-4}) {
      const auto m = calibrated(theta, target);
      const auto a = density_matrix(output_gaussian(m, two, 0.0), true);
      const auto b = pure_density_matrix(perturbative_pure_state(m, two));
      // |22> enters with amplitude eps^2 against eps for the pair
      CHECK(max_abs_diff(a.rho, b.rho) < 2.0 * std::sqrt(target));
      CHECK(purity(a) > 1.0 - 5e-3);
      CHECK(total_entropy(a) < 0.05);
    }
  }
}

TEST_CASE("projector series agrees with the exact elements for weak states") {
  const auto s = output_gaussian(with_eps({0.01, -0.004}), two, 0.0);
  DensityOptions series;
  series.method = DensityMethod::ProjectorSeries;
  const auto a = density_matrix(s, true);
  const auto b = density_matrix(s, true, series);
  CHECK(max_abs_diff(a.rho, b.rho) < series.remainder_tolerance);
  CHECK(max_abs_diff(density_matrix(s, false).rho, density_matrix(s, false, series).rho) < 1e-9);
  const auto strong = output_gaussian(with_eps({0.6, 0.5}), two, 0.1);
  CHECK_ERROR_CODE(density_matrix(strong, true, series), ErrorCode::TruncationUnreliable);
}

TEST_CASE("density matrix needs two waveguides") {
  const auto three = spectrum_of(ArrayTopology::open_chain(3));
  const auto s = output_gaussian(with_eps({0.1, 0.1, 0.1}), three, 0.0);
  CHECK_ERROR_CODE(density_matrix(s, true), ErrorCode::InvalidParameter);
}

TEST_CASE("Fock elements match the oracle") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> e(-0.3, 0.3), nt(0.0, 0.2);
  for (int k = 0; k < 8; ++k) {
    const std::array<double, 2> eps{e(rng), e(rng)};
    const auto c = oracle::compare_two_mode(eps, two.modes, nt(rng), 30);
    CHECK(c.moments < 1e-9);
    CHECK(c.raw_elements < 1e-9);
    CHECK(c.density < 1e-9);
  }
}

TEST_CASE("exact Fock elements of a single squeezed mode") {
  const auto one = spectrum_of(ArrayTopology::open_chain(1));
  const double e = 0.3, r = std::asinh(e);
  const FockElements f(output_gaussian(with_eps({e}), one, 0.0));
  const std::array<int, 1> zero{0}, two_{2}, one_{1};
  CHECK(f.element(zero, zero).real() == doctest::Approx(1.0 / std::cosh(r)).epsilon(1e-13));
  CHECK(f.vacuum_probability() == doctest::Approx(1.0 / std::cosh(r)).epsilon(1e-13));
  CHECK(std::abs(f.element(one_, zero)) < 1e-16);
  // |psi> = sum c_2k |2k>, c_2 / c_0 = -i tanh(r) / sqrt(2)
  const cplx ratio = f.element(two_, zero) / f.element(zero, zero);
  CHECK(std::abs(ratio - (-kI * std::tanh(r) / std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("fidelity degrades with temperature") {
  const auto m = calibrated(std::atan(0.25));
  const double f50 = noon_fidelity(density_matrix(output_gaussian(m, two, 0.050), true));
  const double f60 = noon_fidelity(density_matrix(output_gaussian(m, two, 0.060), true));
  const double f0 = noon_fidelity(density_matrix(output_gaussian(m, two, 0.0), true));
  CHECK(f50 < f0);
  CHECK(f60 < f50);
}
