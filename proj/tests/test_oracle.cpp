#include <array>
#include <cmath>

#include "doctest.h"
#include "dce/oracle.hpp"
#include "dce/quantum_state.hpp"
#include "support.hpp"

using namespace dce;
using oracle::FockOracle;

namespace {
const auto one = spectrum_of(ArrayTopology::open_chain(1));
const auto two = spectrum_of(ArrayTopology::open_chain(2));
const auto three = spectrum_of(ArrayTopology::open_chain(3));
}  // namespace

TEST_CASE("ladder operators below the cutoff") {
  const int cutoff = 8;
  const auto a = oracle::annihilation(cutoff);
  const Eigen::MatrixXd comm = a * a.transpose() - a.transpose() * a;
  for (int k = 0; k < cutoff; ++k)
    for (int l = 0; l < cutoff; ++l) CHECK(std::abs(comm(k, l) - (k == l ? 1.0 : 0.0)) < 1e-14);
}

TEST_CASE("dimension") {
  const std::array<double, 3> e{0.0, 0.0, 0.0};
  CHECK(FockOracle(std::span(e.data(), 1), one.modes, 0.0, 8).dimension() == 9);
  CHECK(FockOracle(std::span(e.data(), 2), two.modes, 0.0, 8).dimension() == 81);
  CHECK(FockOracle(e, three.modes, 0.0, 6).dimension() == 343);
}

TEST_CASE("no drive, no heat: the vacuum") {
  const std::array<double, 2> e{0.0, 0.0};
  const FockOracle o(e, two.modes, 0.0, 8);
  const std::array<int, 2> vac{0, 0}, n20{2, 0};
  CHECK(std::abs(o.fock_element(vac, vac) - 1.0) < 1e-15);
  CHECK(std::abs(o.fock_element(n20, n20)) < 1e-15);
  CHECK(std::abs(o.moment({create(0), annihilate(0)})) < 1e-15);
}

TEST_CASE("single squeezed mode occupancy") {
  const std::array<double, 1> e{0.2};
  const FockOracle o(e, one.modes, 0.0, 14);
  const double r = std::asinh(0.2);
  CHECK(std::abs(o.moment({create(0), annihilate(0)}).real() - std::sinh(r) * std::sinh(r)) < 1e-10);
  CHECK(std::abs(o.moment({create(0), annihilate(0)}).real() - 0.04) < 1e-10);
  CHECK(o.mode_state(0).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("thermal squeezed mode: occupancy and pair moment") {
  const double e = 0.25, nt = 0.1, r = std::asinh(e);
  const std::array<double, 1> eps{e};
  const FockOracle o(eps, one.modes, nt, 30);
  const double sh = std::sinh(r), ch = std::cosh(r);
  CHECK(o.moment({create(0), annihilate(0)}).real() ==
        doctest::Approx(ch * ch * nt + sh * sh * (1 + nt)).epsilon(1e-12));
  const cplx bb = o.moment({annihilate(0), annihilate(0)});
  CHECK(std::abs(bb - cplx(0.0, -ch * sh * (1 + 2 * nt))) < 1e-12);
}

TEST_CASE("two modes with equal amplitudes: no cross pairs") {
  const std::array<double, 2> e{0.2, 0.2};
  const FockOracle o(e, two.modes, 0.0, 20);
  CHECK(std::abs(o.moment({annihilate(0), annihilate(1)})) < 1e-12);
  const auto state = oracle::gaussian_state(e, two.modes, 0.0);
  const FockElements f(state);
  const std::array<int, 2> n20{2, 0}, n02{0, 2};
  CHECK(std::abs(o.fock_element(n20, n02) - f.element(n20, n02)) < 1e-6);
}

TEST_CASE("state is positive with unit trace") {
  const std::array<double, 1> e{0.3};
  const FockOracle o(e, one.modes, 0.2, 30);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(o.mode_state(0));
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
  CHECK(o.mode_state(0).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("small cutoffs are rejected through the trace deficit") {
  const std::array<double, 2> e{0.3, 0.1};
  CHECK_ERROR_CODE(FockOracle(e, two.modes, 0.2, 8), ErrorCode::CutoffTooSmall);
  CHECK_ERROR_CODE(FockOracle(e, two.modes, 0.0, 4), ErrorCode::CutoffTooSmall);
}

TEST_CASE("results converge with the cutoff") {
  const std::array<double, 2> e{0.02, -0.01};
  const double nt = 1e-4;
  const FockOracle a(e, two.modes, nt, 6), b(e, two.modes, nt, 8);
  const Word words[] = {{create(0), annihilate(0)},
                        {annihilate(0), annihilate(1)},
                        {create(0), create(1), annihilate(1), annihilate(0)},
                        {create(0), create(0), annihilate(0), annihilate(0)}};
  for (const auto& w : words) CHECK(std::abs(a.moment(w) - b.moment(w)) < 1e-8);
  CHECK(max_abs_diff(a.density_matrix(true).rho, b.density_matrix(true).rho) < 1e-8);
}

TEST_CASE("three modes") {
  const std::array<double, 3> e{0.1, -0.05, 0.08};
  const FockOracle o(e, three.modes, 0.01, 20);
  const auto state = oracle::gaussian_state(e, three.modes, 0.01);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(std::abs(o.moment({create(i), annihilate(j)}) - state.number(i, j)) < 1e-10);
      CHECK(std::abs(o.moment({annihilate(i), annihilate(j)}) - state.anomalous(i, j)) < 1e-10);
      const Word g2{create(i), create(j), annihilate(j), annihilate(i)};
      CHECK(std::abs(o.moment(g2) - wick_moment(state, g2)) < 1e-10);
    }
  const std::array<int, 3> bra{1, 0, 1}, ket{0, 2, 0};
  CHECK(std::abs(o.fock_element(bra, ket) - FockElements(state).element(bra, ket)) < 1e-10);
}

TEST_CASE("oracle input validation") {
  const std::array<double, 4> e{0.1, 0.1, 0.1, 0.1};
  const Matrix m4 = Matrix::identity(4);
  CHECK_ERROR_CODE(FockOracle(e, m4, 0.0, 8), ErrorCode::InvalidParameter);
  const std::array<double, 2> e2{0.1, 0.1};
  CHECK_ERROR_CODE(FockOracle(e2, two.modes, -0.1, 8), ErrorCode::RangeError);
}

TEST_CASE("correlation sets agree with the oracle") {
  const std::array<double, 2> e{0.27, -0.12};
  const double nt = 0.15;
  const auto state = oracle::gaussian_state(e, two.modes, nt);
  const auto corr = correlations_from_state(state);
  const FockOracle o(e, two.modes, state.thermal_occupation, 30);
  for (std::size_t i = 0; i < 2; ++i) {
    const double n = o.moment({create(i), annihilate(i)}).real();
    CHECK(std::abs(corr.intensities[i] - n) < 1e-6 * n);
    for (std::size_t j = 0; j < 2; ++j) {
      const double g = o.moment({create(i), create(j), annihilate(j), annihilate(i)}).real();
      CHECK(std::abs(corr.G2(i, j) - g) < 1e-6 * g);
      const double pair = -o.moment({annihilate(i), annihilate(j)}).imag();
      CHECK(std::abs(corr.pair_amplitude(i, j) - pair) < 1e-6 * std::abs(pair) + 1e-12);
    }
  }
}
