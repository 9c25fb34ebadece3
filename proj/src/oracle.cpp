#include "dce/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "dce/constants.hpp"
#include "dce/error.hpp"

namespace dce::oracle {

namespace {

constexpr int kPadding = 60;

using Occupation = std::array<int, 3>;
using Polynomial = std::map<Occupation, double>;  // coefficients of prod_n (b_n^dag)^k_n

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

Eigen::MatrixXcd squeezed_thermal(double eps, double nt, int cutoff, double trace_tolerance) {
  const int dim = std::max(2 * (cutoff + 1), cutoff + 1 + kPadding);
  const Eigen::MatrixXd a = annihilation(dim - 1);
  const Eigen::MatrixXd ad = a.transpose();
  const double r = std::asinh(eps);
  const Eigen::MatrixXcd gen =
      cplx(0.0, -0.5 * r) * (a * a + ad * ad).cast<cplx>();
  const Eigen::MatrixXcd s = gen.exp();

  Eigen::MatrixXcd thermal = Eigen::MatrixXcd::Zero(dim, dim);
  const double x = nt / (1.0 + nt);
  double p = 1.0 / (1.0 + nt);
  for (int k = 0; k < dim; ++k, p *= x) thermal(k, k) = p;

  const Eigen::MatrixXcd full = s * thermal * s.adjoint();
  const Eigen::MatrixXcd cut = full.topLeftCorner(cutoff + 1, cutoff + 1);
  const double deficit = 1.0 - cut.trace().real();
  if (deficit > trace_tolerance) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "trace deficit %.3g at cutoff %d", deficit, cutoff);
    throw Error(ErrorCode::CutoffTooSmall, msg);
  }
  return cut;
}

}  // namespace

Eigen::MatrixXd annihilation(int cutoff) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
  for (int k = 1; k <= cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

FockOracle::FockOracle(std::span<const double> eps, const Matrix& modes, double thermal_occupation,
                       int cutoff, double trace_tolerance)
    : cutoff_(cutoff), modes_(modes) {
  if (eps.empty() || eps.size() > 3)
    throw Error(ErrorCode::InvalidParameter, "oracle supports 1 to 3 modes");
  if (modes.rows() != eps.size() || modes.cols() != eps.size())
    throw Error(ErrorCode::InvalidParameter, "mode matrix does not match eps");
  if (cutoff < 2) throw Error(ErrorCode::InvalidParameter, "cutoff must be >= 2");
  if (thermal_occupation < 0.0) throw Error(ErrorCode::RangeError, "negative thermal occupation");
  for (double e : eps) rho_.push_back(squeezed_thermal(e, thermal_occupation, cutoff, trace_tolerance));
  a_ = annihilation(cutoff);
  adag_ = a_.transpose();
}

std::size_t FockOracle::dimension() const noexcept {
  std::size_t d = 1;
  for (std::size_t k = 0; k < rho_.size(); ++k) d *= static_cast<std::size_t>(cutoff_ + 1);
  return d;
}

cplx FockOracle::moment(const Word& word) const {
  const std::size_t n = modes();
  for (const auto& l : word)
    if (l.mode >= n) throw Error(ErrorCode::RangeError, "waveguide index out of range");
  if (word.empty()) {
    cplx t = 1.0;
    for (const auto& r : rho_) t *= r.trace();
    return t;
  }
  // Expand a_i = sum_n modes(n, i) b_n over every assignment of normal modes
  // to the letters; each term factorizes over modes.
  std::vector<std::size_t> assign(word.size(), 0);
  const std::size_t dim = static_cast<std::size_t>(cutoff_ + 1);
  cplx total = 0.0;
  while (true) {
    double coeff = 1.0;
    for (std::size_t k = 0; k < word.size(); ++k) coeff *= modes_(assign[k], word[k].mode);
    if (coeff != 0.0) {
      cplx term = coeff;
      for (std::size_t m = 0; m < n && term != 0.0; ++m) {
        Eigen::MatrixXd op = Eigen::MatrixXd::Identity(dim, dim);
        for (std::size_t k = 0; k < word.size(); ++k)
          if (assign[k] == m) op = op * (word[k].dagger ? adag_ : a_);
        term *= (rho_[m] * op.cast<cplx>()).trace();
      }
      total += term;
    }
    std::size_t k = 0;
    while (k < assign.size() && ++assign[k] == n) assign[k++] = 0;
    if (k == assign.size()) break;
  }
  return total;
}

cplx FockOracle::fock_element(std::span<const int> bra, std::span<const int> ket) const {
  const std::size_t n = modes();
  if (bra.size() != n || ket.size() != n)
    throw Error(ErrorCode::RangeError, "occupation vector has the wrong length");

  // |occ> = prod_i (a_i^dag)^occ_i / sqrt(occ_i!) |0>, expanded in b^dag monomials.
  auto expand = [&](std::span<const int> occ) {
    Polynomial poly{{Occupation{0, 0, 0}, 1.0}};
    double norm = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (occ[i] < 0) throw Error(ErrorCode::RangeError, "negative occupation");
      norm *= factorial(occ[i]);
      for (int p = 0; p < occ[i]; ++p) {
        Polynomial next;
        for (const auto& [k, c] : poly)
          for (std::size_t m = 0; m < n; ++m) {
            const double w = modes_(m, i);
            if (w == 0.0) continue;
            Occupation k2 = k;
            ++k2[m];
            next[k2] += c * w;
          }
        poly = std::move(next);
      }
    }
    // prod (b^dag)^k |0> = prod sqrt(k!) |k>
    std::vector<std::pair<Occupation, double>> amps;
    for (const auto& [k, c] : poly) {
      double f = c / std::sqrt(norm);
      for (std::size_t m = 0; m < n; ++m) {
        if (k[m] > cutoff_)
          throw Error(ErrorCode::CutoffTooSmall, "occupation exceeds the oracle cutoff");
        f *= std::sqrt(factorial(k[m]));
      }
      amps.emplace_back(k, f);
    }
    return amps;
  };

  const auto left = expand(bra);
  const auto right = expand(ket);
  cplx total = 0.0;
  for (const auto& [kb, cb] : left)
    for (const auto& [kk, ck] : right) {
      cplx t = cb * ck;
      for (std::size_t m = 0; m < n; ++m) t *= rho_[m](kb[m], kk[m]);
      total += t;
    }
  return total;
}

TruncatedDensityMatrix FockOracle::density_matrix(bool post_select) const {
  if (modes() != 2) throw Error(ErrorCode::InvalidParameter, "qutrit density matrix needs two modes");
  CMatrix raw(9, 9);
  for (int n1 = 0; n1 < 3; ++n1)
    for (int n2 = 0; n2 < 3; ++n2)
      for (int m1 = 0; m1 < 3; ++m1)
        for (int m2 = 0; m2 < 3; ++m2) {
          const std::array<int, 2> bra{n1, n2}, ket{m1, m2};
          raw(TruncatedDensityMatrix::index(n1, n2), TruncatedDensityMatrix::index(m1, m2)) =
              fock_element(bra, ket);
        }
  if (post_select)
    for (std::size_t k = 0; k < 9; ++k) raw(0, k) = raw(k, 0) = 0.0;
  double trace = 0.0;
  for (std::size_t k = 0; k < 9; ++k) trace += raw(k, k).real();
  if (!(trace > 1e-300)) throw Error(ErrorCode::NoPhotons, "projected state is empty");
  TruncatedDensityMatrix out;
  out.post_selected = post_select;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) out.rho(i, j) = raw(i, j) / trace;
  return out;
}

GaussianOutputState gaussian_state(std::span<const double> eps, const Matrix& modes, double nt) {
  LaplacianSpectrum spectrum;
  spectrum.lambdas.assign(eps.size(), 0.0);
  spectrum.modes = modes;
  ModeResponse response;
  response.eps.assign(eps.begin(), eps.end());
  const double half = response.omega_d / 2.0;
  const double temperature =
      nt > 0.0 ? constants::hbar * half / (constants::boltzmann * std::log1p(1.0 / nt)) : 0.0;
  return output_gaussian(response, spectrum, temperature);
}

Comparison compare_two_mode(std::span<const double> eps, const Matrix& modes, double nt, int cutoff,
                            double trace_tolerance) {
  const auto state = gaussian_state(eps, modes, nt);
  const FockOracle oracle(eps, modes, state.thermal_occupation, cutoff, trace_tolerance);
  Comparison out;

  for (std::size_t len : {2u, 4u})
    for (std::size_t creators = 0; creators <= len; ++creators)
      for (unsigned bits = 0; bits < (1u << len); ++bits) {
        Word w;
        for (std::size_t k = 0; k < len; ++k) w.push_back({(bits >> k) & 1u, k < creators});
        const cplx d = wick_moment(state, w) - oracle.moment(w);
        out.moments = std::max(out.moments, std::abs(d));
        ++out.words;
      }

  const FockElements fock(state);
  for (int n1 = 0; n1 < 3; ++n1)
    for (int n2 = 0; n2 < 3; ++n2)
      for (int m1 = 0; m1 < 3; ++m1)
        for (int m2 = 0; m2 < 3; ++m2) {
          const std::array<int, 2> bra{n1, n2}, ket{m1, m2};
          out.raw_elements =
              std::max(out.raw_elements, std::abs(fock.element(bra, ket) - oracle.fock_element(bra, ket)));
        }

  const auto a = density_matrix(state, true);
  const auto b = oracle.density_matrix(true);
  out.density = max_abs_diff(a.rho, b.rho);
  return out;
}

}  // namespace dce::oracle
