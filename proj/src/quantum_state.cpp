#include "dce/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dce/error.hpp"
#include "dce/wick.hpp"

namespace dce {

namespace {

constexpr cplx kI{0.0, 1.0};

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_two_modes(const GaussianOutputState& s) {
  if (s.modes() != 2)
    throw Error(ErrorCode::InvalidParameter,
                "qutrit density matrix needs exactly two waveguides, got " + std::to_string(s.modes()));
}

// <(a1^dag)^p1 (a2^dag)^p2 a1^q1 a2^q2>
cplx normal_moment(const GaussianOutputState& s, int p1, int p2, int q1, int q2) {
  Word w;
  w.insert(w.end(), p1, create(0));
  w.insert(w.end(), p2, create(1));
  w.insert(w.end(), q1, annihilate(0));
  w.insert(w.end(), q2, annihilate(1));
  return wick_moment(s, w);
}

double binomial(int k, int j) { return factorial(k) / (factorial(j) * factorial(k - j)); }

TruncatedDensityMatrix finish(CMatrix raw, bool post_select) {
  if (post_select) {
    for (std::size_t k = 0; k < 9; ++k) {
      raw(0, k) = 0.0;
      raw(k, 0) = 0.0;
    }
  }
  double trace = 0.0;
  for (std::size_t k = 0; k < 9; ++k) trace += raw(k, k).real();
  if (!(trace > 1e-300))
    throw Error(ErrorCode::NoPhotons, "post-selected state is empty (no photons emitted)");
  TruncatedDensityMatrix out;
  out.post_selected = post_select;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) out.rho(i, j) = raw(i, j) / trace;
  return out;
}

}  // namespace

bool GaussianOutputState::is_physical(double tol) const {
  const std::size_t n = modes();
  CMatrix g(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      g(i, j) = (i == j ? 1.0 : 0.0) + number(j, i);
      g(i, j + n) = anomalous(i, j);
      g(i + n, j) = std::conj(anomalous(i, j));
      g(i + n, j + n) = number(i, j);
    }
  const auto ev = hermitian_eigenvalues(g);
  return ev.front() >= -tol;
}

GaussianOutputState output_gaussian(const ModeResponse& modes, const LaplacianSpectrum& spectrum,
                                    double temperature) {
  const double nt = thermal_occupation(modes.omega_d / 2.0, temperature);
  const std::size_t n = modes.size();
  std::vector<double> occ(n), pair(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double e = modes.eps[k];
    occ[k] = nt + e * e * (1.0 + 2.0 * nt);
    pair[k] = e * std::sqrt(1.0 + e * e) * (1.0 + 2.0 * nt);  // i u v (1 + 2 N_T)
  }
  const Matrix num = kernels::mode_sum(spectrum.modes, occ);
  const Matrix anom = kernels::mode_sum(spectrum.modes, pair);

  GaussianOutputState s;
  s.temperature = temperature;
  s.thermal_occupation = nt;
  s.number = CMatrix(n, n);
  s.anomalous = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s.number(i, j) = num(i, j);
      s.anomalous(i, j) = -kI * anom(i, j);
    }
  return s;
}

cplx wick_moment(const GaussianOutputState& state, const Word& word) {
  bool seen_annihilator = false;
  for (const auto& l : word) {
    if (l.mode >= state.modes()) throw Error(ErrorCode::RangeError, "mode index out of range");
    if (!l.dagger) seen_annihilator = true;
    else if (seen_annihilator)
      throw Error(ErrorCode::NotNormalOrdered, "creation operator right of an annihilator");
  }
  return sum_over_matchings<cplx>(word.size(), [&](std::size_t a, std::size_t b) -> cplx {
    const Ladder& x = word[a];
    const Ladder& y = word[b];
    if (x.dagger && y.dagger) return std::conj(state.anomalous(y.mode, x.mode));
    if (x.dagger) return state.number(x.mode, y.mode);
    return state.anomalous(x.mode, y.mode);
  });
}

CorrelationSet correlations_from_state(const GaussianOutputState& state) {
  const std::size_t n = state.modes();
  CorrelationSet c;
  c.temperature = state.temperature;
  c.thermal_occupation = state.thermal_occupation;
  c.intensities.resize(n);
  c.pair_amplitude = Matrix(n, n);
  c.G2 = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) c.intensities[i] = state.number(i, i).real();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      c.pair_amplitude(i, j) = -state.anomalous(i, j).imag();
      c.G2(i, j) = wick_moment(state, {create(i), create(j), annihilate(j), annihilate(i)}).real();
    }
  c.g2 = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c.intensities[i] > 0.0))
      throw Error(ErrorCode::ZeroIntensity, "waveguide " + std::to_string(i + 1) + " emits no photons");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c.g2(i, j) = c.G2(i, j) / std::sqrt(c.intensities[i] * c.intensities[j]);
  return c;
}

FockElements::FockElements(const GaussianOutputState& state) : modes_(state.modes()) {
  const std::size_t n = modes_;
  CMatrix sigma(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = (i == j) ? 1.0 : 0.0;
      sigma(i, j) = d + state.number(j, i);
      sigma(i, j + n) = state.anomalous(i, j);
      sigma(i + n, j) = std::conj(state.anomalous(i, j));
      sigma(i + n, j + n) = d + state.number(i, j);
    }
  const auto lu = lu_invert(sigma);
  vacuum_ = 1.0 / std::sqrt(lu.determinant.real());
  a_ = CMatrix(2 * n, 2 * n);
  auto swap_block = [n](std::size_t l) { return l < n ? l + n : l - n; };
  for (std::size_t k = 0; k < 2 * n; ++k)
    for (std::size_t l = 0; l < 2 * n; ++l) {
      const cplx b = (k == swap_block(l) ? 1.0 : 0.0) - lu.inverse(k, swap_block(l));
      a_(k, l) = b;
    }
  for (std::size_t k = 0; k < 2 * n; ++k)
    for (std::size_t l = k + 1; l < 2 * n; ++l) a_(k, l) = a_(l, k) = 0.5 * (a_(k, l) + a_(l, k));
}

cplx FockElements::element(std::span<const int> bra, std::span<const int> ket) const {
  if (bra.size() != modes_ || ket.size() != modes_)
    throw Error(ErrorCode::RangeError, "occupation vector has the wrong length");
  std::vector<std::size_t> labels;
  double norm = 1.0;
  for (std::size_t k = 0; k < modes_; ++k) {
    if (bra[k] < 0 || ket[k] < 0) throw Error(ErrorCode::RangeError, "negative occupation");
    labels.insert(labels.end(), static_cast<std::size_t>(bra[k]), k);
    norm *= factorial(bra[k]);
  }
  for (std::size_t k = 0; k < modes_; ++k) {
    labels.insert(labels.end(), static_cast<std::size_t>(ket[k]), modes_ + k);
    norm *= factorial(ket[k]);
  }
  const cplx haf = sum_over_matchings<cplx>(
      labels.size(), [&](std::size_t x, std::size_t y) { return a_(labels[x], labels[y]); });
  return vacuum_ * haf / std::sqrt(norm);
}

TruncatedDensityMatrix density_matrix(const GaussianOutputState& state, bool post_select,
                                      const DensityOptions& options) {
  require_two_modes(state);
  CMatrix raw(9, 9);

  if (options.method == DensityMethod::Exact) {
    const FockElements fock(state);
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2)
        for (int m1 = 0; m1 < 3; ++m1)
          for (int m2 = 0; m2 < 3; ++m2) {
            const std::array<int, 2> bra{n1, n2}, ket{m1, m2};
            raw(TruncatedDensityMatrix::index(n1, n2), TruncatedDensityMatrix::index(m1, m2)) =
                fock.element(bra, ket);
          }
    return finish(std::move(raw), post_select);
  }

  // <n m|rho|n' m'> = <(a1^dag)^n' (a2^dag)^m' :exp(-a1^dag a1 - a2^dag a2): a1^n a2^m>
  //                   / sqrt(n! m! n'! m'!)
  double worst_remainder = 0.0;
  for (int n1 = 0; n1 < 3; ++n1)
    for (int n2 = 0; n2 < 3; ++n2)
      for (int m1 = 0; m1 < 3; ++m1)
        for (int m2 = 0; m2 < 3; ++m2) {
          const int base = n1 + n2 + m1 + m2;
          const double norm =
              std::sqrt(factorial(n1) * factorial(n2) * factorial(m1) * factorial(m2));
          auto term = [&](int k) {
            cplx t = 0.0;
            for (int j = 0; j <= k; ++j)
              t += binomial(k, j) * normal_moment(state, m1 + j, m2 + k - j, n1 + j, n2 + k - j);
            return (k % 2 == 0 ? 1.0 : -1.0) / factorial(k) * t / norm;
          };
          cplx sum = 0.0;
          int k = 0;
          for (; base + 2 * k <= options.max_degree; ++k) sum += term(k);
          worst_remainder = std::max(worst_remainder, std::abs(term(k)));
          raw(TruncatedDensityMatrix::index(n1, n2), TruncatedDensityMatrix::index(m1, m2)) = sum;
        }
  double trace = 0.0;
  for (std::size_t k = post_select ? 1 : 0; k < 9; ++k) trace += raw(k, k).real();
  if (worst_remainder > options.remainder_tolerance * std::abs(trace))
    throw Error(ErrorCode::TruncationUnreliable,
                "next series term " + std::to_string(worst_remainder) + " vs trace " +
                    std::to_string(trace));
  return finish(std::move(raw), post_select);
}

cplx PairState::amplitude(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == std::pair{i, j}) return amplitudes[k];
  throw Error(ErrorCode::RangeError, "no such pair label");
}

PairState perturbative_pure_state(const ModeResponse& modes, const LaplacianSpectrum& spectrum) {
  const Matrix m = pair_amplitude(modes, spectrum);
  const std::size_t n = m.rows();
  PairState p;
  p.beta = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.beta(i, j) = 0.5 * kI * m(i, j);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // (a_i^dag)^2 |0> = sqrt(2) |2_i>; beta_ij + beta_ji for i != j.
      const cplx amp = (i == j) ? std::sqrt(2.0) * p.beta(i, i) : 2.0 * p.beta(i, j);
      p.labels.emplace_back(i, j);
      p.amplitudes.push_back(amp);
      norm2 += std::norm(amp);
    }
  if (!(norm2 > 0.0)) throw Error(ErrorCode::NoPhotons, "no pair amplitude at this drive");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : p.amplitudes) a *= scale;
  return p;
}

TruncatedDensityMatrix pure_density_matrix(const PairState& state) {
  if (state.beta.rows() != 2)
    throw Error(ErrorCode::InvalidParameter, "qutrit density matrix needs exactly two waveguides");
  std::array<cplx, 9> psi{};
  psi[TruncatedDensityMatrix::index(2, 0)] = state.amplitude(0, 0);
  psi[TruncatedDensityMatrix::index(0, 2)] = state.amplitude(1, 1);
  psi[TruncatedDensityMatrix::index(1, 1)] = state.amplitude(0, 1);
  TruncatedDensityMatrix out;
  out.post_selected = true;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) out.rho(i, j) = psi[i] * std::conj(psi[j]);
  return out;
}

namespace {

void require_normalized(const TruncatedDensityMatrix& r) {
  cplx tr = 0.0;
  for (std::size_t k = 0; k < 9; ++k) tr += r.rho(k, k);
  if (std::abs(tr - 1.0) > 1e-9) throw Error(ErrorCode::NotNormalized, "trace differs from one");
}

double entropy_base3(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p <= 1e-12) continue;  // 0 log 0 := 0, negative rounding clipped
    s -= p * std::log(p);
  }
  return s / std::log(3.0);
}

double overlap(const TruncatedDensityMatrix& r, const std::array<cplx, 9>& psi) {
  cplx f = 0.0;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) f += std::conj(psi[i]) * r.rho(i, j) * psi[j];
  return std::sqrt(std::max(0.0, f.real()));
}

}  // namespace

double von_neumann_entropy(const TruncatedDensityMatrix& r, int traced_subsystem) {
  require_normalized(r);
  if (traced_subsystem != 0 && traced_subsystem != 1)
    throw Error(ErrorCode::RangeError, "traced subsystem must be 0 or 1");
  CMatrix reduced(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int t = 0; t < 3; ++t) {
        const auto i = traced_subsystem == 1 ? TruncatedDensityMatrix::index(a, t)
                                             : TruncatedDensityMatrix::index(t, a);
        const auto j = traced_subsystem == 1 ? TruncatedDensityMatrix::index(b, t)
                                             : TruncatedDensityMatrix::index(t, b);
        reduced(a, b) += r.rho(i, j);
      }
  return entropy_base3(hermitian_eigenvalues(reduced));
}

double total_entropy(const TruncatedDensityMatrix& r) {
  require_normalized(r);
  return entropy_base3(hermitian_eigenvalues(r.rho));
}

double purity(const TruncatedDensityMatrix& r) {
  double p = 0.0;
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) p += (r.rho(i, j) * r.rho(j, i)).real();
  return p;
}

double noon_fidelity(const TruncatedDensityMatrix& r) {
  std::array<cplx, 9> psi{};
  psi[TruncatedDensityMatrix::index(2, 0)] = 1.0 / std::sqrt(2.0);
  psi[TruncatedDensityMatrix::index(0, 2)] = 1.0 / std::sqrt(2.0);
  return overlap(r, psi);
}

double maximally_entangled_fidelity(const TruncatedDensityMatrix& r) {
  std::array<cplx, 9> psi{};
  psi[TruncatedDensityMatrix::index(1, 1)] = 1.0 / std::sqrt(3.0);
  psi[TruncatedDensityMatrix::index(2, 0)] = 1.0 / std::sqrt(3.0);
  psi[TruncatedDensityMatrix::index(0, 2)] = 1.0 / std::sqrt(3.0);
  return overlap(r, psi);
}

double noon_fidelity(const PairState& state) {
  const std::size_t n = state.beta.rows();
  cplx f = 0.0;
  for (std::size_t i = 0; i < n; ++i) f += state.amplitude(i, i);
  return std::abs(f) / std::sqrt(static_cast<double>(n));
}

}  // namespace dce
