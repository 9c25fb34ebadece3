#pragma once

#include <cmath>

namespace dce {

namespace detail {

template <class F>
cplx simpson_step(F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                  int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const cplx flm = f(lm), frm = f(rm);
  const cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const cplx delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
cplx adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth) {
  // Split once up front so a symmetric integrand cannot fool the first
  // error estimate.
  cplx total = 0.0;
  constexpr int pieces = 8;
  const double h = (b - a) / pieces;
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + k * h, hi = (k + 1 == pieces) ? b : lo + h;
    const cplx fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
    const cplx whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, abs_tol / pieces, max_depth);
  }
  return total;
}

}  // namespace dce
