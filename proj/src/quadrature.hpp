#ifndef HAZMON_SRC_QUADRATURE_HPP
#define HAZMON_SRC_QUADRATURE_HPP

#include <cmath>

namespace hazmon {
namespace detail {

template <class F>
double simpson_rec(const F& f, double a, double fa, double m, double fm,
                   double b, double fb, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson quadrature with Richardson correction.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol,
                        int depth = 48) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, fa, m, fm, b, fb, whole, tol, depth);
}

}  // namespace detail
}  // namespace hazmon

#endif
