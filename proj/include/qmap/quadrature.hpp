#pragma once

// Adaptive Simpson quadrature with the usual 1/15 error estimate.

#include <cmath>
#include <functional>

namespace qmap {

namespace detail {
inline double simpson(const std::function<double(double)>& f, double a, double fa,
                      double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adapt(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double fm, double whole, double tol,
                    int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, m, fm, flm);
  double right = simpson(f, m, fm, b, fb, frm);
  double err = left + right - whole;
  if (depth <= 0 || std::fabs(err) < 15.0 * tol)
    return left + right + err / 15.0;
  return adapt(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = detail::simpson(f, a, fa, b, fb, fm);
  return detail::adapt(f, a, fa, b, fb, fm, whole, tol, 50);
}

}  // namespace qmap
