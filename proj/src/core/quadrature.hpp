#ifndef RAIDLAB_QUADRATURE_HPP
#define RAIDLAB_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace raidlab {

// Adaptive Simpson on [a,b] with absolute tolerance.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol, int depth = 60) {
  struct Impl {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) {
      double m = 0.5 * (a + b);
      double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      double flm = f(lm), frm = f(rm);
      double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  } impl{f};
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return impl.run(a, b, fa, fm, fb, whole, tol, depth);
}

// Integral over [0, inf) of a decaying integrand: adaptive Simpson over
// geometrically growing windows until a window contributes less than
// rel_tol of the accumulated value.
inline double integrate_to_infinity(const std::function<double(double)>& f,
                                    double scale, double rel_tol = 1e-10) {
  double total = 0.0;
  double a = 0.0, width = scale;
  for (int window = 0; window < 200; ++window) {
    double piece = adaptive_simpson(f, a, a + width, rel_tol * (std::abs(total) + scale));
    total += piece;
    a += width;
    width *= 2.0;
    if (window > 3 && std::abs(piece) <= rel_tol * std::abs(total)) break;
  }
  return total;
}

}  // namespace raidlab

#endif
