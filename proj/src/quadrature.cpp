#include "convpow/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "convpow/summation.hpp"

namespace convpow {
namespace {

struct Panel {
  const std::function<double(double)>& f;
  const QuadratureOptions& options;
  std::size_t evaluations = 0;
  double error = 0.0;

  double eval(double x) {
    ++evaluations;
    return f(x);
  }

  static double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                int depth) {
    const double m = 0.5 * (a + b);
    const double flm = eval(0.5 * (a + m));
    const double frm = eval(0.5 * (m + b));
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
      error += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  }

  // One adaptive panel; the tolerance scales with the panel's own magnitude.
  double run(double a, double b) {
    const double fa = eval(a);
    const double fm = eval(0.5 * (a + b));
    const double fb = eval(b);
    const double whole = simpson(a, b, fa, fm, fb);
    const double scale = std::abs(b - a) / 6.0 * (std::abs(fa) + 4.0 * std::abs(fm) + std::abs(fb));
    const double tol = std::max(options.absolute_floor, options.relative_tolerance * scale);
    return refine(a, b, fa, fm, fb, whole, tol, options.max_depth);
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  Panel panel{f, options};
  constexpr int kPieces = 8;
  CompensatedSum total;
  const double h = (b - a) / kPieces;
  for (int i = 0; i < kPieces; ++i) {
    const double lo = a + h * i;
    const double hi = i + 1 == kPieces ? b : a + h * (i + 1);
    total.add(panel.run(lo, hi));
  }
  return {total.value(), panel.error, panel.evaluations};
}

QuadratureResult integrate_graded(const std::function<double(double)>& f, double origin,
                                  double end, const QuadratureOptions& options) {
  Panel panel{f, options};
  constexpr int kLevels = 52;
  const double length = end - origin;
  CompensatedSum total;
  // Innermost cell first, then outward.
  double inner = origin + std::ldexp(length, -kLevels);
  total.add(panel.run(origin, inner));
  for (int j = kLevels - 1; j >= 0; --j) {
    const double outer = j == 0 ? end : origin + std::ldexp(length, -j);
    total.add(panel.run(inner, outer));
    inner = outer;
  }
  return {total.value(), panel.error, panel.evaluations};
}

}  // namespace convpow
