#pragma once

#include <cstddef>
#include <functional>

namespace convpow {

struct QuadratureOptions {
  double relative_tolerance = 1e-8;
  double absolute_floor = 1e-14;
  int max_depth = 48;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson bisection with Richardson correction on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// Integral from `origin` to `end` for integrands concentrated near `origin`:
/// the interval is cut into geometric panels origin + (end - origin) 2^-j so
/// features at any scale are resolved. end may lie on either side.
QuadratureResult integrate_graded(const std::function<double(double)>& f, double origin,
                                  double end, const QuadratureOptions& options = {});

}  // namespace convpow
