#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "convpow/measure.hpp"
#include "convpow/spectral.hpp"

namespace convpow {

/// S(n) = sum_{|k| <= n} k^2 mu(k) sampled at ascending n.
struct GrowthCurve {
  std::vector<std::int64_t> n_values;
  std::vector<double> s_values;
  std::int64_t truncation_radius = 0;  // 0 for finite-support laws
};

struct GrowthFit {
  double exponent = 0.0;
  std::size_t first = 0;  // fit window [first, last] as indices into the curve
  std::size_t last = 0;
  double residual = 0.0;  // max |log S - fitted line| over the window
};

/// Refuses (InvalidInput) unsorted n lists, n < 1, and n beyond the
/// truncation radius of a truncated law.
GrowthCurve partial_second_moment_curve(const LatticeMeasure& mu,
                                        std::span<const std::int64_t> n_values);

/// Least-squares slope of log S vs log n, dropping the first decade of n and
/// everything above a tenth of the truncation radius. Throws
/// DiagnosticRefused unless the window has >= 8 points over >= 2 decades.
GrowthFit growth_exponent(const GrowthCurve& curve);

/// Up to `count` distinct integers spread geometrically over [lo, hi].
std::vector<std::int64_t> log_spaced_n(std::int64_t lo, std::int64_t hi, std::size_t count);

/// The n list the reports use, 8 points per decade: 1 .. K for truncated
/// laws, 1 .. max(radius, 10^4) otherwise.
std::vector<std::int64_t> default_growth_n(const LatticeMeasure& mu);

struct LipschitzEstimate {
  double exponent = 0.0;  // +inf when theta' is identically zero
  std::vector<double> steps;
  std::vector<double> moduli;  // M(h) = max |theta'(t + h) - theta'(t)|
  double residual = 0.0;
};

/// Dyadic steps h = 2^j * spacing, j = 0..9 (fewer on coarse grids). Throws
/// DiagnosticRefused when fewer than 4 steps fit on the grid.
LipschitzEstimate lipschitz_exponent_estimate(const SpectralProfile& profile);

/// Columns n, S.
void write_growth_csv(const GrowthCurve& curve, std::ostream& out);

}  // namespace convpow
