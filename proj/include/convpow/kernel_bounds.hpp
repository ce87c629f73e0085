#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "convpow/measure.hpp"

namespace convpow {

/// mu^n(x) for the listed n on the contiguous window |x| <= x_limit.
/// Fits only use |x| <= fit_radius; the extra half radius keeps x + y inside
/// the table for every difference tuple with 2|y| <= |x|.
struct KernelTable {
  std::vector<std::int64_t> n_values;
  std::int64_t fit_radius = 0;
  std::int64_t x_limit = 0;
  std::vector<double> values;    // row-major, one row per n
  std::vector<double> row_mass;  // total mass of mu^n over its full support
  std::string source;

  [[nodiscard]] std::size_t width() const { return static_cast<std::size_t>(2 * x_limit + 1); }
  /// mu^{n_values[row]}(x); zero outside the window.
  [[nodiscard]] double at(std::size_t row, std::int64_t x) const {
    if (x < -x_limit || x > x_limit) return 0.0;
    return values[row * width() + static_cast<std::size_t>(x + x_limit)];
  }
};

/// Powers are built incrementally, each row from the previous one.
/// Throws InvalidInput for empty or non-ascending n lists, n < 1 or
/// fit_radius < 1; PrecisionError propagates from the FFT path.
KernelTable kernel_table(const LatticeMeasure& mu, std::span<const std::int64_t> n_values,
                         std::int64_t fit_radius, std::string source = {});

/// The rows with n <= n_max, e.g. to compare fits before and after doubling.
KernelTable restrict_rows(const KernelTable& table, std::int64_t n_max);

/// Every n up to n_max for short supports; 48 geometric values otherwise.
std::vector<std::int64_t> default_kernel_n(const LatticeMeasure& mu, std::int64_t n_max);

struct BoundFit {
  std::string regime;
  double fitted_constant = 0.0;
  std::array<std::int64_t, 3> worst_tuple{};  // (n, x, y)
  double worst_t = 0.0;                       // calderon check only
  std::size_t sample_count = 0;
};

/// max |mu^n(x)| / (sqrt(n) / |x|^{1+delta} + n^2 / x^2) over x != 0.
BoundFit pointwise_bound_fit(const KernelTable& table, double delta);

/// min(15 delta / 16, 3/4).
double small_n_sigma(double delta);

/// max |mu^n(x)| |x|^{1+sigma} over n <= |x|^{delta/8}. Throws EmptyRegime
/// when no table entry qualifies.
BoundFit small_n_regime_check(const KernelTable& table, double delta);

struct SmoothnessFits {
  BoundFit large_n;  // |mu^n(x+y) - mu^n(x)| x^2 / |y|, n >= |x|^{delta/8}, 0 < 2|y| <= |x|
  BoundFit global;   // |mu^n(x+y) - mu^n(x)| |x|^{1+alpha} / |y|^alpha, 0 < 2|y| <= |x|
};

/// Throws EmptyRegime when either regime is empty, InvalidInput for alpha
/// outside (0, 1].
SmoothnessFits smoothness_difference_fit(const KernelTable& table, double delta, double alpha);

/// max |K_t(x+y) - K_t(x)| / (|t| |y| / x^2) with K_t(x) = (e(xt) - 1) / x^2
/// and e(s) = exp(2 pi i s). Samples with t = 0 contribute 0. Throws
/// InvalidInput unless 0 < 2|y| < |x| for every pair.
BoundFit calderon_kernel_lemma_check(std::span<const double> t_values,
                                     std::span<const std::pair<std::int64_t, std::int64_t>> xy_pairs);

/// 201 uniform points of [-1/2, 1/2], 0 included.
std::vector<double> default_calderon_t();
/// Every admissible (x, y) with 3 <= |x| <= x_max.
std::vector<std::pair<std::int64_t, std::int64_t>> default_calderon_pairs(std::int64_t x_max = 64);

/// Columns n, x, value over the fit window.
void write_table_csv(const KernelTable& table, std::ostream& out);

}  // namespace convpow
