#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace convpow {

/// Sum(weights) + tail_mass must lie within this distance of 1.
inline constexpr double kNormalizationTolerance = 1e-12;

/// Largest mass discrepancy the fast power may absorb by renormalizing after
/// clamping negative round-off.
inline constexpr double kClampDeficitLimit = 1e-9;

/// Provenance of a measure obtained by cutting an infinite-support law to
/// [-radius, radius] and renormalizing.
struct Truncation {
  std::int64_t radius = 0;  // 0 when the law has genuinely finite support
  double deficit = 0.0;     // mass the infinite law puts outside the window

  [[nodiscard]] bool active() const { return radius > 0; }
  friend bool operator==(const Truncation&, const Truncation&) = default;
};

/// A finitely supported probability measure on the integers, stored as a
/// dense weight window starting at offset(). Mass removed by truncation is
/// tracked in tail_mass(). Instances are immutable and canonically trimmed so
/// the first and last stored weights are nonzero.
class LatticeMeasure {
 public:
  /// Throws InvalidInput on negative or non-finite weights, an all-zero
  /// window, or a total mass outside 1 +- kNormalizationTolerance.
  LatticeMeasure(std::int64_t offset, std::vector<double> weights, double tail_mass = 0.0,
                 Truncation truncation = {});

  static LatticeMeasure atom(std::int64_t k);
  /// Points may be unsorted; repeated points accumulate.
  static LatticeMeasure from_atoms(std::span<const std::int64_t> points,
                                   std::span<const double> weights);

  [[nodiscard]] std::int64_t offset() const { return offset_; }
  [[nodiscard]] std::int64_t last() const {
    return offset_ + static_cast<std::int64_t>(weights_.size()) - 1;
  }
  [[nodiscard]] std::size_t size() const { return weights_.size(); }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }
  [[nodiscard]] double tail_mass() const { return tail_mass_; }
  [[nodiscard]] const Truncation& truncation() const { return truncation_; }

  /// mu(k); zero outside the stored window.
  [[nodiscard]] double operator()(std::int64_t k) const;

  [[nodiscard]] double stored_mass() const;
  /// max |k| over the stored window.
  [[nodiscard]] std::int64_t radius() const;
  /// Exact mirror symmetry: mu(k) and mu(-k) are bit-equal for every k.
  [[nodiscard]] bool is_symmetric() const;
  /// Points carrying positive weight, ascending.
  [[nodiscard]] std::vector<std::int64_t> support() const;

  /// k -> -k.
  [[nodiscard]] LatticeMeasure reflected() const;
  [[nodiscard]] LatticeMeasure with_truncation(Truncation truncation) const;

  friend bool operator==(const LatticeMeasure&, const LatticeMeasure&) = default;

 private:
  std::int64_t offset_ = 0;
  std::vector<double> weights_;
  double tail_mass_ = 0.0;
  Truncation truncation_{};
};

enum class PowerMethod { direct, fast };

/// Absolute moment sum |k|^p mu(k). `lower_bound` is set when the measure is
/// a truncation, so the true moment of the underlying law is at least `value`.
struct Moment {
  double value = 0.0;
  bool lower_bound = false;
};

/// Sum k mu(k), compensated, ascending index order.
double expectation(const LatticeMeasure& mu);

/// Throws InvalidInput for p <= 0.
Moment moment(const LatticeMeasure& mu, double p);

/// Direct O(|a||b|) convolution; the reference path for every faster route.
LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b);

/// FFT product with negative round-off clamped and the mass restored.
/// Throws PrecisionError when the clamp deficit exceeds kClampDeficitLimit.
LatticeMeasure convolve_fast(const LatticeMeasure& a, const LatticeMeasure& b);

/// n-fold self convolution. `direct` iterates convolve(); `fast` squares
/// (log2 n FFT products). Throws InvalidInput for n < 1.
LatticeMeasure convolution_power(const LatticeMeasure& mu, std::int64_t n,
                                 PowerMethod method = PowerMethod::fast);

/// True iff the support is not contained in a proper coset a + dZ, d > 1,
/// i.e. the gcd of support differences is 1. A single atom returns false.
bool strictly_aperiodic(const LatticeMeasure& mu);

/// Largest |a(k) - b(k)| over the union of both windows.
double sup_distance(const LatticeMeasure& a, const LatticeMeasure& b);

}  // namespace convpow
