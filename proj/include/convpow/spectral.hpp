#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "convpow/measure.hpp"

namespace convpow {

using Complex = std::complex<double>;

/// Below this distance from 1, |theta| is treated as 1: such points are
/// excluded from ratio diagnostics and count as a failed majorant.
inline constexpr double kUnitModulusGap = 1e-10;

/// Petrov constants at or below this floor mean |theta| touches 1 at grid
/// resolution, i.e. the measure behaves as lattice-supported.
inline constexpr double kPetrovFloor = 1e-6;

struct GridOptions {
  /// Uniform symmetric grid t_j = j / (points - 1), |j| <= (points - 1) / 2,
  /// covering [-1/2, 1/2] (the endpoints are the same point of the circle).
  std::size_t points = 65537;
  /// Points with |t| below this radius are dropped; the origin always is.
  double puncture = 1e-6;
};

enum class PhiKind {
  ratio,     // phi(t) = |f'(t) / t|
  constant,  // a constant majorant, e.g. sup |theta''| for finite variance
};

/// theta(t) = sum mu(k) e^{2 pi i k t} and its first two derivatives sampled
/// on a punctured uniform grid, with f = Re theta, g = Im theta and the
/// majorant phi. Built from exact termwise sums (folded DFT), never from
/// finite differences.
struct SpectralProfile {
  std::vector<double> t;
  std::vector<Complex> theta;
  std::vector<Complex> d1;
  std::vector<Complex> d2;
  std::vector<double> phi;

  double spacing = 0.0;           // grid step 1 / (points - 1)
  std::int64_t half_points = 0;   // t ranges over j * spacing, |j| <= half_points
  double puncture = 0.0;
  Complex theta_origin{1.0, 0.0};  // values at t = 0, kept for difference stencils
  Complex d1_origin{};
  Complex d2_origin{};
  PhiKind phi_kind = PhiKind::ratio;
  bool symmetric = false;
  std::shared_ptr<const LatticeMeasure> source;

  [[nodiscard]] std::size_t size() const { return t.size(); }
  [[nodiscard]] double f(std::size_t i) const { return theta[i].real(); }
  [[nodiscard]] double g(std::size_t i) const { return theta[i].imag(); }
  /// Index of grid point j * spacing, or -1 when punctured.
  [[nodiscard]] std::int64_t index_of(std::int64_t j) const;
};

/// Termwise compensated sum; t in [-1/2, 1/2].
Complex transform_at(const LatticeMeasure& mu, double t);

/// sum (2 pi i k)^order mu(k) e^{2 pi i k t}, order 1 or 2. For truncated
/// laws this is the derivative of the truncated transform.
Complex derivative_at(const LatticeMeasure& mu, double t, int order);

/// Throws InvalidInput when options.points < 5.
SpectralProfile make_profile(const LatticeMeasure& mu, const GridOptions& options = {});

/// Copy of `profile` whose phi is the constant `value` (> 0).
SpectralProfile with_constant_phi(SpectralProfile profile, double value);

/// sup_{t != 0} |theta - 1| / (1 - |theta|) on the grid.
struct AngularRatio {
  double value = 0.0;
  double argmax_t = 0.0;
  bool unbounded = false;
  /// Local sups on windows [s, 4s] for s = 16f, 4f, f (f the finest scale
  /// at which |theta| is still resolvably below 1). Unbounded means each 4x
  /// refinement at least doubles the local sup.
  std::array<double, 3> ladder_scales{};
  std::array<double, 3> ladder_sups{};
  bool ladder_available = false;
};

/// Throws DiagnosticRefused when no grid point has |theta| < 1 - 1e-10.
AngularRatio angular_ratio_sup(const SpectralProfile& profile);

/// C* = min over the grid of -ln|theta(t)| / t^2, so |theta| <= exp(-C* t^2)
/// on the grid. Throws HypothesisFailure when C* <= kPetrovFloor.
double petrov_constant(const SpectralProfile& profile);

struct PhiPropertyReport {
  double window = 0.0;
  std::size_t samples = 0;

  double symmetry_violation = 0.0;  // max |phi(t) - phi(-t)| / phi(t)
  bool symmetric = false;           // violation <= 1e-10

  // Smallest constants with c phi >= |f''|, |theta''|, |theta'/t| on the window.
  double c1_empirical = 0.0;
  double c2_empirical = 0.0;
  double c3_empirical = 0.0;
  /// Some c1 in (1, 2) works iff c1_empirical < 2; the witness is the midpoint
  /// of (max(1, c1_empirical), 2).
  bool c1_admissible = false;
  double c1_witness = 0.0;

  double log_derivative_max = 0.0;  // max |t phi'(t)| / phi(t), centered differences
  bool log_derivative_ok = false;   // <= 1 + 1e-6

  std::array<double, 4> t_phi_max{};  // max |t phi| over windows w, w/2, w/4, w/8
  bool t_phi_vanishing = false;       // strictly decreasing across the halvings
};

/// Checks the structural properties a majorant phi must have near 0, as max
/// violation statistics over 0 < |t| <= window. Never throws on findings.
PhiPropertyReport phi_property_report(const SpectralProfile& profile, double window = 0.125);

struct ComponentRatioReport {
  double window = 0.0;
  double first_derivative_ratio = 0.0;   // sup |g'/f'|, |f'| > 1e-12
  double first_derivative_argmax = 0.0;
  double second_derivative_ratio = 0.0;  // sup |g''/f''|, |f''| > 1e-12
  double second_derivative_argmax = 0.0;
};

ComponentRatioReport component_ratio_report(const SpectralProfile& profile, double window = 0.5);

struct MajorantFit {
  double k_star = 0.0;
  double delta = 0.0;
  double worst_t = 0.0;
  bool side_condition_ok = false;  // 0 <= 1 - k* t^2 phi <= 1 on the window
  std::size_t samples = 0;
};

/// k* = min over 0 < |t| <= delta of (1 - |theta|) / (t^2 phi). Throws
/// HypothesisFailure when |theta| reaches 1 on the window or k* <= 0, and
/// DiagnosticRefused when phi is not positive there.
MajorantFit majorant_fit(const SpectralProfile& profile, double delta);

using PhiFunction = std::function<double(double)>;

/// Exact |f'(t)/t| of the measure by termwise summation; 4 pi^2 m2 at t = 0.
PhiFunction exact_phi_function(const LatticeMeasure& mu);

/// Linear interpolation of the profile's phi, switching to the exact source
/// sum inside the first grid cell around 0.
PhiFunction profile_phi_function(const SpectralProfile& profile);

struct LemmaIntegrals {
  std::vector<std::int64_t> n_values;
  std::vector<double> j1;  // n   * int (1 - k t^2 phi)^{n-1} |t| phi dt
  std::vector<double> j2;  // n^2 * int (1 - k t^2 phi)^{n-2} |t|^3 phi^2 dt
  double j1_max = 0.0;
  double j2_max = 0.0;
};

/// Integrals over (-delta, delta) by graded adaptive quadrature (relative
/// tolerance 1e-8). Throws DiagnosticRefused when 0 <= 1 - k t^2 phi <= 1
/// fails on the interval, InvalidInput for bad n lists.
LemmaIntegrals lemma_integrals(const PhiFunction& phi, double k, double delta,
                               std::span<const std::int64_t> n_values);

/// Columns t, Re theta, Im theta, |theta|, Re theta', Im theta', Re theta'',
/// Im theta'', phi.
void write_profile_csv(const SpectralProfile& profile, std::ostream& out);

}  // namespace convpow
