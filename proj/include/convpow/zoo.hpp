#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "convpow/measure.hpp"

namespace convpow {

inline constexpr std::int64_t kDefaultSpectralTruncation = 100000;
inline constexpr std::int64_t kDefaultKernelTruncation = 1000;

enum class MeasureKind { power_law, mixture, lazy_walk, atoms, log_squared };

std::string to_string(MeasureKind kind);
/// Throws InvalidInput for unknown names.
MeasureKind measure_kind_from_string(const std::string& name);

/// Declarative description of a measure family member. Only the fields of
/// the selected kind are meaningful.
struct MeasureSpec {
  MeasureKind kind = MeasureKind::lazy_walk;

  // power_law: weights proportional to |k|^-beta. When sigma is set the
  // exponent is 2 + sigma and sigma is what gets serialized.
  std::optional<double> beta;
  std::optional<double> sigma;

  // mixture: a1 * eta + (1 - a1) * nu
  double a1 = 1.0;
  std::shared_ptr<const MeasureSpec> eta;
  std::shared_ptr<const MeasureSpec> nu;

  // atoms
  std::vector<std::int64_t> points;
  std::vector<double> weights;

  /// Truncation radius K for infinite-support kinds.
  std::optional<std::int64_t> truncation;

  [[nodiscard]] double power_exponent() const;
};

/// s_K / |k|^beta on 0 < |k| <= K, renormalized. Exactly mirror symmetric.
/// The infinite-law mass outside [-K, K] is recorded in truncation().deficit.
LatticeMeasure power_law(double beta, std::int64_t K);

/// a1 * eta + (1 - a1) * nu, a1 in (0, 1].
LatticeMeasure mixture(double a1, const LatticeMeasure& eta, const LatticeMeasure& nu);

/// 1/4 delta_{-1} + 1/2 delta_0 + 1/4 delta_1.
LatticeMeasure lazy_walk();

/// c_K / (|k| log^2 |k|) on 2 <= |k| <= K, renormalized; K >= 3. The tail
/// deficit is the integral estimate 1 / log(K + 1/2) of the infinite sum,
/// relative to the infinite normalizer.
LatticeMeasure log_squared_measure(std::int64_t K);

/// Explicit atoms; weights are renormalized if they sum to 1 within 1e-9.
LatticeMeasure atoms(std::span<const std::int64_t> points, std::span<const double> weights);

/// Builds the measure a spec describes. Throws InvalidInput when parameters
/// are out of range.
LatticeMeasure build_measure(const MeasureSpec& spec);

MeasureSpec power_law_spec(double beta, std::int64_t K);
MeasureSpec lazy_walk_spec();
MeasureSpec atoms_spec(std::vector<std::int64_t> points, std::vector<double> weights);
MeasureSpec mixture_spec(double a1, MeasureSpec eta, MeasureSpec nu);
MeasureSpec log_squared_spec(std::int64_t K);

/// a1 * power_law(beta, K) + (1 - a1) * lazy_walk: a centered measure with
/// infinite second moment for beta <= 3.
MeasureSpec power_mixture_spec(double beta, std::int64_t K, double a1 = 0.5);

struct NamedSpec {
  std::string name;
  MeasureSpec spec;
};

/// The catalogue the test suites sweep: every family, strictly aperiodic and
/// degenerate members alike.
std::vector<NamedSpec> standard_zoo(std::int64_t K = kDefaultKernelTruncation);

}  // namespace convpow
