#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "convpow/measure.hpp"

namespace convpow {

/// A finitely supported real sequence on Z; no normalization.
struct LatticeSequence {
  std::int64_t offset = 0;
  std::vector<double> values;

  [[nodiscard]] double at(std::int64_t k) const;
  [[nodiscard]] double l1_norm() const;
  [[nodiscard]] std::int64_t last() const { return offset + static_cast<std::int64_t>(values.size()) - 1; }
};

/// (M phi)(k) = max_{1 <= n <= n_max} |(mu^n * phi)(k)| on the window every
/// mu^n * phi can reach. Throws InvalidInput for n_max < 1 or empty phi.
LatticeSequence maximal_function(const LatticeMeasure& mu, const LatticeSequence& phi,
                                 std::int64_t n_max);

/// The same sup truncated at each of the ascending depths, from one pass.
std::vector<LatticeSequence> maximal_function_checkpoints(const LatticeMeasure& mu,
                                                          const LatticeSequence& phi,
                                                          std::span<const std::int64_t> depths);

struct LevelSetCurve {
  std::vector<double> lambda_values;  // descending
  std::vector<std::int64_t> counts;   // |{k : M phi(k) > lambda}|
  std::vector<double> constants;      // lambda * count / ||phi||_1
  std::int64_t n_max = 0;
  double phi_norm = 0.0;

  /// max over the curve of the constants.
  [[nodiscard]] double headline() const;
};

/// Throws InvalidInput when phi_norm <= 0 or some lambda <= 0.
LevelSetCurve weak_type_curve(const LatticeSequence& m_phi, double phi_norm,
                              std::span<const double> lambda_values, std::int64_t n_max = 0);

/// `count` points log-spaced over [lo, hi], descending.
std::vector<double> log_spaced_lambdas(double lo = 1e-4, double hi = 1.0, std::size_t count = 40);

/// Columns lambda, count, constant.
void write_levels_csv(const LevelSetCurve& curve, std::ostream& out);

}  // namespace convpow
