#include "convpow/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "convpow/convolution.hpp"
#include "convpow/errors.hpp"
#include "convpow/summation.hpp"

namespace convpow {

double LatticeSequence::at(std::int64_t k) const {
  if (k < offset || k > last()) return 0.0;
  return values[static_cast<std::size_t>(k - offset)];
}

double LatticeSequence::l1_norm() const {
  CompensatedSum s;
  for (double v : values) s += std::abs(v);
  return s.value();
}

std::vector<LatticeSequence> maximal_function_checkpoints(const LatticeMeasure& mu,
                                                          const LatticeSequence& phi,
                                                          std::span<const std::int64_t> depths) {
  if (phi.values.empty()) throw InvalidInput("phi is empty");
  for (double v : phi.values) {
    if (!std::isfinite(v)) throw InvalidInput("phi values must be finite");
  }
  if (depths.empty()) throw InvalidInput("no truncation depths given");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 1) throw InvalidInput("n_max must be >= 1");
    if (i > 0 && depths[i] <= depths[i - 1]) throw InvalidInput("depths must ascend strictly");
  }

  // Window reachable by some mu^n * phi with n <= depth.
  auto window = [&](std::int64_t depth) {
    const std::int64_t lo = phi.offset + std::min(mu.offset(), depth * mu.offset());
    const std::int64_t hi = phi.last() + std::max(mu.last(), depth * mu.last());
    return std::pair{lo, hi};
  };
  const auto [lo, hi] = window(depths.back());
  std::vector<double> sup(static_cast<std::size_t>(hi - lo + 1), 0.0);

  std::vector<double> psi = phi.values;
  std::int64_t psi_offset = phi.offset;
  std::vector<LatticeSequence> out;
  std::size_t next = 0;
  for (std::int64_t n = 1; n <= depths.back(); ++n) {
    psi = kernels::convolve_auto(mu.weights(), psi);
    psi_offset += mu.offset();
    for (std::size_t i = 0; i < psi.size(); ++i) {
      auto& s = sup[static_cast<std::size_t>(psi_offset - lo) + i];
      s = std::max(s, std::abs(psi[i]));
    }
    if (n == depths[next]) {
      const auto [a, b] = window(n);
      LatticeSequence snap;
      snap.offset = a;
      snap.values.assign(sup.begin() + (a - lo), sup.begin() + (b - lo) + 1);
      out.push_back(std::move(snap));
      ++next;
    }
  }
  return out;
}

LatticeSequence maximal_function(const LatticeMeasure& mu, const LatticeSequence& phi,
                                 std::int64_t n_max) {
  const std::int64_t depth[] = {n_max};
  return std::move(maximal_function_checkpoints(mu, phi, depth).front());
}

double LevelSetCurve::headline() const {
  return constants.empty() ? 0.0 : *std::max_element(constants.begin(), constants.end());
}

LevelSetCurve weak_type_curve(const LatticeSequence& m_phi, double phi_norm,
                              std::span<const double> lambda_values, std::int64_t n_max) {
  if (!(phi_norm > 0.0) || !std::isfinite(phi_norm)) {
    throw InvalidInput("phi has zero l1 norm; the weak-type ratio is undefined");
  }
  for (double l : lambda_values) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidInput("lambda values must be positive");
  }
  std::vector<double> sorted = m_phi.values;
  std::sort(sorted.begin(), sorted.end());

  LevelSetCurve curve;
  curve.lambda_values.assign(lambda_values.begin(), lambda_values.end());
  std::sort(curve.lambda_values.begin(), curve.lambda_values.end(), std::greater<>());
  curve.n_max = n_max;
  curve.phi_norm = phi_norm;
  for (double l : curve.lambda_values) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), l);
    curve.counts.push_back(static_cast<std::int64_t>(above));
    curve.constants.push_back(l * static_cast<double>(above) / phi_norm);
  }
  return curve;
}

std::vector<double> log_spaced_lambdas(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi >= lo) || count == 0) throw InvalidInput("lambda grid needs 0 < lo <= hi");
  if (count == 1) return {hi};
  std::vector<double> out;
  const double a = std::log(hi);
  const double b = std::log(lo);
  for (std::size_t i = 0; i < count; ++i) {
    if (i == 0) out.push_back(hi);
    else if (i + 1 == count) out.push_back(lo);
    else out.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1)));
  }
  return out;
}

void write_levels_csv(const LevelSetCurve& curve, std::ostream& out) {
  const auto old = out.precision(17);
  out << "lambda,count,constant\n";
  for (std::size_t i = 0; i < curve.lambda_values.size(); ++i) {
    out << curve.lambda_values[i] << ',' << curve.counts[i] << ',' << curve.constants[i] << '\n';
  }
  out.precision(old);
}

}  // namespace convpow
