#include "convpow/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "convpow/convolution.hpp"
#include "convpow/errors.hpp"
#include "convpow/summation.hpp"

namespace convpow {
namespace {

Truncation combine(const Truncation& a, const Truncation& b) {
  if (!a.active() && !b.active()) return {};
  return {a.radius + b.radius, 1.0 - (1.0 - a.deficit) * (1.0 - b.deficit)};
}

// Clamps negative round-off, restores `expected` mass, and reports the
// pre-restoration discrepancy.
void clamp_and_restore(std::vector<double>& w, double expected) {
  for (double& x : w) {
    if (x < 0.0) x = 0.0;
  }
  const double mass = compensated_sum(w);
  const double deficit = mass - expected;
  if (!(std::abs(deficit) <= kClampDeficitLimit)) {
    throw PrecisionError("convolution power lost " + std::to_string(deficit) +
                         " of mass to round-off; reduce n or the support width");
  }
  if (mass > 0.0) {
    const double scale = expected / mass;
    for (double& x : w) x *= scale;
  }
}

}  // namespace

LatticeMeasure::LatticeMeasure(std::int64_t offset, std::vector<double> weights, double tail_mass,
                               Truncation truncation)
    : offset_(offset), weights_(std::move(weights)), tail_mass_(tail_mass),
      truncation_(truncation) {
  if (!std::isfinite(tail_mass_) || tail_mass_ < 0.0) {
    throw InvalidInput("tail_mass must be finite and nonnegative");
  }
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] < 0.0) {
      throw InvalidInput("weights[" + std::to_string(i) + "] must be finite and nonnegative");
    }
  }
  const auto first = std::find_if(weights_.begin(), weights_.end(), [](double x) { return x > 0; });
  if (first == weights_.end()) throw InvalidInput("measure has no positive weight");
  const auto last =
      std::find_if(weights_.rbegin(), weights_.rend(), [](double x) { return x > 0; }).base();
  offset_ += first - weights_.begin();
  weights_ = std::vector<double>(first, last);

  const double total = compensated_sum(weights_) + tail_mass_;
  if (!(std::abs(total - 1.0) <= kNormalizationTolerance)) {
    throw InvalidInput("weights plus tail_mass sum to " + std::to_string(total) +
                       ", expected 1 within 1e-12");
  }
}

LatticeMeasure LatticeMeasure::atom(std::int64_t k) { return LatticeMeasure(k, {1.0}); }

LatticeMeasure LatticeMeasure::from_atoms(std::span<const std::int64_t> points,
                                          std::span<const double> weights) {
  if (points.size() != weights.size()) {
    throw InvalidInput("points and weights differ in length");
  }
  if (points.empty()) throw InvalidInput("at least one atom is required");
  std::map<std::int64_t, CompensatedSum> acc;
  for (std::size_t i = 0; i < points.size(); ++i) acc[points[i]].add(weights[i]);
  const std::int64_t lo = acc.begin()->first;
  const std::int64_t hi = acc.rbegin()->first;
  std::vector<double> w(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (const auto& [k, sum] : acc) w[static_cast<std::size_t>(k - lo)] = sum.value();
  return LatticeMeasure(lo, std::move(w));
}

double LatticeMeasure::operator()(std::int64_t k) const {
  if (k < offset_ || k > last()) return 0.0;
  return weights_[static_cast<std::size_t>(k - offset_)];
}

double LatticeMeasure::stored_mass() const { return compensated_sum(weights_); }

std::int64_t LatticeMeasure::radius() const { return std::max(std::abs(offset_), std::abs(last())); }

bool LatticeMeasure::is_symmetric() const {
  if (offset_ != -last()) return false;
  const std::size_t n = weights_.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (weights_[i] != weights_[n - 1 - i]) return false;
  }
  return true;
}

std::vector<std::int64_t> LatticeMeasure::support() const {
  std::vector<std::int64_t> pts;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) pts.push_back(offset_ + static_cast<std::int64_t>(i));
  }
  return pts;
}

LatticeMeasure LatticeMeasure::reflected() const {
  std::vector<double> w(weights_.rbegin(), weights_.rend());
  return LatticeMeasure(-last(), std::move(w), tail_mass_, truncation_);
}

LatticeMeasure LatticeMeasure::with_truncation(Truncation truncation) const {
  LatticeMeasure copy = *this;
  copy.truncation_ = truncation;
  return copy;
}

double expectation(const LatticeMeasure& mu) {
  CompensatedSum acc;
  const auto w = mu.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc.add(static_cast<double>(mu.offset() + static_cast<std::int64_t>(i)) * w[i]);
  }
  return acc.value();
}

Moment moment(const LatticeMeasure& mu, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InvalidInput("moment order p must be positive");
  CompensatedSum acc;
  const auto w = mu.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const double k = std::abs(static_cast<double>(mu.offset() + static_cast<std::int64_t>(i)));
    if (k == 0.0) continue;
    acc.add(std::pow(k, p) * w[i]);
  }
  return {acc.value(), mu.tail_mass() > 0.0 || mu.truncation().active()};
}

LatticeMeasure convolve(const LatticeMeasure& a, const LatticeMeasure& b) {
  std::vector<double> w = kernels::convolve_direct(a.weights(), b.weights());
  const double tail = std::max(0.0, 1.0 - compensated_sum(w));
  return LatticeMeasure(a.offset() + b.offset(), std::move(w), tail,
                        combine(a.truncation(), b.truncation()));
}

LatticeMeasure convolve_fast(const LatticeMeasure& a, const LatticeMeasure& b) {
  std::vector<double> w = kernels::convolve_fft(a.weights(), b.weights());
  const double expected = a.stored_mass() * b.stored_mass();
  clamp_and_restore(w, expected);
  const double tail = std::max(0.0, 1.0 - expected);
  return LatticeMeasure(a.offset() + b.offset(), std::move(w), tail,
                        combine(a.truncation(), b.truncation()));
}

LatticeMeasure convolution_power(const LatticeMeasure& mu, std::int64_t n, PowerMethod method) {
  if (n < 1) throw InvalidInput("convolution power requires n >= 1");
  if (method == PowerMethod::direct) {
    LatticeMeasure result = mu;
    for (std::int64_t i = 2; i <= n; ++i) result = convolve(result, mu);
    return result;
  }
  std::optional<LatticeMeasure> result;
  LatticeMeasure base = mu;
  for (std::int64_t rest = n;;) {
    if (rest & 1) result = result ? convolve_fast(*result, base) : base;
    rest >>= 1;
    if (rest == 0) break;
    base = convolve_fast(base, base);
  }
  return *result;
}

bool strictly_aperiodic(const LatticeMeasure& mu) {
  const auto pts = mu.support();
  if (pts.size() < 2) return false;
  std::int64_t g = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) g = std::gcd(g, pts[i] - pts[0]);
  return g == 1;
}

double sup_distance(const LatticeMeasure& a, const LatticeMeasure& b) {
  const std::int64_t lo = std::min(a.offset(), b.offset());
  const std::int64_t hi = std::max(a.last(), b.last());
  double worst = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) worst = std::max(worst, std::abs(a(k) - b(k)));
  return worst;
}

}  // namespace convpow
