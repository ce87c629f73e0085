#include <algorithm>
#include <cmath>
#include <string>

#include "convpow/errors.hpp"
#include "convpow/quadrature.hpp"
#include "convpow/spectral.hpp"

namespace convpow {
namespace {

constexpr double kSideSlack = 1e-12;
constexpr int kPrescanPoints = 2048;

double base_at(const PhiFunction& phi, double k, double t) {
  const double u = 1.0 - k * t * t * phi(t);
  if (!(u >= -kSideSlack && u <= 1.0 + kSideSlack)) {
    throw DiagnosticRefused("side condition 0 <= 1 - k t^2 phi(t) <= 1 fails at t = " +
                            std::to_string(t) + " (value " + std::to_string(u) + ")");
  }
  return std::clamp(u, 0.0, 1.0);
}

// Integral over (-delta, delta) split at 0, each half graded toward the origin.
double symmetric_integral(const std::function<double(double)>& f, double delta) {
  const double right = integrate_graded(f, 0.0, delta).value;
  const double left = -integrate_graded(f, 0.0, -delta).value;
  return right + left;
}

}  // namespace

LemmaIntegrals lemma_integrals(const PhiFunction& phi, double k, double delta,
                               std::span<const std::int64_t> n_values) {
  if (!phi) throw InvalidInput("phi function is empty");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("k must be positive and finite");
  if (!(delta > 0.0 && delta <= 0.5)) throw InvalidInput("delta must lie in (0, 1/2]");
  if (n_values.empty()) throw InvalidInput("n list is empty");
  for (auto n : n_values) {
    if (n < 1) throw InvalidInput("n values must be >= 1, got " + std::to_string(n));
  }

  for (int i = 1; i <= kPrescanPoints; ++i) {
    const double t = delta * i / kPrescanPoints;
    base_at(phi, k, t);
    base_at(phi, k, -t);
  }

  LemmaIntegrals out;
  out.n_values.assign(n_values.begin(), n_values.end());
  for (auto n : n_values) {
    const double nd = static_cast<double>(n);
    auto first = [&](double t) {
      if (t == 0.0) return 0.0;
      const double p = phi(t);
      return std::pow(base_at(phi, k, t), nd - 1.0) * std::abs(t) * p;
    };
    auto second = [&](double t) {
      if (t == 0.0) return 0.0;
      const double p = phi(t);
      const double at = std::abs(t);
      return std::pow(base_at(phi, k, t), nd - 2.0) * at * at * at * p * p;
    };
    out.j1.push_back(nd * symmetric_integral(first, delta));
    out.j2.push_back(nd * nd * symmetric_integral(second, delta));
  }
  out.j1_max = *std::max_element(out.j1.begin(), out.j1.end());
  out.j2_max = *std::max_element(out.j2.begin(), out.j2.end());
  return out;
}

}  // namespace convpow
