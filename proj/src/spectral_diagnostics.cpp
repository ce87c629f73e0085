#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "convpow/errors.hpp"
#include "convpow/spectral.hpp"

namespace convpow {
namespace {

double modulus_gap(const Complex& theta) { return 1.0 - std::abs(theta); }

double angular_ratio(const Complex& theta) {
  return std::abs(theta - Complex(1.0, 0.0)) / modulus_gap(theta);
}

// Sup of the ratio over t = +-s (1 + i/4), i = 0..12, i.e. the window [s, 4s].
double ladder_sup(const LatticeMeasure& mu, double s) {
  double best = 0.0;
  for (int i = 0; i <= 12; ++i) {
    const double t = s * (1.0 + 0.25 * i);
    for (double signed_t : {-t, t}) {
      const Complex th = transform_at(mu, signed_t);
      if (modulus_gap(th) > kUnitModulusGap) best = std::max(best, angular_ratio(th));
    }
  }
  return best;
}

bool resolvable(const LatticeMeasure& mu, double t) {
  return modulus_gap(transform_at(mu, t)) > kUnitModulusGap &&
         modulus_gap(transform_at(mu, -t)) > kUnitModulusGap;
}

}  // namespace

AngularRatio angular_ratio_sup(const SpectralProfile& profile) {
  AngularRatio out;
  bool any = false;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (modulus_gap(profile.theta[i]) <= kUnitModulusGap) continue;
    const double r = angular_ratio(profile.theta[i]);
    if (!any || r > out.value) {
      out.value = r;
      out.argmax_t = profile.t[i];
    }
    any = true;
  }
  if (!any) {
    throw DiagnosticRefused(
        "|theta(t)| >= 1 - 1e-10 at every grid point; the measure is not strictly aperiodic");
  }
  if (!profile.source) return out;

  // Finest scale, on a 4x ladder starting 16x below the grid step, at which
  // |theta| is still resolvably below 1.
  const LatticeMeasure& mu = *profile.source;
  for (double f = profile.spacing / 16.0; 64.0 * f <= 0.5; f *= 4.0) {
    if (!resolvable(mu, f)) continue;
    out.ladder_available = true;
    out.ladder_scales = {16.0 * f, 4.0 * f, f};
    for (std::size_t r = 0; r < 3; ++r) out.ladder_sups[r] = ladder_sup(mu, out.ladder_scales[r]);
    const auto& s = out.ladder_sups;
    out.unbounded = s[0] > 0.0 && s[1] >= 2.0 * s[0] && s[2] >= 2.0 * s[1];
    break;
  }
  return out;
}

double petrov_constant(const SpectralProfile& profile) {
  double best = std::numeric_limits<double>::infinity();
  double worst_t = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double a = std::abs(profile.theta[i]);
    if (a == 0.0) continue;
    const double c = -std::log(a) / (profile.t[i] * profile.t[i]);
    if (c < best) {
      best = c;
      worst_t = profile.t[i];
    }
  }
  if (!(best > kPetrovFloor)) {
    throw HypothesisFailure("Gaussian majorant constant " + std::to_string(best) + " at t = " +
                            std::to_string(worst_t) +
                            " is not positive: |theta| reaches 1 away from 0, contradicting "
                            "strict aperiodicity");
  }
  return best;
}

PhiPropertyReport phi_property_report(const SpectralProfile& p, double window) {
  if (!(window > 0.0 && window <= 0.5)) throw InvalidInput("phi window must lie in (0, 1/2]");
  PhiPropertyReport r;
  r.window = window;
  const double tiny = std::numeric_limits<double>::min();
  std::array<double, 4> limits{window, window / 2, window / 4, window / 8};

  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = p.t[i];
    const double at = std::abs(t);
    if (at > window) continue;
    const double phi = p.phi[i];
    ++r.samples;
    for (std::size_t w = 0; w < limits.size(); ++w) {
      if (at <= limits[w]) r.t_phi_max[w] = std::max(r.t_phi_max[w], at * phi);
    }
    if (!(phi > 0.0)) continue;

    if (t > 0.0) {
      const auto j = static_cast<std::int64_t>(std::llround(t / p.spacing));
      const std::int64_t m = p.index_of(-j);
      if (m >= 0) {
        const double other = p.phi[static_cast<std::size_t>(m)];
        r.symmetry_violation = std::max(r.symmetry_violation, std::abs(phi - other) / phi);
      }
    }
    r.c1_empirical = std::max(r.c1_empirical, std::abs(p.d2[i].real()) / phi);
    r.c2_empirical = std::max(r.c2_empirical, std::abs(p.d2[i]) / phi);
    r.c3_empirical = std::max(r.c3_empirical, std::abs(p.d1[i]) / at / phi);

    // Centered difference only across two true grid neighbours on one side.
    if (i > 0 && i + 1 < p.size()) {
      const double left = p.t[i - 1];
      const double right = p.t[i + 1];
      const bool adjacent = std::abs((t - left) - p.spacing) < 0.5 * p.spacing &&
                            std::abs((right - t) - p.spacing) < 0.5 * p.spacing;
      if (adjacent && left * right > 0.0) {
        const double dphi = (p.phi[i + 1] - p.phi[i - 1]) / (right - left);
        r.log_derivative_max = std::max(r.log_derivative_max, std::abs(t * dphi) / std::max(phi, tiny));
      }
    }
  }
  r.symmetric = r.symmetry_violation <= 1e-10;
  r.c1_admissible = r.c1_empirical < 2.0;
  r.c1_witness = 0.5 * (std::max(1.0, r.c1_empirical) + 2.0);
  r.log_derivative_ok = r.log_derivative_max <= 1.0 + 1e-6;
  r.t_phi_vanishing = true;
  for (std::size_t w = 1; w < r.t_phi_max.size(); ++w) {
    if (!(r.t_phi_max[w] < r.t_phi_max[w - 1])) r.t_phi_vanishing = false;
  }
  return r;
}

ComponentRatioReport component_ratio_report(const SpectralProfile& p, double window) {
  if (!(window > 0.0 && window <= 0.5)) throw InvalidInput("ratio window must lie in (0, 1/2]");
  ComponentRatioReport r;
  r.window = window;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(p.t[i]) > window) continue;
    const double f1 = p.d1[i].real();
    const double f2 = p.d2[i].real();
    if (std::abs(f1) > 1e-12) {
      const double q = std::abs(p.d1[i].imag() / f1);
      if (q > r.first_derivative_ratio) {
        r.first_derivative_ratio = q;
        r.first_derivative_argmax = p.t[i];
      }
    }
    if (std::abs(f2) > 1e-12) {
      const double q = std::abs(p.d2[i].imag() / f2);
      if (q > r.second_derivative_ratio) {
        r.second_derivative_ratio = q;
        r.second_derivative_argmax = p.t[i];
      }
    }
  }
  return r;
}

MajorantFit majorant_fit(const SpectralProfile& p, double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) throw InvalidInput("majorant delta must lie in (0, 1/2]");
  MajorantFit fit;
  fit.delta = delta;
  fit.k_star = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = p.t[i];
    if (std::abs(t) > delta) continue;
    const double gap = modulus_gap(p.theta[i]);
    if (gap <= kUnitModulusGap) {
      throw HypothesisFailure("|theta(t)| reaches 1 at t = " + std::to_string(t) +
                              "; no majorant 1 - k t^2 phi with k > 0 exists");
    }
    if (!(p.phi[i] > 0.0) || !std::isfinite(p.phi[i])) {
      throw DiagnosticRefused("phi is not positive at t = " + std::to_string(t));
    }
    const double k = gap / (t * t * p.phi[i]);
    if (k < fit.k_star) {
      fit.k_star = k;
      fit.worst_t = t;
    }
    ++fit.samples;
  }
  if (fit.samples == 0) throw InvalidInput("majorant window contains no grid points");
  if (!(fit.k_star > 0.0)) {
    throw HypothesisFailure("majorant constant k* = " + std::to_string(fit.k_star) + " is not positive");
  }
  fit.side_condition_ok = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(p.t[i]) > delta) continue;
    const double v = 1.0 - fit.k_star * p.t[i] * p.t[i] * p.phi[i];
    if (v < -1e-12 || v > 1.0 + 1e-12) fit.side_condition_ok = false;
  }
  return fit;
}

}  // namespace convpow
