#include "convpow/tail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "convpow/errors.hpp"
#include "convpow/summation.hpp"

namespace convpow {
namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

Line least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line line;
  line.slope = sxy.value() / sxx.value();
  line.intercept = my - line.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    line.residual = std::max(line.residual, std::abs(y[i] - line.intercept - line.slope * x[i]));
  }
  return line;
}

}  // namespace

GrowthCurve partial_second_moment_curve(const LatticeMeasure& mu,
                                        std::span<const std::int64_t> n_values) {
  if (n_values.empty()) throw InvalidInput("n list is empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw InvalidInput("n values must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw InvalidInput("n values must ascend strictly");
  }
  const auto& trunc = mu.truncation();
  if (trunc.active() && n_values.back() > trunc.radius) {
    throw InvalidInput("n = " + std::to_string(n_values.back()) + " exceeds the truncation radius " +
                       std::to_string(trunc.radius) + "; the curve would be artificially flat");
  }

  GrowthCurve curve;
  curve.n_values.assign(n_values.begin(), n_values.end());
  curve.truncation_radius = trunc.active() ? trunc.radius : 0;
  curve.s_values.reserve(n_values.size());

  // Running sum over shells |k| = m, ascending; every summand is >= 0, so
  // the sampled values are non-decreasing.
  const std::int64_t reach = mu.radius();
  CompensatedSum s;
  std::int64_t m = 0;
  for (auto n : n_values) {
    const std::int64_t stop = std::min(n, reach);
    while (m < stop) {
      ++m;
      const double k2 = static_cast<double>(m) * static_cast<double>(m);
      s += k2 * (mu(m) + mu(-m));
    }
    curve.s_values.push_back(std::max(s.value(), curve.s_values.empty() ? 0.0 : curve.s_values.back()));
  }
  return curve;
}

GrowthFit growth_exponent(const GrowthCurve& curve) {
  if (curve.n_values.empty()) throw DiagnosticRefused("growth curve is empty");
  const double low = 10.0 * static_cast<double>(curve.n_values.front());
  const double high = curve.truncation_radius > 0 ? static_cast<double>(curve.truncation_radius) / 10.0
                                                  : std::numeric_limits<double>::infinity();
  std::vector<double> x, y;
  GrowthFit fit;
  bool started = false;
  for (std::size_t i = 0; i < curve.n_values.size(); ++i) {
    const auto n = static_cast<double>(curve.n_values[i]);
    if (n < low || n > high || !(curve.s_values[i] > 0.0)) continue;
    if (!started) fit.first = i;
    started = true;
    fit.last = i;
    x.push_back(std::log(n));
    y.push_back(std::log(curve.s_values[i]));
  }
  if (x.size() < 8 || x.back() - x.front() < 2.0 * std::log(10.0) * (1.0 - 1e-12)) {
    throw DiagnosticRefused("growth fit window has " + std::to_string(x.size()) +
                            " points; need >= 8 spanning >= 2 decades");
  }
  const Line line = least_squares(x, y);
  fit.exponent = line.slope;
  fit.residual = line.residual;
  return fit;
}

std::vector<std::int64_t> log_spaced_n(std::int64_t lo, std::int64_t hi, std::size_t count) {
  if (lo < 1 || hi < lo || count == 0) throw InvalidInput("log_spaced_n needs 1 <= lo <= hi, count >= 1");
  std::vector<std::int64_t> out;
  if (count == 1 || lo == hi) return {lo};
  const double a = std::log(static_cast<double>(lo));
  const double b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    const double u = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    auto n = i + 1 == count ? hi : static_cast<std::int64_t>(std::llround(std::exp(u)));
    n = std::clamp(n, lo, hi);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

std::vector<std::int64_t> default_growth_n(const LatticeMeasure& mu) {
  // Finite-support laws are followed past their radius so the saturated
  // plateau enters the fit window.
  const std::int64_t reach = std::max<std::int64_t>(1, mu.radius());
  const std::int64_t hi = mu.truncation().active() ? reach : std::max<std::int64_t>(reach, 10000);
  const double decades = std::log10(static_cast<double>(hi));
  const auto count = static_cast<std::size_t>(std::ceil(8.0 * decades)) + 1;
  return log_spaced_n(1, hi, count);
}

LipschitzEstimate lipschitz_exponent_estimate(const SpectralProfile& p) {
  const std::int64_t half = p.half_points;
  const std::size_t width = static_cast<std::size_t>(2 * half + 1);
  // theta' on the full grid j = -half..half; punctured points filled from
  // the origin value or the source measure.
  std::vector<Complex> d1(width);
  std::vector<bool> known(width, false);
  for (std::int64_t j = -half; j <= half; ++j) {
    const auto slot = static_cast<std::size_t>(j + half);
    const std::int64_t idx = p.index_of(j);
    if (idx >= 0) {
      d1[slot] = p.d1[static_cast<std::size_t>(idx)];
      known[slot] = true;
    } else if (j == 0) {
      d1[slot] = p.d1_origin;
      known[slot] = true;
    } else if (p.source) {
      d1[slot] = derivative_at(*p.source, static_cast<double>(j) * p.spacing, 1);
      known[slot] = true;
    }
  }

  LipschitzEstimate out;
  for (int j = 0; j < 10; ++j) {
    const std::int64_t step = std::int64_t{1} << j;
    if (step >= static_cast<std::int64_t>(width)) break;
    double m = 0.0;
    for (std::size_t i = 0; i + static_cast<std::size_t>(step) < width; ++i) {
      const std::size_t k = i + static_cast<std::size_t>(step);
      if (known[i] && known[k]) m = std::max(m, std::abs(d1[k] - d1[i]));
    }
    out.steps.push_back(static_cast<double>(step) * p.spacing);
    out.moduli.push_back(m);
  }
  if (out.steps.size() < 4) {
    throw DiagnosticRefused("only " + std::to_string(out.steps.size()) +
                            " dyadic steps fit on the grid; need >= 4");
  }
  if (*std::max_element(out.moduli.begin(), out.moduli.end()) == 0.0) {
    out.exponent = std::numeric_limits<double>::infinity();
    return out;
  }
  std::vector<double> x, y;
  for (std::size_t i = 0; i < out.steps.size(); ++i) {
    if (out.moduli[i] > 0.0) {
      x.push_back(std::log(out.steps[i]));
      y.push_back(std::log(out.moduli[i]));
    }
  }
  if (x.size() < 4) throw DiagnosticRefused("fewer than 4 dyadic steps with nonzero modulus");
  const Line line = least_squares(x, y);
  out.exponent = line.slope;
  out.residual = line.residual;
  return out;
}

void write_growth_csv(const GrowthCurve& curve, std::ostream& out) {
  const auto old = out.precision(17);
  out << "n,S\n";
  for (std::size_t i = 0; i < curve.n_values.size(); ++i) {
    out << curve.n_values[i] << ',' << curve.s_values[i] << '\n';
  }
  out.precision(old);
}

}  // namespace convpow
