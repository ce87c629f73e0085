#include "convpow/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <unordered_map>

#include "convpow/errors.hpp"
#include "convpow/summation.hpp"
#include "fft.hpp"

namespace convpow {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// e^{2 pi i k t} with the phase reduced exactly to [-1/2, 1/2] turns first.
Complex unit_phase(std::int64_t k, double t) {
  const double x = static_cast<double>(k);
  const double turns = std::fma(x, t, -std::nearbyint(x * t));
  return {std::cos(kTwoPi * turns), std::sin(kTwoPi * turns)};
}

void check_frequency(double t) {
  if (!(t >= -0.5 && t <= 0.5)) throw InvalidInput("frequency t must lie in [-1/2, 1/2]");
}

std::int64_t first_kept(double spacing, double puncture) {
  auto j = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(puncture / spacing)));
  while (j > 1 && static_cast<double>(j - 1) * spacing >= puncture) --j;
  while (static_cast<double>(j) * spacing < puncture) ++j;
  return j;
}

}  // namespace

std::int64_t SpectralProfile::index_of(std::int64_t j) const {
  const std::int64_t inner = first_kept(spacing, puncture);
  if (j > half_points || j < -half_points) return -1;
  if (j > -inner && j < inner) return -1;
  if (j < 0) return j + half_points;
  return (half_points - inner + 1) + (j - inner);
}

Complex transform_at(const LatticeMeasure& mu, double t) {
  check_frequency(t);
  CompensatedSum re;
  CompensatedSum im;
  const auto w = mu.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const Complex e = unit_phase(mu.offset() + static_cast<std::int64_t>(i), t);
    re.add(w[i] * e.real());
    im.add(w[i] * e.imag());
  }
  return {re.value(), im.value()};
}

Complex derivative_at(const LatticeMeasure& mu, double t, int order) {
  if (order != 1 && order != 2) throw InvalidInput("derivative order must be 1 or 2");
  check_frequency(t);
  CompensatedSum re;
  CompensatedSum im;
  const auto w = mu.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const std::int64_t k = mu.offset() + static_cast<std::int64_t>(i);
    const Complex e = unit_phase(k, t);
    const double scale = kTwoPi * static_cast<double>(k);
    // (2 pi i k)^1 = i s, (2 pi i k)^2 = -s^2
    const Complex term = order == 1 ? Complex(-scale * e.imag(), scale * e.real())
                                    : -scale * scale * e;
    re.add(w[i] * term.real());
    im.add(w[i] * term.imag());
  }
  return {re.value(), im.value()};
}

SpectralProfile make_profile(const LatticeMeasure& mu, const GridOptions& options) {
  if (options.points < 5) throw InvalidInput("grid must have at least 5 points");
  if (!(options.puncture >= 0.0 && options.puncture < 0.25)) {
    throw InvalidInput("puncture radius must lie in [0, 1/4)");
  }
  const auto half = static_cast<std::int64_t>((options.points - 1) / 2);
  const std::int64_t n = 2 * half;

  // Fold k mod n: on t = j / n the exponential only sees k mod n, so the
  // length-n DFT of the folded weights is the exact termwise sum.
  std::vector<CompensatedSum> f0(static_cast<std::size_t>(n));
  std::vector<CompensatedSum> f1(static_cast<std::size_t>(n));
  std::vector<CompensatedSum> f2(static_cast<std::size_t>(n));
  const auto w = mu.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const std::int64_t k = mu.offset() + static_cast<std::int64_t>(i);
    const auto bin = static_cast<std::size_t>(((k % n) + n) % n);
    const double kd = static_cast<double>(k);
    f0[bin].add(w[i]);
    f1[bin].add(kd * w[i]);
    f2[bin].add(kd * kd * w[i]);
  }
  auto transform = [&](const std::vector<CompensatedSum>& folded) {
    std::vector<Complex> in(folded.size());
    for (std::size_t b = 0; b < folded.size(); ++b) in[b] = folded[b].value();
    return detail::dft_positive(in);
  };
  const std::vector<Complex> t0 = transform(f0);
  const std::vector<Complex> t1 = transform(f1);
  const std::vector<Complex> t2 = transform(f2);

  SpectralProfile p;
  p.spacing = 1.0 / static_cast<double>(n);
  p.half_points = half;
  p.puncture = options.puncture;
  p.symmetric = mu.is_symmetric();
  p.source = std::make_shared<const LatticeMeasure>(mu);

  const Complex i_two_pi(0.0, kTwoPi);
  const double minus_four_pi2 = -kTwoPi * kTwoPi;
  auto value_at = [&](std::int64_t j, Complex& th, Complex& d1, Complex& d2) {
    const auto bin = static_cast<std::size_t>(((j % n) + n) % n);
    th = t0[bin];
    d1 = i_two_pi * t1[bin];
    d2 = minus_four_pi2 * t2[bin];
    if (p.symmetric) {
      th.imag(0.0);
      d1.imag(0.0);
      d2.imag(0.0);
    }
  };
  value_at(0, p.theta_origin, p.d1_origin, p.d2_origin);

  const std::int64_t inner = first_kept(p.spacing, p.puncture);
  const std::size_t kept = static_cast<std::size_t>(2 * (half - inner + 1));
  p.t.reserve(kept);
  p.theta.reserve(kept);
  p.d1.reserve(kept);
  p.d2.reserve(kept);
  p.phi.reserve(kept);
  for (std::int64_t j = -half; j <= half; ++j) {
    if (j > -inner && j < inner) continue;
    const double t = static_cast<double>(j) / static_cast<double>(n);
    Complex th;
    Complex d1;
    Complex d2;
    value_at(j, th, d1, d2);
    p.t.push_back(t);
    p.theta.push_back(th);
    p.d1.push_back(d1);
    p.d2.push_back(d2);
    p.phi.push_back(std::abs(d1.real() / t));
  }
  return p;
}

SpectralProfile with_constant_phi(SpectralProfile profile, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidInput("constant phi must be positive");
  std::fill(profile.phi.begin(), profile.phi.end(), value);
  profile.phi_kind = PhiKind::constant;
  return profile;
}

PhiFunction exact_phi_function(const LatticeMeasure& mu) {
  auto measure = std::make_shared<const LatticeMeasure>(mu);
  const double at_origin = kTwoPi * kTwoPi * moment(mu, 2.0).value;
  return [measure, at_origin](double t) {
    if (t == 0.0) return at_origin;
    return std::abs(derivative_at(*measure, t, 1).real() / t);
  };
}

PhiFunction profile_phi_function(const SpectralProfile& profile) {
  if (profile.phi_kind == PhiKind::constant) {
    const double value = profile.phi.empty() ? 0.0 : profile.phi.front();
    return [value](double) { return value; };
  }
  if (!profile.source) throw InvalidInput("profile has no source measure");
  // Quadrature revisits the same abscissae for every n; the termwise sum is
  // the expensive part, so remember it.
  struct Memo {
    PhiFunction sum;
    std::mutex lock;
    std::unordered_map<double, double> values;
  };
  auto memo = std::make_shared<Memo>();
  memo->sum = exact_phi_function(*profile.source);
  const PhiFunction exact = [memo](double t) {
    {
      std::lock_guard guard(memo->lock);
      if (auto it = memo->values.find(t); it != memo->values.end()) return it->second;
    }
    const double v = memo->sum(t);
    std::lock_guard guard(memo->lock);
    memo->values.emplace(t, v);
    return v;
  };
  const double h = profile.spacing;
  const std::int64_t inner = first_kept(h, profile.puncture);
  const double inner_radius = static_cast<double>(inner) * h;
  auto grid = std::make_shared<const SpectralProfile>(profile);
  return [grid, exact, h, inner_radius](double t) {
    if (std::abs(t) < inner_radius) return exact(t);
    const double u = std::clamp(t / h, -static_cast<double>(grid->half_points),
                                static_cast<double>(grid->half_points));
    auto j = static_cast<std::int64_t>(std::floor(u));
    if (j == grid->half_points) --j;
    const std::int64_t lo = grid->index_of(j);
    const std::int64_t hi = grid->index_of(j + 1);
    if (lo < 0 || hi < 0) return exact(t);
    const double frac = u - static_cast<double>(j);
    return (1.0 - frac) * grid->phi[static_cast<std::size_t>(lo)] +
           frac * grid->phi[static_cast<std::size_t>(hi)];
  };
}

void write_profile_csv(const SpectralProfile& p, std::ostream& out) {
  out << "t,re_theta,im_theta,abs_theta,re_d1,im_d1,re_d2,im_d2,phi\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << p.t[i] << ',' << p.theta[i].real() << ',' << p.theta[i].imag() << ','
        << std::abs(p.theta[i]) << ',' << p.d1[i].real() << ',' << p.d1[i].imag() << ','
        << p.d2[i].real() << ',' << p.d2[i].imag() << ',' << p.phi[i] << '\n';
  }
}

}  // namespace convpow
