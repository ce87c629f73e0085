// Randomized invariants with fixed seeds.
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "convpow/kernel_bounds.hpp"
#include "convpow/spectral.hpp"
#include "convpow/tail.hpp"
#include "convpow/zoo.hpp"

using namespace convpow;

namespace {

double variance(const LatticeMeasure& mu) {
  const double m = expectation(mu);
  long double s = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const long double k = static_cast<long double>(mu.offset() + static_cast<std::int64_t>(i)) - m;
    s += k * k * mu.weights()[i];
  }
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("convolution algebra") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = gen::random_measure(rng, 20);
    auto b = gen::random_measure(rng, 20);
    auto c = gen::random_measure(rng, 20);
    auto ab = convolve(a, b);
    CHECK(sup_distance(ab, convolve(b, a)) <= 1e-15);
    CHECK(sup_distance(convolve(ab, c), convolve(a, convolve(b, c))) <= 1e-14);
    CHECK(sup_distance(ab, convolve_fast(a, b)) <= 1e-14);
    CHECK(ab.stored_mass() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(expectation(ab) == doctest::Approx(expectation(a) + expectation(b)).epsilon(1e-12));
    CHECK(variance(ab) == doctest::Approx(variance(a) + variance(b)).epsilon(1e-10));
    std::uniform_real_distribution<double> tdist(-0.5, 0.5);
    const double t = tdist(rng);
    CHECK(std::abs(transform_at(ab, t) - transform_at(a, t) * transform_at(b, t)) <= 1e-14);
    CHECK(std::abs(transform_at(a, t)) <= 1.0 + 1e-15);
  }
}

TEST_CASE("powers compose") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 10; ++trial) {
    auto mu = gen::random_measure(rng, 10);
    std::uniform_int_distribution<int> nd(1, 9);
    const int n = nd(rng);
    const int m = nd(rng);
    auto lhs = convolution_power(mu, n + m);
    auto rhs = convolve(convolution_power(mu, n), convolution_power(mu, m));
    CHECK(sup_distance(lhs, rhs) <= 1e-13);
  }
}

TEST_CASE("aperiodicity agrees with the grid criterion") {
  std::mt19937_64 rng(303);
  GridOptions g;
  g.points = 60481;  // 2M = 60480 is divisible by 1..10, so every t = j/d is a grid point
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> dd(1, 6);
    auto mu = gen::random_coset_measure(rng, dd(rng));
    auto p = make_profile(mu, g);
    double top = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (std::abs(p.t[i]) >= 0.01) top = std::max(top, std::abs(p.theta[i]));
    }
    CHECK(strictly_aperiodic(mu) == (top < 1.0 - 1e-6));
  }
}

TEST_CASE("partial second moments never decrease") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = gen::random_measure(rng, 30, 15);
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 1; n <= 40; ++n) ns.push_back(n);
    auto c = partial_second_moment_curve(mu, ns);
    for (std::size_t i = 1; i < c.s_values.size(); ++i) CHECK(c.s_values[i] >= c.s_values[i - 1]);
    CHECK(c.s_values.back() == doctest::Approx(moment(mu, 2.0).value).epsilon(1e-14));
  }
}

TEST_CASE("bound fits hold on random in-regime tuples") {
  auto mu = build_measure(power_mixture_spec(2.5, 50));
  auto ns = default_kernel_n(mu, 40);
  auto table = kernel_table(mu, ns, 120);
  const double delta = 0.6;
  const double alpha = 0.7;
  const double sigma = small_n_sigma(delta);
  auto point = pointwise_bound_fit(table, delta);
  auto small = small_n_regime_check(table, delta);
  auto smooth = smoothness_difference_fit(table, delta, alpha);

  std::mt19937_64 rng(505);
  std::uniform_int_distribution<std::size_t> rowd(0, table.n_values.size() - 1);
  std::uniform_int_distribution<std::int64_t> xd(-120, 120);
  const double slack = 1.0 + 1e-12;
  int tested = 0;
  while (tested < 1000) {
    const std::size_t row = rowd(rng);
    const auto n = static_cast<double>(table.n_values[row]);
    const std::int64_t x = xd(rng);
    if (std::abs(x) < 2) continue;
    const double ax = std::abs(static_cast<double>(x));
    std::uniform_int_distribution<std::int64_t> yd(-std::abs(x) / 2, std::abs(x) / 2);
    const std::int64_t y = yd(rng);
    if (y == 0) continue;
    const double ay = std::abs(static_cast<double>(y));
    const double v = table.at(row, x);
    CHECK(v <= point.fitted_constant * (std::sqrt(n) / std::pow(ax, 1 + delta) + n * n / (ax * ax)) * slack);
    if (n <= std::pow(ax, delta / 8)) CHECK(v * std::pow(ax, 1 + sigma) <= small.fitted_constant * slack);
    const double diff = std::abs(table.at(row, x + y) - v);
    if (n >= std::pow(ax, delta / 8)) CHECK(diff * ax * ax / ay <= smooth.large_n.fitted_constant * slack);
    CHECK(diff * std::pow(ax, 1 + alpha) / std::pow(ay, alpha) <= smooth.global.fitted_constant * slack);
    ++tested;
  }
}
