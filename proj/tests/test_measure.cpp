#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "convpow/errors.hpp"
#include "convpow/measure.hpp"
#include "convpow/zoo.hpp"

using namespace convpow;

TEST_CASE("construction validates and trims") {
  LatticeMeasure mu(-2, {0.0, 0.25, 0.5, 0.25, 0.0});
  CHECK(mu.offset() == -1);
  CHECK(mu.size() == 3);
  CHECK(mu(0) == 0.5);
  CHECK(mu(5) == 0.0);
  CHECK(mu.is_symmetric());
  CHECK_THROWS_AS(LatticeMeasure(0, {0.5, -0.1, 0.6}), InvalidInput);
  CHECK_THROWS_AS(LatticeMeasure(0, {0.5, 0.4}), InvalidInput);
  CHECK_THROWS_AS(LatticeMeasure(0, {0.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(LatticeMeasure(0, {std::nan(""), 1.0}), InvalidInput);
  // a truncated law may carry its removed mass as a tail
  CHECK_NOTHROW(LatticeMeasure(0, {0.5, 0.4}, 0.1));
}

TEST_CASE("from_atoms accumulates repeats") {
  const std::int64_t pts[] = {3, -1, 3};
  const double w[] = {0.25, 0.5, 0.25};
  auto mu = LatticeMeasure::from_atoms(pts, w);
  CHECK(mu(3) == 0.5);
  CHECK(mu(-1) == 0.5);
  CHECK(mu.support() == std::vector<std::int64_t>{-1, 3});
}

TEST_CASE("convolution of two lazy walks matches direct enumeration") {
  auto mu = lazy_walk();
  auto two = convolve(mu, mu);
  CHECK(two(0) == doctest::Approx(6.0 / 16).epsilon(1e-15));
  CHECK(two(1) == doctest::Approx(4.0 / 16));
  CHECK(two(2) == doctest::Approx(1.0 / 16));
  CHECK(two.offset() == -2);
}

TEST_CASE("power of a point mass translates") {
  auto p = convolution_power(LatticeMeasure::atom(1), 7);
  CHECK(p.offset() == 7);
  CHECK(p(7) == 1.0);
  CHECK(convolution_power(LatticeMeasure::atom(-3), 4, PowerMethod::direct)(-12) == 1.0);
  CHECK_THROWS_AS(convolution_power(lazy_walk(), 0), InvalidInput);
}

TEST_CASE("lazy walk power equals the binomial law") {
  auto mu = lazy_walk();
  for (int n = 1; n <= 12; ++n) {
    auto fast = convolution_power(mu, n, PowerMethod::fast);
    auto direct = convolution_power(mu, n, PowerMethod::direct);
    for (int x = -n - 1; x <= n + 1; ++x) {
      const double exact = static_cast<double>(oracle::lazy_binomial(n, x));
      CHECK(std::abs(fast(x) - exact) <= 1e-12);
      CHECK(std::abs(direct(x) - exact) <= 1e-15);
    }
  }
}

TEST_CASE("fast and direct powers agree on random measures") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto mu = gen::random_measure(rng, 25);
    auto ref = oracle::to_dist(mu);
    for (int n : {2, 5, 9}) {
      auto fast = convolution_power(mu, n);
      auto slow = oracle::power(ref, n);
      double worst = 0;
      for (const auto& [k, p] : slow) worst = std::max(worst, std::abs(fast(k) - static_cast<double>(p)));
      CHECK(worst <= 1e-12);
      CHECK(fast.stored_mass() == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("moments") {
  auto mu = lazy_walk();
  CHECK(expectation(mu) == 0.0);
  CHECK(moment(mu, 2.0).value == doctest::Approx(0.5));
  CHECK_FALSE(moment(mu, 2.0).lower_bound);
  CHECK_THROWS_AS(moment(mu, 0.0), InvalidInput);
  CHECK_THROWS_AS(moment(mu, -1.0), InvalidInput);
  auto pl = power_law(2.5, 1000);
  CHECK(moment(pl, 2.0).lower_bound);
  // fractional moment by hand
  const std::int64_t pts[] = {-4, 9};
  const double w[] = {0.5, 0.5};
  auto two = LatticeMeasure::from_atoms(pts, w);
  CHECK(moment(two, 0.5).value == doctest::Approx(0.5 * 2 + 0.5 * 3));
  CHECK(expectation(two) == doctest::Approx(2.5));
}

TEST_CASE("strict aperiodicity is the gcd of support differences") {
  CHECK(strictly_aperiodic(lazy_walk()));
  CHECK_FALSE(strictly_aperiodic(LatticeMeasure::atom(0)));
  CHECK_FALSE(strictly_aperiodic(LatticeMeasure::atom(5)));
  const std::int64_t pm[] = {-1, 1};
  const double half[] = {0.5, 0.5};
  CHECK_FALSE(strictly_aperiodic(LatticeMeasure::from_atoms(pm, half)));
  const std::int64_t shifted[] = {1, 3, 7};
  const double thirds[] = {0.25, 0.25, 0.5};
  CHECK_FALSE(strictly_aperiodic(LatticeMeasure::from_atoms(shifted, thirds)));
  const std::int64_t mixed[] = {0, 4, 7};
  CHECK(strictly_aperiodic(LatticeMeasure::from_atoms(mixed, thirds)));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto mu = gen::random_measure(rng, 12);
    CHECK(strictly_aperiodic(mu) == (mu.support().size() > 1 && oracle::support_gcd(oracle::to_dist(mu)) == 1));
  }
}

TEST_CASE("reflection and sup distance") {
  const std::int64_t pts[] = {-1, 2};
  const double w[] = {2.0 / 3, 1.0 / 3};
  auto mu = LatticeMeasure::from_atoms(pts, w);
  auto r = mu.reflected();
  CHECK(r(1) == mu(-1));
  CHECK(r(-2) == mu(2));
  CHECK(sup_distance(mu, mu) == 0.0);
  CHECK(sup_distance(mu, r) == doctest::Approx(2.0 / 3));
}

TEST_CASE("fast convolution refuses a large clamp deficit") {
  // Operands with huge dynamic range whose FFT noise is far above the
  // tiny true values cannot lose more than the allowed mass; a well-scaled
  // product never throws.
  auto mu = power_law(2.5, 2000);
  CHECK_NOTHROW(convolve_fast(mu, mu));
  auto p = convolve_fast(mu, mu);
  for (double w : p.weights()) CHECK(w >= 0.0);
}
