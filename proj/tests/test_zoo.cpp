#include "doctest.h"
#include "oracles.hpp"

#include "convpow/errors.hpp"
#include "convpow/spectral.hpp"
#include "convpow/zoo.hpp"

using namespace convpow;

TEST_CASE("power law normalizer approaches 1 / (2 zeta(3))") {
  auto mu = power_law(3.0, 100000);
  const long double s_oracle = 1.0L / (2.0L * oracle::zeta_partial(3.0L, 100000));
  CHECK(mu(1) == doctest::Approx(static_cast<double>(s_oracle)).epsilon(1e-13));
  CHECK(std::abs(mu(1) - 0.415953) < 1e-6);
  CHECK(mu(-7) == mu(7));
  CHECK(mu(0) == 0.0);
  CHECK(mu.is_symmetric());
  CHECK(expectation(mu) == 0.0);
  CHECK(mu.truncation().radius == 100000);
}

TEST_CASE("power law tail deficit matches the integral estimate") {
  auto mu = power_law(3.0, 1000);
  // 2 sum_{k > K} k^-3 over 2 zeta(3)
  const long double tail = oracle::zeta_partial(3.0L, 4000000) - oracle::zeta_partial(3.0L, 1000);
  const long double whole = oracle::zeta_partial(3.0L, 4000000);
  CHECK(mu.truncation().deficit == doctest::Approx(static_cast<double>(tail / whole)).epsilon(1e-3));
}

TEST_CASE("power law 2.5 second moment grows like sqrt K") {
  auto m2 = [](std::int64_t K) {
    auto mu = power_law(2.5, K);
    const long double s = 1.0L / (2.0L * oracle::zeta_partial(2.5L, K));
    const long double direct = 2.0L * s * oracle::zeta_partial(0.5L, K);
    CHECK(moment(mu, 2.0).value == doctest::Approx(static_cast<double>(direct)).epsilon(1e-11));
    return moment(mu, 2.0).value;
  };
  const double a = m2(10000);
  const double b = m2(40000);
  CHECK(b / a == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("sigma parametrization is beta = 2 + sigma") {
  MeasureSpec s;
  s.kind = MeasureKind::power_law;
  s.sigma = 0.5;
  s.truncation = 500;
  CHECK(build_measure(s) == power_law(2.5, 500));
  s.sigma = 1.5;
  CHECK_THROWS_AS(build_measure(s), InvalidInput);
}

TEST_CASE("constructor domains") {
  CHECK_THROWS_AS(power_law(1.0, 100), InvalidInput);
  CHECK_THROWS_AS(power_law(0.5, 100), InvalidInput);
  CHECK_THROWS_AS(power_law(2.0, 9), InvalidInput);
  CHECK_THROWS_AS(mixture(0.0, lazy_walk(), lazy_walk()), InvalidInput);
  CHECK_THROWS_AS(mixture(1.5, lazy_walk(), lazy_walk()), InvalidInput);
  CHECK_THROWS_AS(log_squared_measure(2), InvalidInput);
  const std::int64_t p[] = {0, 1};
  const double bad[] = {0.5, 0.6};
  CHECK_THROWS_AS(atoms(p, bad), InvalidInput);
  CHECK_THROWS_AS(measure_kind_from_string("gaussian"), InvalidInput);
}

TEST_CASE("mixture") {
  auto eta = power_law(3.0, 200);
  CHECK(mixture(1.0, eta, lazy_walk()) == eta);
  auto mu = mixture(0.5, eta, lazy_walk());
  CHECK(std::abs(expectation(mu)) < 1e-15);
  const std::int64_t p[] = {-1, 2};
  const double w[] = {2.0 / 3, 1.0 / 3};
  auto skew = atoms(p, w);
  auto m2 = mixture(0.3, eta, skew);
  CHECK(expectation(m2) == doctest::Approx(0.3 * expectation(eta) + 0.7 * expectation(skew)));
  const auto lhs = transform_at(m2, 0.1);
  const auto rhs = 0.3 * transform_at(eta, 0.1) + 0.7 * transform_at(skew, 0.1);
  CHECK(std::abs(lhs - rhs) < 1e-14);
}

TEST_CASE("lazy walk") {
  auto mu = lazy_walk();
  CHECK(moment(mu, 2.0).value == 0.5);
  CHECK(strictly_aperiodic(mu));
  CHECK(transform_at(mu, 0.25).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(transform_at(mu, 0.25).imag()) < 1e-16);
}

TEST_CASE("log squared measure") {
  auto mu = log_squared_measure(1000);
  CHECK(mu.is_symmetric());
  CHECK(expectation(mu) == 0.0);
  CHECK(mu(0) == 0.0);
  CHECK(mu(1) == 0.0);
  for (std::int64_t k = 2; k < 1000; ++k) CHECK(mu(k) >= mu(k + 1));
  auto m_half = [](std::int64_t K) {
    long double norm = 0, m = 0;
    for (std::int64_t k = K; k >= 2; --k) {
      const long double w = 1.0L / (k * std::log(static_cast<long double>(k)) * std::log(static_cast<long double>(k)));
      norm += 2 * w;
      m += 2 * w * std::sqrt(static_cast<long double>(k));
    }
    return static_cast<double>(m / norm);
  };
  const double small = moment(mu, 0.5).value;
  const double large = moment(log_squared_measure(10000), 0.5).value;
  CHECK(small == doctest::Approx(m_half(1000)).epsilon(1e-12));
  CHECK(large == doctest::Approx(m_half(10000)).epsilon(1e-12));
  CHECK(large > 1.3 * small);
  CHECK(mu.truncation().deficit > 0.0);
}

TEST_CASE("standard zoo builds and is valid") {
  for (const auto& [name, spec] : standard_zoo(300)) {
    CAPTURE(name);
    auto mu = build_measure(spec);
    CHECK(mu.stored_mass() + mu.tail_mass() == doctest::Approx(1.0).epsilon(1e-12));
    if (spec.kind == MeasureKind::power_law || spec.kind == MeasureKind::log_squared) CHECK(mu.is_symmetric());
  }
}
