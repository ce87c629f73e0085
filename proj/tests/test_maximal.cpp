#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "convpow/errors.hpp"
#include "convpow/maximal.hpp"
#include "convpow/zoo.hpp"

using namespace convpow;

TEST_CASE("translations") {
  auto m = maximal_function(LatticeMeasure::atom(1), LatticeSequence{0, {1.0}}, 3);
  for (std::int64_t k = -2; k <= 6; ++k) CHECK(m.at(k) == ((k >= 1 && k <= 3) ? 1.0 : 0.0));
}

TEST_CASE("lazy walk from a point mass") {
  const LatticeSequence delta{0, {1.0}};
  auto m = maximal_function(lazy_walk(), delta, 64);
  CHECK(m.at(0) == 0.5);
  CHECK(m.at(1) == 0.25);
  CHECK(m.at(-1) == 0.25);
  CHECK(m.offset == -64);
  CHECK(m.last() == 64);
  const double lambdas[] = {0.6, 0.4};
  auto curve = weak_type_curve(m, 1.0, lambdas, 64);
  CHECK(curve.counts == std::vector<std::int64_t>{0, 1});
  CHECK(curve.constants[0] == 0.0);
  CHECK(curve.constants[1] == doctest::Approx(0.4));
  const double above[] = {0.75};
  CHECK(weak_type_curve(m, 1.0, above).counts[0] == 0);
}

TEST_CASE("positive homogeneity") {
  std::mt19937_64 rng(8);
  auto mu = gen::random_measure(rng, 6);
  LatticeSequence phi{-2, {0.5, -1.0, 0.25}};
  LatticeSequence twice{-2, {1.0, -2.0, 0.5}};
  auto a = maximal_function(mu, phi, 20);
  auto b = maximal_function(mu, twice, 20);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(b.values[i] == doctest::Approx(2 * a.values[i]).epsilon(1e-14));
}

TEST_CASE("sup dominates every computed power") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    auto mu = gen::random_measure(rng, 5, 3);
    LatticeSequence phi{1, {0.3, 0.0, -0.7, 0.2}};
    auto m = maximal_function(mu, phi, 12);
    oracle::Dist phid;
    for (std::size_t i = 0; i < phi.values.size(); ++i) phid[phi.offset + static_cast<std::int64_t>(i)] = phi.values[i];
    auto ref = oracle::to_dist(mu);
    oracle::Dist psi = phid;
    for (int n = 1; n <= 12; ++n) {
      psi = oracle::convolve(ref, psi);
      for (const auto& [k, v] : psi) CHECK(m.at(k) >= std::abs(static_cast<double>(v)) - 1e-15);
    }
  }
}

TEST_CASE("checkpoints agree with separate runs") {
  const LatticeSequence delta{0, {1.0}};
  const std::int64_t depths[] = {8, 16};
  auto both = maximal_function_checkpoints(lazy_walk(), delta, depths);
  auto eight = maximal_function(lazy_walk(), delta, 8);
  CHECK(both[0].offset == eight.offset);
  CHECK(both[0].values == eight.values);
  CHECK(both[1].values == maximal_function(lazy_walk(), delta, 16).values);
}

TEST_CASE("level counts are monotone") {
  auto m = maximal_function(lazy_walk(), LatticeSequence{0, {1.0}}, 256);
  auto lambdas = log_spaced_lambdas();
  CHECK(lambdas.size() == 40);
  CHECK(lambdas.front() == 1.0);
  CHECK(lambdas.back() == doctest::Approx(1e-4));
  auto curve = weak_type_curve(m, 1.0, lambdas, 256);
  for (std::size_t i = 1; i < curve.counts.size(); ++i) {
    CHECK(curve.lambda_values[i] < curve.lambda_values[i - 1]);
    CHECK(curve.counts[i] >= curve.counts[i - 1]);
  }
  CHECK(curve.headline() <= 1.0);
}

TEST_CASE("input checks") {
  const LatticeSequence zero{0, {0.0, 0.0}};
  auto m = maximal_function(lazy_walk(), zero, 4);
  const double l[] = {0.5};
  CHECK_THROWS_AS(weak_type_curve(m, zero.l1_norm(), l), InvalidInput);
  const double neg[] = {-0.5};
  CHECK_THROWS_AS(weak_type_curve(m, 1.0, neg), InvalidInput);
  CHECK_THROWS_AS(maximal_function(lazy_walk(), LatticeSequence{0, {}}, 4), InvalidInput);
  CHECK_THROWS_AS(maximal_function(lazy_walk(), LatticeSequence{0, {1.0}}, 0), InvalidInput);
}

TEST_CASE("levels csv") {
  LevelSetCurve c;
  c.lambda_values = {0.5};
  c.counts = {2};
  c.constants = {1.0};
  std::ostringstream out;
  write_levels_csv(c, out);
  CHECK(out.str() == "lambda,count,constant\n0.5,2,1\n");
}
