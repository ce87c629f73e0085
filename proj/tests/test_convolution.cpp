#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "convpow/convolution.hpp"
#include "convpow/parallel.hpp"

using namespace convpow;

namespace {

std::vector<double> naive(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<double> random_signed(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("direct, fft and auto kernels agree with a naive loop") {
  std::mt19937_64 rng(3);
  for (std::size_t na : {1u, 2u, 7u, 64u, 300u}) {
    for (std::size_t nb : {1u, 5u, 129u, 1000u}) {
      auto a = random_signed(rng, na);
      auto b = random_signed(rng, nb);
      auto ref = naive(a, b);
      auto d = kernels::convolve_direct(a, b);
      auto f = kernels::convolve_fft(a, b);
      auto u = kernels::convolve_auto(a, b);
      REQUIRE(d.size() == ref.size());
      REQUIRE(f.size() == ref.size());
      REQUIRE(u.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(std::abs(d[i] - ref[i]) <= 1e-12);
        CHECK(std::abs(f[i] - ref[i]) <= 1e-10);
        CHECK(std::abs(u[i] - ref[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("kernels are commutative") {
  std::mt19937_64 rng(4);
  auto a = random_signed(rng, 40);
  auto b = random_signed(rng, 3000);
  auto ab = kernels::convolve_fft(a, b);
  auto ba = kernels::convolve_fft(b, a);
  for (std::size_t i = 0; i < ab.size(); ++i) CHECK(std::abs(ab[i] - ba[i]) <= 1e-12);
}

TEST_CASE("direct kernel is bit-identical across thread counts") {
  std::mt19937_64 rng(9);
  auto a = random_signed(rng, 5000);
  auto b = random_signed(rng, 4000);
  parallel::set_thread_limit(1);
  auto one = kernels::convolve_direct(a, b);
  parallel::set_thread_limit(4);
  auto four = kernels::convolve_direct(a, b);
  parallel::set_thread_limit(0);
  CHECK(one == four);
}

TEST_CASE("parallel chunk partition is fixed") {
  CHECK(parallel::chunk_total(10, 3) == 4);
  CHECK(parallel::chunk_total(0, 3) == 0);
  std::vector<int> seen(100, 0);
  parallel::set_thread_limit(3);
  parallel::for_each_chunk(100, 7, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) seen[i] += 1;
  });
  parallel::set_thread_limit(0);
  for (int s : seen) CHECK(s == 1);
  CHECK_THROWS(parallel::for_each_chunk(10, 1, [](std::size_t c, std::size_t, std::size_t) {
    if (c == 4) throw std::runtime_error("boom");
  }));
}
