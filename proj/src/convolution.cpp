#include "convpow/convolution.hpp"

#include <algorithm>
#include <cmath>

#include "convpow/parallel.hpp"
#include "convpow/summation.hpp"
#include "fft.hpp"

namespace convpow::kernels {

std::vector<double> convolve_direct(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  std::vector<double> out(out_len, 0.0);
  parallel::for_each_chunk(out_len, 2048, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const std::size_t j_lo = k >= b.size() - 1 ? k - (b.size() - 1) : 0;
      const std::size_t j_hi = std::min(k, a.size() - 1);
      CompensatedSum acc;
      for (std::size_t j = j_lo; j <= j_hi; ++j) acc.add(a[j] * b[k - j]);
      out[k] = acc.value();
    }
  });
  return out;
}

std::vector<double> convolve_fft(std::span<const double> a, std::span<const double> b) {
  return detail::fft_convolve(a, b);
}

std::vector<double> convolve_auto(std::span<const double> a, std::span<const double> b) {
  const std::size_t shorter = std::min(a.size(), b.size());
  if (shorter <= 48) return convolve_direct(a, b);
  const double n = static_cast<double>(detail::next_pow2(a.size() + b.size() - 1));
  const double fft_cost = 12.0 * n * std::log2(n);
  const double direct_cost = static_cast<double>(a.size()) * static_cast<double>(b.size());
  return direct_cost <= fft_cost ? convolve_direct(a, b) : convolve_fft(a, b);
}

}  // namespace convpow::kernels
