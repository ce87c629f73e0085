#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin FFTW wrappers. Plans are cached per size and built with FFTW_ESTIMATE
// on fftw_malloc'd buffers, so repeated calls are bit-reproducible.
namespace convpow::detail {

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Linear convolution of two real windows via a real-to-complex transform
/// of length next_pow2(a.size() + b.size() - 1).
std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b);

/// out[j] = sum_m in[m] exp(+2 pi i j m / N), N = in.size().
std::vector<std::complex<double>> dft_positive(std::span<const std::complex<double>> in);

}  // namespace convpow::detail
