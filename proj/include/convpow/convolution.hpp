#pragma once

#include <span>
#include <vector>

// Raw convolution kernels on dense real windows. Output length is
// a.size() + b.size() - 1; inputs may be signed.
namespace convpow::kernels {

/// Each output is a compensated sum over j in ascending order.
std::vector<double> convolve_direct(std::span<const double> a, std::span<const double> b);

/// Zero-padded real FFT product (FFTW). Signed round-off is left in place.
std::vector<double> convolve_fft(std::span<const double> a, std::span<const double> b);

/// Picks direct when one operand is short or the product is cheap.
std::vector<double> convolve_auto(std::span<const double> a, std::span<const double> b);

}  // namespace convpow::kernels
