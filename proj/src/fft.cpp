#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace convpow::detail {
namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> allocate(std::size_t n) {
  auto* raw = static_cast<T*>(fftw_malloc(sizeof(T) * (n == 0 ? 1 : n)));
  if (raw == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(raw);
}

// The planner is not thread-safe; execution of an existing plan on new
// arrays is.
std::mutex g_planner_mutex;

struct RealPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

RealPlans real_plans(std::size_t n) {
  static std::map<std::size_t, RealPlans> cache;
  std::lock_guard lock(g_planner_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto in = allocate<double>(n);
  auto out = allocate<fftw_complex>(n / 2 + 1);
  RealPlans plans;
  const int len = static_cast<int>(n);
  plans.forward = fftw_plan_dft_r2c_1d(len, in.get(), out.get(), FFTW_ESTIMATE);
  plans.backward = fftw_plan_dft_c2r_1d(len, out.get(), in.get(), FFTW_ESTIMATE);
  cache.emplace(n, plans);
  return plans;
}

fftw_plan complex_backward_plan(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard lock(g_planner_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto in = allocate<fftw_complex>(n);
  auto out = allocate<fftw_complex>(n);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
  cache.emplace(n, plan);
  return plan;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> fft_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  const std::size_t bins = n / 2 + 1;
  const RealPlans plans = real_plans(n);

  auto ra = allocate<double>(n);
  auto rb = allocate<double>(n);
  auto ca = allocate<fftw_complex>(bins);
  auto cb = allocate<fftw_complex>(bins);
  std::fill(ra.get(), ra.get() + n, 0.0);
  std::fill(rb.get(), rb.get() + n, 0.0);
  std::copy(a.begin(), a.end(), ra.get());
  std::copy(b.begin(), b.end(), rb.get());

  fftw_execute_dft_r2c(plans.forward, ra.get(), ca.get());
  fftw_execute_dft_r2c(plans.forward, rb.get(), cb.get());
  for (std::size_t i = 0; i < bins; ++i) {
    const double re = ca[i][0] * cb[i][0] - ca[i][1] * cb[i][1];
    const double im = ca[i][0] * cb[i][1] + ca[i][1] * cb[i][0];
    ca[i][0] = re;
    ca[i][1] = im;
  }
  fftw_execute_dft_c2r(plans.backward, ca.get(), ra.get());

  const double scale = 1.0 / static_cast<double>(n);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = ra[i] * scale;
  return out;
}

std::vector<std::complex<double>> dft_positive(std::span<const std::complex<double>> in) {
  const std::size_t n = in.size();
  if (n == 0) return {};
  fftw_plan plan = complex_backward_plan(n);
  auto src = allocate<fftw_complex>(n);
  auto dst = allocate<fftw_complex>(n);
  for (std::size_t i = 0; i < n; ++i) {
    src[i][0] = in[i].real();
    src[i][1] = in[i].imag();
  }
  fftw_execute_dft(plan, src.get(), dst.get());
  std::vector<std::complex<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {dst[i][0], dst[i][1]};
  return out;
}

}  // namespace convpow::detail
