#include "convpow/kernel_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <ostream>

#include "convpow/errors.hpp"
#include "convpow/parallel.hpp"

namespace convpow {
namespace {

// Direct convolution below this many multiply-adds, FFT above.
constexpr double kDirectBudget = 4e6;

LatticeMeasure multiply(const LatticeMeasure& a, const LatticeMeasure& b) {
  const double cost = static_cast<double>(a.size()) * static_cast<double>(b.size());
  return cost <= kDirectBudget ? convolve(a, b) : convolve_fast(a, b);
}

LatticeMeasure power(const LatticeMeasure& mu, std::int64_t n) {
  if (n == 1) return mu;
  const double size = static_cast<double>(mu.size());
  const bool cheap = size * size * static_cast<double>(n) <= kDirectBudget;
  return convolution_power(mu, n, cheap ? PowerMethod::direct : PowerMethod::fast);
}

struct Best {
  double value = -1.0;
  std::array<std::int64_t, 3> tuple{};
  double t = 0.0;
  std::size_t count = 0;

  void offer(double v, std::array<std::int64_t, 3> candidate, double at_t = 0.0) {
    ++count;
    if (v > value || (v == value && candidate < tuple)) {
      value = v;
      tuple = candidate;
      t = at_t;
    }
  }
  void merge(const Best& other) {
    count += other.count;
    if (other.count == 0) return;
    if (other.value > value || (other.value == value && other.tuple < tuple)) {
      value = other.value;
      tuple = other.tuple;
      t = other.t;
    }
  }
};

// One chunk per table row; merged in row order.
template <typename RowBody>
Best reduce_rows(const KernelTable& table, RowBody body) {
  const std::size_t rows = table.n_values.size();
  std::vector<Best> partial(rows);
  parallel::for_each_chunk(rows, 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) body(r, partial[r]);
  });
  Best total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

BoundFit to_fit(const Best& best, std::string regime) {
  BoundFit fit;
  fit.regime = std::move(regime);
  fit.fitted_constant = std::max(0.0, best.value);
  fit.worst_tuple = best.tuple;
  fit.worst_t = best.t;
  fit.sample_count = best.count;
  return fit;
}

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be positive and finite");
}

std::complex<double> kernel(std::int64_t x, double t) {
  const double turns = static_cast<double>(x) * t;
  const double phase = 2.0 * std::numbers::pi * (turns - std::nearbyint(turns));
  const double x2 = static_cast<double>(x) * static_cast<double>(x);
  return (std::complex<double>(std::cos(phase), std::sin(phase)) - 1.0) / x2;
}

}  // namespace

KernelTable kernel_table(const LatticeMeasure& mu, std::span<const std::int64_t> n_values,
                         std::int64_t fit_radius, std::string source) {
  if (n_values.empty()) throw InvalidInput("n list is empty");
  if (fit_radius < 1) throw InvalidInput("x range must be >= 1");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw InvalidInput("n values must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw InvalidInput("n values must ascend strictly");
  }
  KernelTable table;
  table.n_values.assign(n_values.begin(), n_values.end());
  table.fit_radius = fit_radius;
  table.x_limit = fit_radius + (fit_radius + 1) / 2;
  table.source = std::move(source);
  table.values.assign(table.n_values.size() * table.width(), 0.0);
  table.row_mass.reserve(table.n_values.size());

  std::optional<LatticeMeasure> current;
  std::int64_t reached = 0;
  for (std::size_t row = 0; row < table.n_values.size(); ++row) {
    const std::int64_t n = table.n_values[row];
    const LatticeMeasure step = power(mu, n - reached);
    current = current ? multiply(*current, step) : step;
    reached = n;
    for (std::int64_t x = -table.x_limit; x <= table.x_limit; ++x) {
      table.values[row * table.width() + static_cast<std::size_t>(x + table.x_limit)] = (*current)(x);
    }
    table.row_mass.push_back(current->stored_mass() + current->tail_mass());
  }
  return table;
}

KernelTable restrict_rows(const KernelTable& table, std::int64_t n_max) {
  KernelTable out;
  out.fit_radius = table.fit_radius;
  out.x_limit = table.x_limit;
  out.source = table.source;
  for (std::size_t row = 0; row < table.n_values.size() && table.n_values[row] <= n_max; ++row) {
    out.n_values.push_back(table.n_values[row]);
    out.row_mass.push_back(table.row_mass[row]);
    const auto first = table.values.begin() + static_cast<std::ptrdiff_t>(row * table.width());
    out.values.insert(out.values.end(), first, first + static_cast<std::ptrdiff_t>(table.width()));
  }
  if (out.n_values.empty()) throw EmptyRegime("no table rows with n <= " + std::to_string(n_max));
  return out;
}

std::vector<std::int64_t> default_kernel_n(const LatticeMeasure& mu, std::int64_t n_max) {
  if (n_max < 1) throw InvalidInput("n_max must be >= 1");
  std::vector<std::int64_t> out;
  if (mu.size() <= 64) {
    for (std::int64_t n = 1; n <= n_max; ++n) out.push_back(n);
    return out;
  }
  std::vector<std::int64_t> geometric;
  const double top = std::log(static_cast<double>(n_max));
  for (int i = 0; i < 48; ++i) {
    const auto n = static_cast<std::int64_t>(std::llround(std::exp(top * i / 47.0)));
    if (geometric.empty() || n > geometric.back()) geometric.push_back(std::min(n, n_max));
  }
  if (geometric.back() != n_max) geometric.push_back(n_max);
  return geometric;
}

BoundFit pointwise_bound_fit(const KernelTable& table, double delta) {
  check_delta(delta);
  const std::int64_t R = table.fit_radius;
  const Best best = reduce_rows(table, [&](std::size_t row, Best& b) {
    const auto n = static_cast<double>(table.n_values[row]);
    for (std::int64_t x = -R; x <= R; ++x) {
      if (x == 0) continue;
      const double ax = std::abs(static_cast<double>(x));
      const double bound = std::sqrt(n) / std::pow(ax, 1.0 + delta) + n * n / (ax * ax);
      b.offer(std::abs(table.at(row, x)) / bound, {table.n_values[row], x, 0});
    }
  });
  if (best.count == 0) throw EmptyRegime("pointwise bound: table has no x != 0 entries");
  return to_fit(best, "x != 0, |x| <= " + std::to_string(R));
}

double small_n_sigma(double delta) {
  check_delta(delta);
  return std::min(15.0 * delta / 16.0, 0.75);
}

BoundFit small_n_regime_check(const KernelTable& table, double delta) {
  const double sigma = small_n_sigma(delta);
  const std::int64_t R = table.fit_radius;
  const Best best = reduce_rows(table, [&](std::size_t row, Best& b) {
    const auto n = static_cast<double>(table.n_values[row]);
    for (std::int64_t x = -R; x <= R; ++x) {
      if (x == 0) continue;
      const double ax = std::abs(static_cast<double>(x));
      if (!(n <= std::pow(ax, delta / 8.0))) continue;
      b.offer(std::abs(table.at(row, x)) * std::pow(ax, 1.0 + sigma), {table.n_values[row], x, 0});
    }
  });
  if (best.count == 0) {
    throw EmptyRegime("small-n regime n <= |x|^(delta/8) is empty for delta = " +
                      std::to_string(delta) + " on this table");
  }
  return to_fit(best, "n <= |x|^(delta/8), sigma = " + std::to_string(sigma));
}

SmoothnessFits smoothness_difference_fit(const KernelTable& table, double delta, double alpha) {
  check_delta(delta);
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in (0, 1]");
  const std::int64_t R = table.fit_radius;
  const std::int64_t half = R / 2;
  std::vector<double> y_alpha(static_cast<std::size_t>(half + 1));
  for (std::int64_t y = 1; y <= half; ++y) {
    y_alpha[static_cast<std::size_t>(y)] = std::pow(static_cast<double>(y), alpha);
  }
  std::vector<Best> large(table.n_values.size());
  std::vector<Best> global(table.n_values.size());
  parallel::for_each_chunk(table.n_values.size(), 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      const std::int64_t n = table.n_values[row];
      const auto nd = static_cast<double>(n);
      for (std::int64_t x = -R; x <= R; ++x) {
        const std::int64_t ax = x < 0 ? -x : x;
        if (ax < 2) continue;
        const double axd = static_cast<double>(ax);
        const bool in_large = nd >= std::pow(axd, delta / 8.0);
        const double x_global = std::pow(axd, 1.0 + alpha);
        const double base = table.at(row, x);
        for (std::int64_t y = -ax / 2; y <= ax / 2; ++y) {
          if (y == 0) continue;
          const std::int64_t ay = y < 0 ? -y : y;
          const double diff = std::abs(table.at(row, x + y) - base);
          if (in_large) large[row].offer(diff * axd * axd / static_cast<double>(ay), {n, x, y});
          global[row].offer(diff * x_global / y_alpha[static_cast<std::size_t>(ay)], {n, x, y});
        }
      }
    }
  });
  Best large_total;
  Best global_total;
  for (std::size_t r = 0; r < table.n_values.size(); ++r) {
    large_total.merge(large[r]);
    global_total.merge(global[r]);
  }
  if (large_total.count == 0) {
    throw EmptyRegime("difference regime n >= |x|^(delta/8), 0 < 2|y| <= |x| is empty");
  }
  if (global_total.count == 0) throw EmptyRegime("difference regime 0 < 2|y| <= |x| is empty");
  return {to_fit(large_total, "n >= |x|^(delta/8), 0 < 2|y| <= |x|, weight x^2/|y|"),
          to_fit(global_total, "0 < 2|y| <= |x|, weight |x|^(1+alpha)/|y|^alpha, alpha = " +
                                   std::to_string(alpha))};
}

BoundFit calderon_kernel_lemma_check(std::span<const double> t_values,
                                     std::span<const std::pair<std::int64_t, std::int64_t>> xy_pairs) {
  for (const auto& [x, y] : xy_pairs) {
    const std::int64_t ax = x < 0 ? -x : x;
    const std::int64_t ay = y < 0 ? -y : y;
    if (!(ay > 0 && 2 * ay < ax)) {
      throw InvalidInput("pair (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") violates 0 < 2|y| < |x|");
    }
  }
  for (double t : t_values) {
    if (!std::isfinite(t)) throw InvalidInput("t values must be finite");
  }
  std::vector<Best> partial(t_values.size());
  parallel::for_each_chunk(t_values.size(), 1, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double t = t_values[i];
      for (const auto& [x, y] : xy_pairs) {
        if (t == 0.0) {
          partial[i].offer(0.0, {0, x, y}, t);
          continue;
        }
        const double x2 = static_cast<double>(x) * static_cast<double>(x);
        const double scale = std::abs(t) * std::abs(static_cast<double>(y)) / x2;
        partial[i].offer(std::abs(kernel(x + y, t) - kernel(x, t)) / scale, {0, x, y}, t);
      }
    }
  });
  Best total;
  for (const auto& p : partial) total.merge(p);
  if (total.count == 0) throw EmptyRegime("no (t, x, y) samples");
  return to_fit(total, "0 < 2|y| < |x|, t sampled");
}

std::vector<double> default_calderon_t() {
  std::vector<double> t;
  for (int i = -100; i <= 100; ++i) t.push_back(i / 200.0);
  return t;
}

std::vector<std::pair<std::int64_t, std::int64_t>> default_calderon_pairs(std::int64_t x_max) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t ax = 3; ax <= x_max; ++ax) {
    for (std::int64_t x : {-ax, ax}) {
      for (std::int64_t y = -(ax - 1) / 2; y <= (ax - 1) / 2; ++y) {
        if (y != 0) out.emplace_back(x, y);
      }
    }
  }
  return out;
}

void write_table_csv(const KernelTable& table, std::ostream& out) {
  const auto old = out.precision(17);
  out << "n,x,value\n";
  for (std::size_t row = 0; row < table.n_values.size(); ++row) {
    for (std::int64_t x = -table.fit_radius; x <= table.fit_radius; ++x) {
      out << table.n_values[row] << ',' << x << ',' << table.at(row, x) << '\n';
    }
  }
  out.precision(old);
}

}  // namespace convpow
