#include "convpow/zoo.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "convpow/errors.hpp"
#include "convpow/summation.hpp"

namespace convpow {
namespace {

// Euler-Maclaurin estimate of sum_{k > K} k^-beta.
double power_tail_sum(double beta, std::int64_t K) {
  const double k = static_cast<double>(K);
  return std::pow(k, 1.0 - beta) / (beta - 1.0) - 0.5 * std::pow(k, -beta) +
         beta / 12.0 * std::pow(k, -beta - 1.0);
}

// Mirrors positive-side weights w[0] = mu(1), ... onto [-K, K] with mu(0) = 0
// below `first` (the smallest |k| carrying weight).
std::vector<double> mirror(const std::vector<double>& positive, std::int64_t first) {
  const std::size_t K = positive.size() + static_cast<std::size_t>(first) - 1;
  std::vector<double> w(2 * K + 1, 0.0);
  for (std::size_t i = 0; i < positive.size(); ++i) {
    const std::size_t k = i + static_cast<std::size_t>(first);
    w[K + k] = positive[i];
    w[K - k] = positive[i];
  }
  return w;
}

}  // namespace

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::power_law: return "power_law";
    case MeasureKind::mixture: return "mixture";
    case MeasureKind::lazy_walk: return "lazy_walk";
    case MeasureKind::atoms: return "atoms";
    case MeasureKind::log_squared: return "log_squared";
  }
  return "unknown";
}

MeasureKind measure_kind_from_string(const std::string& name) {
  for (MeasureKind k : {MeasureKind::power_law, MeasureKind::mixture, MeasureKind::lazy_walk,
                        MeasureKind::atoms, MeasureKind::log_squared}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("kind: unknown measure kind '" + name + "'");
}

double MeasureSpec::power_exponent() const {
  if (sigma) return 2.0 + *sigma;
  if (beta) return *beta;
  throw InvalidInput("params.beta: power_law needs beta or sigma");
}

LatticeMeasure power_law(double beta, std::int64_t K) {
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw InvalidInput("params.beta: power law needs beta > 1 to be normalizable");
  }
  if (K < 10) throw InvalidInput("K: power law truncation must be at least 10");
  std::vector<double> positive(static_cast<std::size_t>(K));
  CompensatedSum partial;
  for (std::int64_t k = 1; k <= K; ++k) {
    const double w = std::pow(static_cast<double>(k), -beta);
    positive[static_cast<std::size_t>(k - 1)] = w;
    partial.add(w);
  }
  const double norm = 2.0 * partial.value();
  for (double& w : positive) w /= norm;
  const double tail = power_tail_sum(beta, K);
  const double deficit = tail / (partial.value() + tail);
  return LatticeMeasure(-K, mirror(positive, 1), 0.0, Truncation{K, deficit});
}

LatticeMeasure mixture(double a1, const LatticeMeasure& eta, const LatticeMeasure& nu) {
  if (!(a1 > 0.0 && a1 <= 1.0)) throw InvalidInput("params.a1: mixture weight must lie in (0, 1]");
  if (a1 == 1.0) return eta;
  const double b1 = 1.0 - a1;
  const std::int64_t lo = std::min(eta.offset(), nu.offset());
  const std::int64_t hi = std::max(eta.last(), nu.last());
  std::vector<double> w(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t k = lo; k <= hi; ++k) {
    w[static_cast<std::size_t>(k - lo)] = a1 * eta(k) + b1 * nu(k);
  }
  Truncation trunc;
  if (eta.truncation().active() || nu.truncation().active()) {
    trunc.radius = std::max(eta.truncation().radius, nu.truncation().radius);
    trunc.deficit = a1 * eta.truncation().deficit + b1 * nu.truncation().deficit;
  }
  const double tail = a1 * eta.tail_mass() + b1 * nu.tail_mass();
  return LatticeMeasure(lo, std::move(w), tail, trunc);
}

LatticeMeasure lazy_walk() { return LatticeMeasure(-1, {0.25, 0.5, 0.25}); }

LatticeMeasure log_squared_measure(std::int64_t K) {
  if (K < 3) throw InvalidInput("K: log-squared measure needs K >= 3");
  std::vector<double> positive(static_cast<std::size_t>(K - 1));
  CompensatedSum partial;
  for (std::int64_t k = 2; k <= K; ++k) {
    const double x = static_cast<double>(k);
    const double l = std::log(x);
    const double w = 1.0 / (x * l * l);
    positive[static_cast<std::size_t>(k - 2)] = w;
    partial.add(w);
  }
  const double norm = 2.0 * partial.value();
  for (double& w : positive) w /= norm;
  const double tail = 1.0 / std::log(static_cast<double>(K) + 0.5);
  const double deficit = tail / (partial.value() + tail);
  return LatticeMeasure(-K, mirror(positive, 2), 0.0, Truncation{K, deficit});
}

LatticeMeasure atoms(std::span<const std::int64_t> points, std::span<const double> weights) {
  if (points.size() != weights.size()) {
    throw InvalidInput("params.weights: length differs from params.points");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw InvalidInput("params.weights[" + std::to_string(i) + "]: must be nonnegative");
    }
    total.add(weights[i]);
  }
  if (!(std::abs(total.value() - 1.0) <= 1e-9)) {
    throw InvalidInput("params.weights: atoms must sum to 1");
  }
  std::vector<double> scaled(weights.begin(), weights.end());
  for (double& w : scaled) w /= total.value();
  return LatticeMeasure::from_atoms(points, scaled);
}

LatticeMeasure build_measure(const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureKind::power_law: {
      if (spec.sigma && !(*spec.sigma > 0.0 && *spec.sigma < 1.0)) {
        throw InvalidInput("params.sigma: must lie in (0, 1)");
      }
      return power_law(spec.power_exponent(), spec.truncation.value_or(kDefaultSpectralTruncation));
    }
    case MeasureKind::log_squared:
      return log_squared_measure(spec.truncation.value_or(kDefaultSpectralTruncation));
    case MeasureKind::lazy_walk:
      return lazy_walk();
    case MeasureKind::atoms:
      return atoms(spec.points, spec.weights);
    case MeasureKind::mixture: {
      if (!spec.eta || !spec.nu) throw InvalidInput("params: mixture needs eta and nu");
      auto inherit = [&](const MeasureSpec& part) {
        MeasureSpec copy = part;
        if (!copy.truncation) copy.truncation = spec.truncation;
        return build_measure(copy);
      };
      return mixture(spec.a1, inherit(*spec.eta), inherit(*spec.nu));
    }
  }
  throw InvalidInput("kind: unsupported measure kind");
}

MeasureSpec power_law_spec(double beta, std::int64_t K) {
  MeasureSpec s;
  s.kind = MeasureKind::power_law;
  s.beta = beta;
  s.truncation = K;
  return s;
}

MeasureSpec lazy_walk_spec() { return MeasureSpec{}; }

MeasureSpec atoms_spec(std::vector<std::int64_t> points, std::vector<double> weights) {
  MeasureSpec s;
  s.kind = MeasureKind::atoms;
  s.points = std::move(points);
  s.weights = std::move(weights);
  return s;
}

MeasureSpec mixture_spec(double a1, MeasureSpec eta, MeasureSpec nu) {
  MeasureSpec s;
  s.kind = MeasureKind::mixture;
  s.a1 = a1;
  s.eta = std::make_shared<const MeasureSpec>(std::move(eta));
  s.nu = std::make_shared<const MeasureSpec>(std::move(nu));
  return s;
}

MeasureSpec log_squared_spec(std::int64_t K) {
  MeasureSpec s;
  s.kind = MeasureKind::log_squared;
  s.truncation = K;
  return s;
}

MeasureSpec power_mixture_spec(double beta, std::int64_t K, double a1) {
  return mixture_spec(a1, power_law_spec(beta, K), lazy_walk_spec());
}

std::vector<NamedSpec> standard_zoo(std::int64_t K) {
  std::vector<NamedSpec> zoo;
  zoo.push_back({"lazy_walk", lazy_walk_spec()});
  zoo.push_back({"power_law_3", power_law_spec(3.0, K)});
  zoo.push_back({"power_law_2.5", power_law_spec(2.5, K)});
  zoo.push_back({"power_mixture_3", power_mixture_spec(3.0, K)});
  // Centered but skewed finite-variance partner: E = -2/3 + 2/3 = 0.
  zoo.push_back({"skew_power_mixture_2.5",
                 mixture_spec(0.5, power_law_spec(2.5, K), atoms_spec({-1, 2}, {2.0 / 3, 1.0 / 3}))});
  zoo.push_back({"log_squared", log_squared_spec(K)});
  zoo.push_back({"uniform_3", atoms_spec({-1, 0, 1}, {1.0 / 3, 1.0 / 3, 1.0 / 3})});
  zoo.push_back({"bernoulli_half", atoms_spec({0, 1}, {0.5, 0.5})});
  zoo.push_back({"bernoulli_quarter", atoms_spec({0, 1}, {0.75, 0.25})});
  zoo.push_back({"plus_minus_one", atoms_spec({-1, 1}, {0.5, 0.5})});
  zoo.push_back({"even_lattice", atoms_spec({-2, 0, 2}, {0.25, 0.5, 0.25})});
  zoo.push_back({"unit_atom", atoms_spec({0}, {1.0})});
  return zoo;
}

}  // namespace convpow
