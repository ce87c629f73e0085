#include "convpow/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

#include "convpow/errors.hpp"
#include "convpow/kernel_bounds.hpp"
#include "convpow/parallel.hpp"
#include "convpow/tail.hpp"

namespace convpow {
namespace {

using Clock = std::chrono::steady_clock;

// Runs report sections, turning expected diagnostic outcomes into a status
// field. InvalidInput is not caught: it aborts the command with exit code 2.
class SectionRunner {
 public:
  explicit SectionRunner(Report& report) : report_(report) {}

  template <typename Body>
  bool run(const std::string& name, Body body) {
    const auto start = Clock::now();
    Json section;
    bool ok = false;
    try {
      Json fields = body();
      section["status"] = "ok";
      for (auto& [key, value] : fields.items()) section[key] = value;
      ok = true;
    } catch (const HypothesisFailure& e) {
      section = failed("hypothesis_failure", e.what());
      report_.findings = true;
    } catch (const DiagnosticRefused& e) {
      section = failed("refused", e.what());
    } catch (const EmptyRegime& e) {
      section = failed("empty_regime", e.what());
    } catch (const PrecisionError& e) {
      section = failed("precision_error", e.what());
    }
    report_.json[name] = std::move(section);
    timing_[name] = std::chrono::duration<double>(Clock::now() - start).count();
    return ok;
  }

  void finish() {
    report_.json["timing"] = timing_;
    report_.json["findings"] = report_.findings;
  }

 private:
  static Json failed(const char* status, const char* message) {
    Json j;
    j["status"] = status;
    j["message"] = message;
    return j;
  }

  Report& report_;
  Json timing_ = Json::object();
};

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Report start_report(const char* command, const MeasureSpec& spec) {
  Report r;
  r.json["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  r.json["command"] = command;
  r.json["generated_at"] = utc_now();
  r.json["spec"] = spec_to_json(spec);
  return r;
}

Json numbers_json(std::span<const double> values) {
  Json a = Json::array();
  for (double v : values) a.push_back(number_or_sentinel(v));
  return a;
}

Json measure_summary(const LatticeMeasure& mu) {
  Json j;
  j["offset"] = mu.offset();
  j["last"] = mu.last();
  j["support_size"] = mu.support().size();
  j["symmetric"] = mu.is_symmetric();
  j["expectation"] = number_or_sentinel(expectation(mu));
  const Moment m2 = moment(mu, 2.0);
  j["second_moment"] = number_or_sentinel(m2.value);
  j["second_moment_is_lower_bound"] = m2.lower_bound;
  j["truncation"] = {{"radius", mu.truncation().radius},
                     {"deficit", number_or_sentinel(mu.truncation().deficit)}};
  return j;
}

Json fit_json(const BoundFit& fit) {
  Json j;
  j["regime"] = fit.regime;
  j["fitted_constant"] = number_or_sentinel(fit.fitted_constant);
  j["worst_tuple"] = {{"n", fit.worst_tuple[0]}, {"x", fit.worst_tuple[1]}, {"y", fit.worst_tuple[2]}};
  j["sample_count"] = fit.sample_count;
  return j;
}

double relative_change(double before, double after) {
  if (before == after) return 0.0;
  if (before == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(after - before) / std::abs(before);
}

std::string csv_of(const auto& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

// Kernel work needs the short default truncation when the spec leaves K open.
MeasureSpec with_kernel_truncation(MeasureSpec spec) {
  if (!spec.truncation) spec.truncation = kDefaultKernelTruncation;
  return spec;
}

}  // namespace

Report analyze_report(const MeasureSpec& spec, const AnalyzeOptions& options) {
  Report report = start_report("analyze", spec);
  SectionRunner sections(report);
  const LatticeMeasure mu = build_measure(spec);

  sections.run("measure", [&] { return measure_summary(mu); });
  report.json["strict_aperiodicity"] = strictly_aperiodic(mu);

  SpectralProfile profile;
  sections.run("profile", [&] {
    profile = make_profile(mu, options.grid);
    if (options.phi == PhiKind::constant) {
      const double bound = 4.0 * std::numbers::pi * std::numbers::pi * moment(mu, 2.0).value;
      profile = with_constant_phi(std::move(profile), bound);
    }
    Json j;
    j["grid_points"] = options.grid.points;
    j["spacing"] = profile.spacing;
    j["puncture"] = profile.puncture;
    j["phi_kind"] = options.phi == PhiKind::ratio ? "ratio" : "constant";
    return j;
  });
  report.side_files.push_back({".profile.csv", csv_of([&](std::ostream& o) { write_profile_csv(profile, o); })});

  sections.run("angular_ratio", [&] {
    const AngularRatio a = angular_ratio_sup(profile);
    Json j;
    j["value"] = number_or_sentinel(a.value);
    j["argmax_t"] = a.argmax_t;
    j["unbounded"] = a.unbounded;
    j["ladder_available"] = a.ladder_available;
    j["ladder_scales"] = numbers_json(a.ladder_scales);
    j["ladder_sups"] = numbers_json(a.ladder_sups);
    return j;
  });

  sections.run("petrov_constant", [&] { return Json{{"value", number_or_sentinel(petrov_constant(profile))}}; });

  std::optional<double> growth;
  GrowthCurve curve;
  sections.run("growth_exponent", [&] {
    curve = partial_second_moment_curve(mu, default_growth_n(mu));
    const GrowthFit fit = growth_exponent(curve);
    growth = fit.exponent;
    Json j;
    j["value"] = number_or_sentinel(fit.exponent);
    j["alpha"] = number_or_sentinel(1.0 - fit.exponent);
    j["residual"] = number_or_sentinel(fit.residual);
    j["fit_window"] = {curve.n_values[fit.first], curve.n_values[fit.last]};
    j["points"] = curve.n_values.size();
    return j;
  });
  if (!curve.n_values.empty()) {
    report.side_files.push_back({".growth.csv", csv_of([&](std::ostream& o) { write_growth_csv(curve, o); })});
  }

  std::optional<double> lipschitz;
  sections.run("lipschitz_exponent", [&] {
    const LipschitzEstimate est = lipschitz_exponent_estimate(profile);
    lipschitz = est.exponent;
    Json j;
    j["value"] = number_or_sentinel(est.exponent);
    j["residual"] = number_or_sentinel(est.residual);
    j["steps"] = numbers_json(est.steps);
    j["moduli"] = numbers_json(est.moduli);
    return j;
  });
  if (growth && lipschitz && std::isfinite(*lipschitz)) {
    report.json["exponent_duality_sum"] = *growth + *lipschitz;
  } else {
    report.json["exponent_duality_sum"] = nullptr;
  }

  std::optional<double> k_star;
  sections.run("majorant", [&] {
    const MajorantFit fit = majorant_fit(profile, options.delta);
    k_star = fit.k_star;
    Json j;
    j["k_star"] = number_or_sentinel(fit.k_star);
    j["delta"] = fit.delta;
    j["worst_t"] = fit.worst_t;
    j["side_condition_ok"] = fit.side_condition_ok;
    j["samples"] = fit.samples;
    return j;
  });

  sections.run("phi_properties", [&] {
    const PhiPropertyReport r = phi_property_report(profile, options.phi_window);
    Json j;
    j["window"] = r.window;
    j["samples"] = r.samples;
    j["symmetry_violation"] = number_or_sentinel(r.symmetry_violation);
    j["symmetric"] = r.symmetric;
    j["c1_empirical"] = number_or_sentinel(r.c1_empirical);
    j["c1_admissible"] = r.c1_admissible;
    j["c1_witness"] = number_or_sentinel(r.c1_witness);
    j["c2_empirical"] = number_or_sentinel(r.c2_empirical);
    j["c3_empirical"] = number_or_sentinel(r.c3_empirical);
    j["log_derivative_max"] = number_or_sentinel(r.log_derivative_max);
    j["log_derivative_ok"] = r.log_derivative_ok;
    j["t_phi_max"] = numbers_json(r.t_phi_max);
    j["t_phi_vanishing"] = r.t_phi_vanishing;
    return j;
  });

  sections.run("component_ratios", [&] {
    const ComponentRatioReport r = component_ratio_report(profile);
    Json j;
    j["window"] = r.window;
    j["first_derivative_ratio"] = number_or_sentinel(r.first_derivative_ratio);
    j["first_derivative_argmax"] = r.first_derivative_argmax;
    j["second_derivative_ratio"] = number_or_sentinel(r.second_derivative_ratio);
    j["second_derivative_argmax"] = r.second_derivative_argmax;
    return j;
  });

  sections.run("lemma_integrals", [&] {
    if (!k_star) throw DiagnosticRefused("no majorant constant k*; see the majorant section");
    const std::vector<std::int64_t> ns = {10, 100, 1000, 10000};
    const LemmaIntegrals li = lemma_integrals(profile_phi_function(profile), *k_star, options.delta, ns);
    Json j;
    j["k"] = *k_star;
    j["delta"] = options.delta;
    j["n_values"] = li.n_values;
    j["j1"] = numbers_json(li.j1);
    j["j2"] = numbers_json(li.j2);
    j["j1_max"] = number_or_sentinel(li.j1_max);
    j["j2_max"] = number_or_sentinel(li.j2_max);
    j["bounded"] = li.j1_max <= 2.0 * li.j1[1] && li.j2_max <= 2.0 * li.j2[1];
    return j;
  });

  report.json["notes"] = Json::array(
      {"The monotone part p of f'' is not recoverable from samples; only phi properties and the "
       "majorant are checked. Monotonicity is read as monotone on each side of 0, since the "
       "hypothesis says non-decreasing while the phi lemma says non-increasing as |t| -> 0."});
  sections.finish();
  return report;
}

Report verify_bounds_report(const MeasureSpec& input, const BoundsOptions& options) {
  if (options.n_max < 1) throw InvalidInput("--n-max must be >= 1");
  if (options.x_max < 1) throw InvalidInput("--x-max must be >= 1");
  const MeasureSpec spec = with_kernel_truncation(input);
  Report report = start_report("verify-bounds", spec);
  SectionRunner sections(report);
  const LatticeMeasure mu = build_measure(spec);

  double delta = 1.0;
  if (options.delta) {
    if (!(*options.delta > 0.0) || !std::isfinite(*options.delta)) throw InvalidInput("--delta must be positive");
    delta = *options.delta;
    report.json["delta"] = {{"value", delta}, {"source", "user"}};
  } else {
    GridOptions grid;
    grid.points = options.grid_points;
    const LipschitzEstimate est = lipschitz_exponent_estimate(make_profile(mu, grid));
    delta = std::isfinite(est.exponent) ? std::clamp(est.exponent, 0.01, 1.0) : 1.0;
    report.json["delta"] = {{"value", delta},
                            {"source", "lipschitz_estimate"},
                            {"estimate", number_or_sentinel(est.exponent)}};
  }
  report.json["alpha"] = options.alpha;

  KernelTable table;
  sections.run("table", [&] {
    table = kernel_table(mu, default_kernel_n(mu, options.n_max), options.x_max, to_string(spec.kind));
    double worst = 0.0;
    for (double m : table.row_mass) worst = std::max(worst, std::abs(m - 1.0));
    Json j;
    j["rows"] = table.n_values.size();
    j["n_max"] = table.n_values.back();
    j["x_max"] = table.fit_radius;
    j["max_row_mass_error"] = worst;
    return j;
  });
  if (!table.n_values.empty()) {
    report.side_files.push_back({".table.csv", csv_of([&](std::ostream& o) { write_table_csv(table, o); })});
  }
  const bool halvable = options.n_max >= 2 && !table.n_values.empty();

  auto with_half = [&](Json full, auto half_value, double full_value) {
    if (!halvable) return full;
    try {
      const double h = half_value(restrict_rows(table, options.n_max / 2));
      full["half_n_constant"] = number_or_sentinel(h);
      full["doubling_change"] = number_or_sentinel(relative_change(h, full_value));
    } catch (const EmptyRegime&) {
      full["half_n_constant"] = nullptr;
      full["doubling_change"] = nullptr;
    }
    return full;
  };

  sections.run("pointwise_bound", [&] {
    if (table.n_values.empty()) throw DiagnosticRefused("no kernel table");
    const BoundFit fit = pointwise_bound_fit(table, delta);
    return with_half(fit_json(fit), [&](const KernelTable& t) { return pointwise_bound_fit(t, delta).fitted_constant; },
                     fit.fitted_constant);
  });
  sections.run("small_n_regime", [&] {
    if (table.n_values.empty()) throw DiagnosticRefused("no kernel table");
    Json j = fit_json(small_n_regime_check(table, delta));
    j["sigma"] = small_n_sigma(delta);
    return j;
  });
  sections.run("smoothness_difference", [&] {
    if (table.n_values.empty()) throw DiagnosticRefused("no kernel table");
    const SmoothnessFits fits = smoothness_difference_fit(table, delta, options.alpha);
    Json j;
    j["large_n"] = with_half(fit_json(fits.large_n),
                             [&](const KernelTable& t) {
                               return smoothness_difference_fit(t, delta, options.alpha).large_n.fitted_constant;
                             },
                             fits.large_n.fitted_constant);
    j["global"] = fit_json(fits.global);
    if (j["large_n"].contains("doubling_change") && j["large_n"]["doubling_change"].is_number()) {
      j["large_n"]["stable"] = j["large_n"]["doubling_change"].get<double>() < 0.10;
    }
    return j;
  });
  sections.run("calderon_kernel", [&] {
    const auto ts = default_calderon_t();
    const auto pairs = default_calderon_pairs();
    const BoundFit fit = calderon_kernel_lemma_check(ts, pairs);
    Json j = fit_json(fit);
    j["worst_t"] = fit.worst_t;
    return j;
  });
  sections.finish();
  return report;
}

Report maximal_report(const MeasureSpec& input, const LatticeSequence& phi, const MaximalOptions& options) {
  if (options.n_max < 1) throw InvalidInput("--n-max must be >= 1");
  if (!(options.lambda_min > 0.0 && options.lambda_min <= 1.0)) {
    throw InvalidInput("--lambda-min must lie in (0, 1]");
  }
  const double norm = phi.l1_norm();
  if (!(norm > 0.0)) throw InvalidInput("phi: all weights are zero; the weak-type ratio is undefined");
  const MeasureSpec spec = with_kernel_truncation(input);
  Report report = start_report("maximal", spec);
  SectionRunner sections(report);
  const LatticeMeasure mu = build_measure(spec);
  report.json["phi"] = sequence_to_json(phi);

  std::optional<bool> unbounded;
  sections.run("angular_ratio", [&] {
    const AngularRatio a = angular_ratio_sup(make_profile(mu));
    unbounded = a.unbounded;
    return Json{{"value", number_or_sentinel(a.value)}, {"unbounded", a.unbounded}};
  });

  sections.run("weak_type", [&] {
    const std::int64_t depths[] = {options.n_max, 2 * options.n_max};
    const auto sups = maximal_function_checkpoints(mu, phi, depths);
    const auto lambdas = log_spaced_lambdas(options.lambda_min, 1.0, 40);
    const LevelSetCurve base = weak_type_curve(sups[0], norm, lambdas, options.n_max);
    const LevelSetCurve doubled = weak_type_curve(sups[1], norm, lambdas, 2 * options.n_max);
    report.side_files.push_back({".levels.csv", csv_of([&](std::ostream& o) { write_levels_csv(base, o); })});

    const auto& m = sups[0].values;
    const auto peak = std::max_element(m.begin(), m.end());
    const double growth = relative_change(base.headline(), doubled.headline());
    Json j;
    j["phi_norm"] = norm;
    j["n_max"] = options.n_max;
    j["m_phi_max"] = *peak;
    j["m_phi_argmax"] = sups[0].offset + (peak - m.begin());
    j["lambda_values"] = numbers_json(base.lambda_values);
    j["counts"] = base.counts;
    j["constants"] = numbers_json(base.constants);
    j["headline_constant"] = number_or_sentinel(base.headline());
    j["doubling"] = {{"n_max", 2 * options.n_max},
                     {"headline_constant", number_or_sentinel(doubled.headline())},
                     {"growth", number_or_sentinel(growth)},
                     {"threshold", 0.25},
                     // The threshold is a claim only for bounded angular ratio.
                     {"threshold_applies", unbounded.has_value() && !*unbounded},
                     {"stable", growth < 0.25}};
    return j;
  });
  sections.finish();
  return report;
}

Json strip_volatile(Json report) {
  report.erase("generated_at");
  report.erase("timing");
  return report;
}

namespace {

void write_outputs(const Report& report, const std::filesystem::path& out) {
  write_text_file(out, report.json.dump(2) + "\n");
  std::filesystem::path stem = out;
  stem.replace_extension();
  for (const auto& side : report.side_files) {
    write_text_file(stem.string() + side.suffix, side.content);
  }
}

MeasureSpec load_spec(const std::string& path) {
  const Json j = load_json_file(path);
  try {
    return spec_from_json(j);
  } catch (const InvalidInput& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Diagnostics for convolution powers of probability measures on the integers"};
  app.require_subcommand(1);
  unsigned threads = 0;

  std::string spec_path;
  std::string out_path;
  std::size_t grid_size = 65537;
  std::optional<double> delta;
  double alpha = 1.0;
  std::int64_t n_max = 256;
  std::int64_t x_max = 512;
  double lambda_min = 1e-4;
  std::string phi_kind = "ratio";
  std::string phi_path;

  auto* analyze = app.add_subcommand("analyze", "Transform-side and tail diagnostics");
  auto* bounds = app.add_subcommand("verify-bounds", "Kernel tables and bound fits");
  auto* maximal = app.add_subcommand("maximal", "Truncated maximal function and weak-type curve");
  for (auto* sub : {analyze, bounds, maximal}) {
    sub->add_option("--spec", spec_path, "Measure spec JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "Report JSON path")->required();
    sub->add_option("--threads", threads, "Worker thread cap (0 = hardware concurrency)");
  }
  analyze->add_option("--grid-size", grid_size, "Frequency grid points (odd)");
  analyze->add_option("--delta", delta, "Majorant and integral window");
  analyze->add_option("--phi-kind", phi_kind, "Majorant phi: ratio or constant")
      ->check(CLI::IsMember({"ratio", "constant"}));
  bounds->add_option("--n-max", n_max, "Largest power in the kernel table");
  bounds->add_option("--x-max", x_max, "Fit radius in x");
  bounds->add_option("--delta", delta, "Lipschitz exponent (default: estimated)");
  bounds->add_option("--alpha", alpha, "Exponent of the global smoothness form");
  bounds->add_option("--grid-size", grid_size, "Grid for the Lipschitz estimate");
  maximal->add_option("--phi", phi_path, "Test function JSON {offset, weights}")->required()->check(CLI::ExistingFile);
  maximal->add_option("--n-max", n_max, "Truncation depth (2 n_max also runs)");
  maximal->add_option("--lambda-min", lambda_min, "Smallest level of the lambda grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    parallel::set_thread_limit(threads);
    const MeasureSpec spec = load_spec(spec_path);
    Report report;
    if (analyze->parsed()) {
      AnalyzeOptions options;
      options.grid.points = grid_size;
      if (delta) options.delta = *delta;
      options.phi = phi_kind == "constant" ? PhiKind::constant : PhiKind::ratio;
      report = analyze_report(spec, options);
    } else if (bounds->parsed()) {
      BoundsOptions options;
      options.n_max = n_max;
      options.x_max = x_max;
      options.delta = delta;
      options.alpha = alpha;
      options.grid_points = grid_size;
      report = verify_bounds_report(spec, options);
    } else {
      LatticeSequence phi;
      try {
        phi = sequence_from_json(load_json_file(phi_path));
      } catch (const InvalidInput& e) {
        throw InvalidInput(phi_path + ": " + e.what());
      }
      MaximalOptions options;
      options.n_max = n_max;
      options.lambda_min = lambda_min;
      report = maximal_report(spec, phi, options);
    }
    write_outputs(report, out_path);
    std::cout << out_path << (report.findings ? ": hypothesis findings recorded\n" : ": ok\n");
    return report.findings ? 1 : 0;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace convpow
