#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convpow/io.hpp"
#include "convpow/maximal.hpp"
#include "convpow/spectral.hpp"
#include "convpow/zoo.hpp"

namespace convpow {

inline constexpr const char* kToolName = "convpow";
inline constexpr const char* kToolVersion = "0.1.0";

struct SideFile {
  std::string suffix;  // e.g. ".profile.csv", appended to the report stem
  std::string content;
};

struct Report {
  Json json;
  std::vector<SideFile> side_files;
  /// Hypothesis failures (e.g. k* <= 0) were recorded; the CLI exits 1.
  bool findings = false;
};

struct AnalyzeOptions {
  GridOptions grid{};
  double delta = 0.25;        // majorant and integral window
  double phi_window = 0.125;  // window of the phi property report
  PhiKind phi = PhiKind::ratio;
};

struct BoundsOptions {
  std::int64_t n_max = 256;
  std::int64_t x_max = 512;
  std::optional<double> delta;  // defaults to the Lipschitz estimate, capped at 1
  double alpha = 1.0;
  std::size_t grid_points = 65537;
};

struct MaximalOptions {
  std::int64_t n_max = 256;  // the doubling comparison also runs 2 n_max
  double lambda_min = 1e-4;
};

Report analyze_report(const MeasureSpec& spec, const AnalyzeOptions& options = {});
Report verify_bounds_report(const MeasureSpec& spec, const BoundsOptions& options = {});
Report maximal_report(const MeasureSpec& spec, const LatticeSequence& phi,
                      const MaximalOptions& options = {});

/// Drops "generated_at" and "timing" so reports can be compared across runs.
Json strip_volatile(Json report);

/// Subcommands analyze, verify-bounds and maximal. Returns the exit code:
/// 0 success, 1 hypothesis findings present, 2 input error.
int run_cli(int argc, const char* const* argv);

}  // namespace convpow
