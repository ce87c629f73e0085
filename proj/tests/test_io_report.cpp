#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

#include "convpow/errors.hpp"
#include "convpow/io.hpp"
#include "convpow/parallel.hpp"
#include "convpow/report.hpp"
#include "convpow/zoo.hpp"

using namespace convpow;
namespace fs = std::filesystem;

namespace {

std::string message_of(const std::string& text) {
  try {
    spec_from_json(parse_json(text));
  } catch (const InvalidInput& e) {
    return e.what();
  }
  return "";
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / ("convpow_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

int run(const std::string& args, const fs::path& err) {
  const std::string cmd = std::string(CONVPOW_CLI_PATH) + " " + args + " >/dev/null 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("spec json round-trips losslessly") {
  for (const auto& [name, spec] : standard_zoo(200)) {
    CAPTURE(name);
    const Json once = spec_to_json(spec);
    const MeasureSpec back = spec_from_json(parse_json(once.dump()));
    CHECK(spec_to_json(back) == once);
    CHECK(build_measure(back) == build_measure(spec));
  }
  MeasureSpec s;
  s.kind = MeasureKind::power_law;
  s.sigma = 0.3;
  s.truncation = 50;
  CHECK(spec_to_json(spec_from_json(spec_to_json(s))) == spec_to_json(s));
  CHECK(spec_to_json(s).dump() == R"({"kind":"power_law","params":{"sigma":0.3},"K":50})");
}

TEST_CASE("spec errors name the offending field") {
  CHECK(message_of("{").rfind("<root>: malformed JSON", 0) == 0);
  CHECK(message_of(R"({"kind": "power_law", "params": {}})").rfind("params.beta: missing field", 0) == 0);
  CHECK(message_of(R"({"kind": "power_law", "params": {"beta": "x"}})").rfind("params.beta: expected number", 0) == 0);
  CHECK(message_of(R"({"kind": "spiral"})").rfind("kind: unknown measure kind", 0) == 0);
  CHECK(message_of(R"({"params": {}})").rfind("kind: missing field", 0) == 0);
  CHECK(message_of(R"({"kind": "mixture", "params": {"a1": 0.5, "eta": {"kind": "power_law", "params": {}}, "nu": {"kind": "lazy_walk"}}})")
            .rfind("params.eta.params.beta", 0) == 0);
  CHECK(message_of(R"({"kind": "atoms", "params": {"points": [0, 1.5], "weights": [0.5, 0.5]}})")
            .rfind("params.points[1]: expected integer", 0) == 0);
  CHECK(message_of(R"({"kind": "lazy_walk", "K": "big"})").rfind("K: expected integer", 0) == 0);
}

TEST_CASE("measure and sequence json") {
  const Json j = measure_to_json(lazy_walk());
  CHECK(measure_from_json(j) == lazy_walk());
  CHECK_THROWS_AS(measure_from_json(parse_json(R"({"offset": 0, "weights": [0.5]})")), InvalidInput);
  auto s = sequence_from_json(parse_json(R"({"offset": -1, "weights": [2, -1]})"));
  CHECK(s.offset == -1);
  CHECK(s.l1_norm() == 3.0);
  CHECK_THROWS_AS(sequence_from_json(parse_json(R"({"offset": 0, "weights": []})")), InvalidInput);
}

TEST_CASE("sentinels") {
  CHECK(number_or_sentinel(1.5) == Json(1.5));
  CHECK(number_or_sentinel(std::numeric_limits<double>::infinity()) == Json("inf"));
  CHECK(number_or_sentinel(-std::numeric_limits<double>::infinity()) == Json("-inf"));
  CHECK(number_or_sentinel(std::nan("")) == Json("nan"));
}

TEST_CASE("analyze report") {
  AnalyzeOptions o;
  o.grid.points = 4097;
  SUBCASE("lazy walk") {
    auto r = analyze_report(lazy_walk_spec(), o);
    CHECK(r.json["strict_aperiodicity"] == true);
    for (const char* key : {"angular_ratio", "petrov_constant", "growth_exponent", "lipschitz_exponent", "majorant",
                            "phi_properties", "lemma_integrals"}) {
      CAPTURE(key);
      CHECK(r.json[key]["status"] == "ok");
    }
    CHECK_FALSE(r.findings);
    CHECK(r.side_files.size() == 2);
  }
  SUBCASE("power law beta = 3") {
    auto r = analyze_report(power_law_spec(3.0, 1000), o);
    CHECK(r.json["strict_aperiodicity"] == true);
    CHECK(r.json["spec"]["params"]["beta"] == 3.0);
  }
  SUBCASE("point mass is refused with a sentinel and flagged") {
    auto r = analyze_report(atoms_spec({0}, {1.0}), o);
    CHECK(r.json["strict_aperiodicity"] == false);
    CHECK(r.json["angular_ratio"]["status"] == "refused");
    CHECK(r.json["petrov_constant"]["status"] == "hypothesis_failure");
    CHECK(r.json["lipschitz_exponent"]["value"] == "inf");
    CHECK(r.findings);
  }
}

TEST_CASE("verify-bounds report") {
  BoundsOptions o;
  o.n_max = 32;
  o.x_max = 64;
  o.grid_points = 4097;
  auto r = verify_bounds_report(lazy_walk_spec(), o);
  for (const char* key : {"pointwise_bound", "small_n_regime", "smoothness_difference", "calderon_kernel"}) {
    CAPTURE(key);
    CHECK(r.json[key]["status"] == "ok");
  }
  CHECK(r.json["delta"]["source"] == "lipschitz_estimate");
  CHECK(r.json["smoothness_difference"]["large_n"].contains("doubling_change"));
  o.n_max = 1;
  o.delta = 1.0;
  auto small = verify_bounds_report(lazy_walk_spec(), o);
  CHECK(small.json.contains("small_n_regime"));
  CHECK_FALSE(small.findings);
  o.n_max = 0;
  CHECK_THROWS_AS(verify_bounds_report(lazy_walk_spec(), o), InvalidInput);
}

TEST_CASE("reports are deterministic across reruns and thread counts") {
  BoundsOptions o;
  o.n_max = 24;
  o.x_max = 40;
  o.grid_points = 2049;
  parallel::set_thread_limit(1);
  const auto a = strip_volatile(verify_bounds_report(power_mixture_spec(2.5, 100), o).json).dump();
  parallel::set_thread_limit(4);
  const auto b = strip_volatile(verify_bounds_report(power_mixture_spec(2.5, 100), o).json).dump();
  parallel::set_thread_limit(0);
  CHECK(a == b);
}

TEST_CASE("maximal report") {
  MaximalOptions o;
  o.n_max = 32;
  auto r = maximal_report(lazy_walk_spec(), LatticeSequence{0, {1.0}}, o);
  CHECK(r.json["weak_type"]["status"] == "ok");
  CHECK(r.json["weak_type"]["m_phi_max"] == 0.5);
  CHECK(r.json["weak_type"]["headline_constant"].get<double>() <= 1.0);
  CHECK(r.json["weak_type"]["doubling"].contains("growth"));
  CHECK_THROWS_AS(maximal_report(lazy_walk_spec(), LatticeSequence{0, {0.0, 0.0}}, o), InvalidInput);
}

TEST_CASE("command line exit codes and side files") {
  const fs::path dir = scratch();
  put(dir / "lazy.json", R"({"kind": "lazy_walk"})");
  put(dir / "bad.json", R"({"kind": "power_law", "params": {"beta": "three"}})");
  put(dir / "broken.json", R"({"kind": )");
  put(dir / "dirac.json", R"({"kind": "atoms", "params": {"points": [0], "weights": [1]}})");
  put(dir / "phi.json", R"({"offset": 0, "weights": [1]})");
  put(dir / "zero.json", R"({"offset": 0, "weights": [0, 0]})");
  const fs::path err = dir / "stderr.txt";

  CHECK(run("analyze --spec " + (dir / "lazy.json").string() + " --out " + (dir / "a.json").string() +
                " --grid-size 2049",
            err) == 0);
  CHECK(fs::exists(dir / "a.profile.csv"));
  CHECK(fs::exists(dir / "a.growth.csv"));
  CHECK(run("analyze --spec " + (dir / "bad.json").string() + " --out " + (dir / "b.json").string(), err) == 2);
  CHECK(slurp(err).find("params.beta") != std::string::npos);
  CHECK(run("analyze --spec " + (dir / "broken.json").string() + " --out " + (dir / "b.json").string(), err) == 2);
  CHECK(run("analyze --spec " + (dir / "dirac.json").string() + " --out " + (dir / "d.json").string() +
                " --grid-size 1025",
            err) == 1);
  CHECK(run("maximal --spec " + (dir / "lazy.json").string() + " --phi " + (dir / "phi.json").string() +
                " --n-max 16 --out " + (dir / "m.json").string(),
            err) == 0);
  CHECK(fs::exists(dir / "m.levels.csv"));
  CHECK(run("maximal --spec " + (dir / "lazy.json").string() + " --phi " + (dir / "zero.json").string() +
                " --out " + (dir / "z.json").string(),
            err) == 2);
  CHECK(run("verify-bounds --spec " + (dir / "lazy.json").string() + " --n-max 8 --x-max 16 --threads 2 --out " +
                (dir / "v.json").string(),
            err) == 0);
  CHECK(fs::exists(dir / "v.table.csv"));
  CHECK(run("frobnicate", err) == 2);
  fs::remove_all(dir);
}
