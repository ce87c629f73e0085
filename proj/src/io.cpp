#include "convpow/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "convpow/errors.hpp"

namespace convpow {
namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InvalidInput(path + ": " + what);
}

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

const Json& require(const Json& j, const std::string& base, const std::string& key) {
  if (!j.is_object()) fail(base.empty() ? "<root>" : base, "expected object");
  auto it = j.find(key);
  if (it == j.end()) fail(join(base, key), "missing field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected number");
  return j.get<double>();
}

std::int64_t integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected integer");
  return j.get<std::int64_t>();
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::int64_t> integers(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected array");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json params_of(const MeasureSpec& spec) {
  Json p = Json::object();
  switch (spec.kind) {
    case MeasureKind::power_law:
      if (spec.sigma) p["sigma"] = *spec.sigma;
      else if (spec.beta) p["beta"] = *spec.beta;
      break;
    case MeasureKind::mixture:
      p["a1"] = spec.a1;
      if (spec.eta) p["eta"] = spec_to_json(*spec.eta);
      if (spec.nu) p["nu"] = spec_to_json(*spec.nu);
      break;
    case MeasureKind::atoms:
      p["points"] = spec.points;
      p["weights"] = spec.weights;
      break;
    case MeasureKind::lazy_walk:
    case MeasureKind::log_squared:
      break;
  }
  return p;
}

MeasureSpec spec_at(const Json& j, const std::string& base) {
  if (!j.is_object()) fail(base.empty() ? "<root>" : base, "expected object");
  const Json& kind = require(j, base, "kind");
  if (!kind.is_string()) fail(join(base, "kind"), "expected string");
  MeasureSpec spec;
  try {
    spec.kind = measure_kind_from_string(kind.get<std::string>());
  } catch (const InvalidInput&) {
    fail(join(base, "kind"), "unknown measure kind '" + kind.get<std::string>() + "'");
  }
  if (auto k = j.find("K"); k != j.end() && !k->is_null()) spec.truncation = integer(*k, join(base, "K"));

  const std::string pbase = join(base, "params");
  const Json empty = Json::object();
  const Json& params = j.contains("params") ? j.at("params") : empty;
  if (!params.is_object()) fail(pbase, "expected object");
  switch (spec.kind) {
    case MeasureKind::power_law:
      if (params.contains("sigma")) spec.sigma = number(params.at("sigma"), join(pbase, "sigma"));
      else spec.beta = number(require(params, pbase, "beta"), join(pbase, "beta"));
      break;
    case MeasureKind::mixture:
      spec.a1 = number(require(params, pbase, "a1"), join(pbase, "a1"));
      spec.eta = std::make_shared<const MeasureSpec>(spec_at(require(params, pbase, "eta"), join(pbase, "eta")));
      spec.nu = std::make_shared<const MeasureSpec>(spec_at(require(params, pbase, "nu"), join(pbase, "nu")));
      break;
    case MeasureKind::atoms:
      spec.points = integers(require(params, pbase, "points"), join(pbase, "points"));
      spec.weights = numbers(require(params, pbase, "weights"), join(pbase, "weights"));
      if (spec.points.size() != spec.weights.size()) {
        fail(join(pbase, "weights"), "length differs from params.points");
      }
      break;
    case MeasureKind::lazy_walk:
    case MeasureKind::log_squared:
      break;
  }
  return spec;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("<root>: malformed JSON (") + e.what() + ")");
  }
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(path.string() + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_json(buffer.str());
  } catch (const InvalidInput& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput(path.string() + ": cannot open file for writing");
  out << text;
  if (!out) throw InvalidInput(path.string() + ": write failed");
}

Json spec_to_json(const MeasureSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  j["params"] = params_of(spec);
  if (spec.truncation) j["K"] = *spec.truncation;
  return j;
}

MeasureSpec spec_from_json(const Json& j) { return spec_at(j, ""); }

Json measure_to_json(const LatticeMeasure& mu) {
  Json j;
  j["offset"] = mu.offset();
  j["weights"] = std::vector<double>(mu.weights().begin(), mu.weights().end());
  j["tail_mass"] = mu.tail_mass();
  return j;
}

LatticeMeasure measure_from_json(const Json& j) {
  const auto offset = integer(require(j, "", "offset"), "offset");
  auto weights = numbers(require(j, "", "weights"), "weights");
  const double tail = j.contains("tail_mass") ? number(j.at("tail_mass"), "tail_mass") : 0.0;
  try {
    return LatticeMeasure(offset, std::move(weights), tail);
  } catch (const InvalidInput& e) {
    throw InvalidInput(std::string("weights: ") + e.what());
  }
}

Json sequence_to_json(const LatticeSequence& s) {
  Json j;
  j["offset"] = s.offset;
  j["weights"] = s.values;
  return j;
}

LatticeSequence sequence_from_json(const Json& j) {
  LatticeSequence s;
  s.offset = integer(require(j, "", "offset"), "offset");
  s.values = numbers(require(j, "", "weights"), "weights");
  if (s.values.empty()) fail("weights", "must not be empty");
  for (double v : s.values) {
    if (!std::isfinite(v)) fail("weights", "values must be finite");
  }
  return s;
}

Json number_or_sentinel(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

}  // namespace convpow
