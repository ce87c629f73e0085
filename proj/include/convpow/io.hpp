#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "convpow/maximal.hpp"
#include "convpow/measure.hpp"
#include "convpow/zoo.hpp"

namespace convpow {

using Json = nlohmann::ordered_json;

/// Parse errors and schema violations throw InvalidInput with a message that
/// starts with the offending field path, e.g. "params.beta: expected number".
Json parse_json(std::string_view text);
Json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// {"kind": ..., "params": {...}, "K": ...}; K omitted when unset.
Json spec_to_json(const MeasureSpec& spec);
MeasureSpec spec_from_json(const Json& j);

/// {"offset": int, "weights": [...], "tail_mass": real}.
Json measure_to_json(const LatticeMeasure& mu);
LatticeMeasure measure_from_json(const Json& j);

/// Same shape as a measure without the normalization requirement.
Json sequence_to_json(const LatticeSequence& s);
LatticeSequence sequence_from_json(const Json& j);

/// Finite doubles pass through; NaN and infinities become the strings
/// "nan", "inf", "-inf" so every report stays valid JSON.
Json number_or_sentinel(double value);

}  // namespace convpow
