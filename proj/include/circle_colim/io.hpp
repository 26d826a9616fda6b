#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "circle_colim/cocycles.hpp"
#include "circle_colim/colimit_words.hpp"
#include "circle_colim/diffeo.hpp"
#include "circle_colim/geometry.hpp"
#include "circle_colim/loops.hpp"

namespace circle_colim::io {

using json = nlohmann::json;

/// Parse errors and missing files raise PreconditionError.
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& value);

json to_json(const Interval& arc);
Interval interval_from_json(const json& j);

/// {"intervals":[{"start":..,"length":..},...],"d":..,"based":null|angle}
json to_json(const Cover& cover);
Cover cover_from_json(const json& j);

/// {"n":N,"lift":[...]}
json to_json(const CircleDiffeo& phi);
CircleDiffeo diffeo_from_json(const json& j);

/// {"group":"SU(2)","n":N,"values":[[[re,im],...],...]}, row-major.
json to_json(const Loop& gamma);
Loop loop_from_json(const json& j);

/// {"modes":{"-2":[re,im],...}}. Coefficients may also be strings such as
/// "1/2" or "3"; field_from_json_exact keeps them exact.
json to_json(const ComplexField& f);
ComplexField field_from_json(const json& j);
ExactField field_from_json_exact(const json& j);

/// {"group":"SU(2)","modes":{"m":[[re,im],...]}} with row-major matrices.
LieModes lie_modes_from_json(const json& j);
json to_json(const LieModes& f);

/// {"letters":[[gen,exp],...]}
json to_json(const Word& w);
Word word_from_json(const json& j);

json to_json(const Derivation& d);
Derivation derivation_from_json(const json& j);

/// Directory with index.json (mode, group, grid, cover, element files,
/// generators) and one JSON file per element.
void save_presentation(const std::filesystem::path& dir, const Presentation& p);
Presentation load_presentation(const std::filesystem::path& dir);

}  // namespace circle_colim::io
