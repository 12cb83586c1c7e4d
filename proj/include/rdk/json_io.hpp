#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rdk/model.hpp"

namespace rdk {

/// Design-exchange JSON:
///   { "shape": "K4E", "lambda": 5, "points": [...], "groups": [[...]]?,
///     "hole": [...]?, "kind": "rgdd"?,
///     "classes": [ { "missing": [...], "blocks": [["1","2","0","3"], ...] } ] }
/// Block arrays hold the tuple in notation order.
nlohmann::json to_json(const ResolvableDesign& design);
nlohmann::json to_json(const GroupedDesign& design);
nlohmann::json to_json(const AnyDesign& design);

/// Reads either form. A document with "groups" or "hole" (or an explicit
/// "kind" other than "design") becomes a GroupedDesign; the kind defaults to
/// "ird" when a hole is present and "rgdd" otherwise.
AnyDesign design_from_json(const nlohmann::json& doc);

AnyDesign read_design_file(const std::filesystem::path& path);
void write_design_file(const std::filesystem::path& path, const AnyDesign& design);

/// Canonical text of a design: two-space indented JSON plus newline.
std::string dump_design(const AnyDesign& design);

}  // namespace rdk
