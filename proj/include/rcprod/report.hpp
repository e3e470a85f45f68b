#pragma once

#include <string>

#include "json.hpp"

namespace rcprod::report {

using json = nlohmann::json;

/// Pretty JSON with sorted keys and every float in 12 significant digits; non-finite floats become null.
std::string format_json(const json& doc);

/// Reports (objects carrying "per_class") become one row per class entry; anything else is flattened
/// to path,value rows.
std::string format_csv(const json& doc);

/// Human-readable summary.
std::string format_text(const json& doc);

std::string format(const json& doc, const std::string& fmt);

}  // namespace rcprod::report
