#pragma once

#include <string>

#include <json.hpp>

namespace qci::io::detail {

// Serializes with keys in insertion order and every floating-point number
// rendered at 17 significant digits, so documents are byte-reproducible
// and parse back to the identical double.
std::string dump_json(const nlohmann::ordered_json& value, int indent = 2);

}  // namespace qci::io::detail
