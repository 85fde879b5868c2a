#pragma once

#include <string>

#include <json.hpp>

namespace bieigen {

using Json = nlohmann::json;

/// Key-sorted JSON with every float written at 17 significant digits, so
/// identical documents render to identical bytes and floats round-trip
/// exactly. Non-finite floats become null. indent < 0 renders compactly.
std::string to_canonical_json(const Json& j, int indent = 2);

/// %.17g rendering of a double.
std::string format_double(double v);

}  // namespace bieigen
