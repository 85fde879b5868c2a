#pragma once

// Manifest documents: a chart plus a map, as JSON.
//
//   {
//     "name": "small_circle_S2",
//     "chart": {
//       "params": ["t"],
//       "domain": [[0, "pi*sqrt(2)"]],        // numbers or constant expressions
//       "periodic": [true],                   // optional, default all false
//       "metric": {"mode": "explicit", "g": [["1"]]}
//               | {"mode": "induced", "immersion": ["cos(t)", ...]}
//     },
//     "map": {
//       "target": "sphere" | "euclidean",
//       "radius": 1,                          // sphere only, default 1
//       "components": ["cos(sqrt(2)*t)/sqrt(2)", ...]
//     }
//   }
//
// Unknown keys are rejected at every level.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chart.hpp"
#include "json_io.hpp"
#include "map_analysis.hpp"

namespace bieigen {

/// Any problem with a manifest document: malformed JSON, schema violations,
/// inconsistent dimensions, unparsable or unbound expressions.
class ManifestError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using Bound = std::variant<double, std::string>;

struct Manifest {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::pair<Bound, Bound>> domain;
  std::vector<bool> periodic;
  MetricMode metric_mode = MetricMode::Explicit;
  std::vector<std::vector<std::string>> metric_upper;  // explicit mode
  std::vector<std::string> immersion;                   // induced mode
  TargetKind target = TargetKind::Sphere;
  double radius = 1.0;
  std::vector<std::string> components;
};

Manifest manifest_from_json(const Json& doc);
Manifest manifest_from_string(std::string_view text);
Manifest manifest_from_file(const std::filesystem::path& path);

Json manifest_to_json(const Manifest& m);
/// Canonical text: key-sorted, 17 significant digits, trailing newline.
std::string manifest_to_string(const Manifest& m);

/// Parse every expression and assemble the map. Throws ManifestError.
SphereMap build_map(const Manifest& m);

}  // namespace bieigen
