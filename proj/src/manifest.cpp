#include "manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace bieigen {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ManifestError(where + ": " + what);
}

void only_keys(const Json& obj, const std::string& where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    fail(where, "expected an object");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      fail(where, "unknown key '" + it.key() + "'");
    }
  }
}

const Json& required(const Json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    fail(where, std::string("missing key '") + key + "'");
  }
  return *it;
}

std::string string_at(const Json& v, const std::string& where) {
  if (!v.is_string()) {
    fail(where, "expected a string");
  }
  return v.get<std::string>();
}

std::vector<std::string> strings_at(const Json& v, const std::string& where) {
  if (!v.is_array()) {
    fail(where, "expected an array of strings");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(string_at(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Bound bound_at(const Json& v, const std::string& where) {
  if (v.is_number()) {
    return v.get<double>();
  }
  if (v.is_string()) {
    return v.get<std::string>();
  }
  fail(where, "expected a number or a constant expression");
}

Expr parse_at(const std::string& text, const std::string& where) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

double bound_value(const Bound& b, const std::string& where) {
  if (const double* v = std::get_if<double>(&b)) {
    return *v;
  }
  const Expr e = parse_at(std::get<std::string>(b), where);
  try {
    return eval_constant(e);
  } catch (const BindError& err) {
    fail(where, std::string("bound must be constant: ") + err.what());
  } catch (const DomainError& err) {
    fail(where, err.what());
  }
}

Json bound_json(const Bound& b) {
  if (const double* v = std::get_if<double>(&b)) {
    return *v;
  }
  return std::get<std::string>(b);
}

}  // namespace

Manifest manifest_from_json(const Json& doc) {
  Manifest m;
  only_keys(doc, "manifest", {"name", "chart", "map"});
  m.name = string_at(required(doc, "manifest", "name"), "name");

  const Json& chart = required(doc, "manifest", "chart");
  only_keys(chart, "chart", {"params", "domain", "periodic", "metric"});
  m.params = strings_at(required(chart, "chart", "params"), "chart.params");
  const std::size_t dim = m.params.size();

  const Json& domain = required(chart, "chart", "domain");
  if (!domain.is_array() || domain.size() != dim) {
    fail("chart.domain", "expected one [lo, hi] pair per parameter");
  }
  for (std::size_t i = 0; i < dim; ++i) {
    const std::string where = "chart.domain[" + std::to_string(i) + "]";
    if (!domain[i].is_array() || domain[i].size() != 2) {
      fail(where, "expected [lo, hi]");
    }
    m.domain.emplace_back(bound_at(domain[i][0], where), bound_at(domain[i][1], where));
  }

  m.periodic.assign(dim, false);
  if (auto it = chart.find("periodic"); it != chart.end()) {
    if (!it->is_array() || it->size() != dim) {
      fail("chart.periodic", "expected one boolean per parameter");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(*it)[i].is_boolean()) {
        fail("chart.periodic[" + std::to_string(i) + "]", "expected a boolean");
      }
      m.periodic[i] = (*it)[i].get<bool>();
    }
  }

  const Json& metric = required(chart, "chart", "metric");
  only_keys(metric, "chart.metric", {"mode", "g", "immersion"});
  const std::string mode = string_at(required(metric, "chart.metric", "mode"), "chart.metric.mode");
  if (mode == "explicit") {
    m.metric_mode = MetricMode::Explicit;
    if (metric.contains("immersion")) {
      fail("chart.metric", "'immersion' is only valid in induced mode");
    }
    const Json& g = required(metric, "chart.metric", "g");
    if (!g.is_array() || g.size() != dim) {
      fail("chart.metric.g", "expected " + std::to_string(dim) + " upper-triangle rows");
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string where = "chart.metric.g[" + std::to_string(i) + "]";
      auto row = strings_at(g[i], where);
      if (row.size() != dim - i) {
        fail(where, "expected " + std::to_string(dim - i) + " entries");
      }
      m.metric_upper.push_back(std::move(row));
    }
  } else if (mode == "induced") {
    m.metric_mode = MetricMode::Induced;
    if (metric.contains("g")) {
      fail("chart.metric", "'g' is only valid in explicit mode");
    }
    m.immersion = strings_at(required(metric, "chart.metric", "immersion"),
                             "chart.metric.immersion");
    if (m.immersion.size() < dim) {
      fail("chart.metric.immersion", "needs at least as many components as parameters");
    }
  } else {
    fail("chart.metric.mode", "expected \"explicit\" or \"induced\"");
  }

  const Json& map = required(doc, "manifest", "map");
  only_keys(map, "map", {"target", "radius", "components"});
  const std::string target = string_at(required(map, "map", "target"), "map.target");
  if (target == "sphere") {
    m.target = TargetKind::Sphere;
    if (auto it = map.find("radius"); it != map.end()) {
      if (!it->is_number() || !(it->get<double>() > 0.0) || !std::isfinite(it->get<double>())) {
        fail("map.radius", "expected a positive number");
      }
      m.radius = it->get<double>();
    }
  } else if (target == "euclidean") {
    m.target = TargetKind::Euclidean;
    if (map.contains("radius")) {
      fail("map.radius", "only valid for sphere targets");
    }
  } else {
    fail("map.target", "expected \"sphere\" or \"euclidean\"");
  }
  m.components = strings_at(required(map, "map", "components"), "map.components");
  if (m.components.empty()) {
    fail("map.components", "needs at least one component");
  }
  return m;
}

Manifest manifest_from_string(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ManifestError(std::string("invalid JSON: ") + e.what());
  }
  return manifest_from_json(doc);
}

Manifest manifest_from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ManifestError("cannot read manifest '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return manifest_from_string(buf.str());
}

Json manifest_to_json(const Manifest& m) {
  Json domain = Json::array();
  for (const auto& [lo, hi] : m.domain) {
    domain.push_back(Json::array({bound_json(lo), bound_json(hi)}));
  }
  Json metric = {{"mode", m.metric_mode == MetricMode::Explicit ? "explicit" : "induced"}};
  if (m.metric_mode == MetricMode::Explicit) {
    metric["g"] = m.metric_upper;
  } else {
    metric["immersion"] = m.immersion;
  }
  Json map = {{"target", m.target == TargetKind::Sphere ? "sphere" : "euclidean"},
              {"components", m.components}};
  if (m.target == TargetKind::Sphere) {
    map["radius"] = m.radius;
  }
  return {{"name", m.name},
          {"chart",
           {{"params", m.params},
            {"domain", domain},
            {"periodic", m.periodic},
            {"metric", metric}}},
          {"map", map}};
}

std::string manifest_to_string(const Manifest& m) {
  return to_canonical_json(manifest_to_json(m)) + "\n";
}

SphereMap build_map(const Manifest& m) {
  std::vector<Interval> domain;
  for (std::size_t i = 0; i < m.domain.size(); ++i) {
    const std::string where = "chart.domain[" + std::to_string(i) + "]";
    domain.push_back({bound_value(m.domain[i].first, where),
                      bound_value(m.domain[i].second, where),
                      i < m.periodic.size() && m.periodic[i]});
  }
  auto parse_all = [&m](const std::vector<std::string>& texts, const std::string& where) {
    std::vector<Expr> out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      const std::string at = where + "[" + std::to_string(i) + "]";
      out.push_back(parse_at(texts[i], at));
      for (const auto& v : out.back().variables()) {
        if (std::find(m.params.begin(), m.params.end(), v) == m.params.end()) {
          throw ManifestError(at + ": unknown variable '" + v + "'");
        }
      }
    }
    return out;
  };
  try {
    std::optional<Chart> chart;
    if (m.metric_mode == MetricMode::Explicit) {
      std::vector<std::vector<Expr>> upper;
      for (std::size_t i = 0; i < m.metric_upper.size(); ++i) {
        upper.push_back(parse_all(m.metric_upper[i], "chart.metric.g[" + std::to_string(i) + "]"));
      }
      chart = Chart::explicit_metric(m.params, std::move(domain), std::move(upper));
    } else {
      chart = Chart::induced(m.params, std::move(domain),
                             parse_all(m.immersion, "chart.metric.immersion"));
    }
    Target target{m.target, m.target == TargetKind::Sphere ? m.radius : 1.0};
    return SphereMap(m.name, std::move(*chart), target,
                     parse_all(m.components, "map.components"));
  } catch (const BindError& e) {
    throw ManifestError(e.what());
  } catch (const std::invalid_argument& e) {
    throw ManifestError(e.what());
  }
}

}  // namespace bieigen
