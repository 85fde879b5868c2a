#include "json_io.hpp"

#include <cmath>
#include <cstdio>

namespace bieigen {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  std::string s = buf;
  // Keep floats recognizable as floats.
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) {
    s += ".0";
  }
  return s;
}

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const bool pretty = indent >= 0;
  auto newline = [&](int d) {
    if (pretty) {
      out += '\n';
      out.append(static_cast<std::size_t>(indent * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      // nlohmann::json objects iterate in key order.
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ',';
        }
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool scalars = true;
      for (const auto& e : j) {
        scalars = scalars && !e.is_structured();
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) {
          out += scalars && pretty ? ", " : ",";
        }
        first = false;
        if (!scalars) {
          newline(depth + 1);
        }
        write(e, indent, depth + 1, out);
      }
      if (!scalars) {
        newline(depth);
      }
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string to_canonical_json(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

}  // namespace bieigen
