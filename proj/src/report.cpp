#include "report.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace bieigen {

std::string_view to_string(Equation e) {
  switch (e) {
    case Equation::Eq102: return "eq102";
    case Equation::Mf: return "mf";
    case Equation::Me1: return "me1";
  }
  return "mf";
}

std::optional<Equation> equation_from_name(std::string_view name) {
  for (Equation e : {Equation::Eq102, Equation::Mf, Equation::Me1}) {
    if (to_string(e) == name) {
      return e;
    }
  }
  return std::nullopt;
}

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json opt_norm(const std::optional<Vec>& v) { return v ? Json(sup_norm(*v)) : Json(nullptr); }

Json check_json(const Check& c) {
  return {{"value", c.value}, {"residual", c.residual}, {"threshold", c.threshold}};
}

Json opt_check(const std::optional<Check>& c) { return c ? check_json(*c) : Json(nullptr); }

std::string text_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

std::string text_opt(const std::optional<double>& v) {
  return v ? text_double(*v) : "null";
}

std::string csv_opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::optional<double> opt_sup(const std::optional<Vec>& v) {
  if (!v) {
    return std::nullopt;
  }
  return sup_norm(*v);
}

struct Summary {
  std::optional<double> max;
  std::optional<double> rms;
};

Summary summarize(const ClassificationReport& r, std::optional<Vec> PointAnalysis::*field) {
  double max = 0.0;
  double sq = 0.0;
  for (const auto& s : r.samples) {
    if (!(s.*field)) {
      return {};
    }
    const double n = sup_norm(*(s.*field));
    max = std::max(max, n);
    sq += n * n;
  }
  return {max, std::sqrt(sq / static_cast<double>(r.samples.size()))};
}

std::string target_text(const Target& t) {
  if (!t.is_sphere()) {
    return "euclidean";
  }
  return "sphere(r=" + text_double(t.radius) + ")";
}

constexpr std::array<std::string_view, 8> kVerdictKeys = {
    "is_isometric", "is_constant_density", "is_harmonic", "is_biharmonic",
    "is_eigenmap", "is_bieigenmap", "is_buckling", "is_proper_bieigen"};

}  // namespace

Json report_json(const ClassificationReport& r) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["map"] = r.map_name;
  j["dimension"] = r.dim;
  j["ambient_dimension"] = r.ambient;
  j["target"] = {{"kind", r.target.is_sphere() ? "sphere" : "euclidean"},
                 {"radius", r.target.is_sphere() ? Json(r.target.radius) : Json(nullptr)}};
  j["samples"] = r.sample_count();
  j["tolerance"] = {{"abs", r.tol.abs}, {"rel", r.tol.rel}};

  j["constants"] = {{"lambda_hat", opt(r.fitted.lambda)},
                    {"mu_hat", opt(r.fitted.mu)},
                    {"rho_hat", opt(r.fitted.rho)},
                    {"c_hat", r.fitted.c}};
  j["ratio_spread"] = {{"lambda", opt(r.spread.lambda)},
                       {"mu", opt(r.spread.mu)},
                       {"rho", opt(r.spread.rho)}};

  j["verdicts"] = {{"is_isometric", r.isometric.value},
                   {"is_constant_density", r.constant_density.value},
                   {"is_harmonic", r.harmonic.value},
                   {"is_biharmonic", r.biharmonic ? Json(r.biharmonic->value) : Json(nullptr)},
                   {"is_eigenmap", r.eigenmap.value},
                   {"is_bieigenmap", r.bieigenmap.value},
                   {"is_buckling", r.buckling.value},
                   {"is_proper_bieigen", r.proper_bieigen}};
  j["checks"] = {{"is_isometric", check_json(r.isometric)},
                 {"is_constant_density", check_json(r.constant_density)},
                 {"is_harmonic", check_json(r.harmonic)},
                 {"is_biharmonic", opt_check(r.biharmonic)},
                 {"is_eigenmap", check_json(r.eigenmap)},
                 {"is_bieigenmap", check_json(r.bieigenmap)},
                 {"is_buckling", check_json(r.buckling)}};
  j["biharmonic_route"] = to_string(r.biharmonic_route);
  j["characterizations"] = {{"eq102", opt_check(r.biharmonic_eq102)},
                            {"mf", opt_check(r.biharmonic_mf)},
                            {"me1", opt_check(r.biharmonic_me1)}};

  Json residuals = Json::object();
  for (auto [name, field] : {std::pair{"eq102", &PointAnalysis::residual_eq102},
                             std::pair{"mf", &PointAnalysis::residual_mf},
                             std::pair{"me1", &PointAnalysis::residual_me1}}) {
    const Summary s = summarize(r, field);
    residuals[name] = s.max ? Json{{"max", *s.max}, {"rms", *s.rms}} : Json(nullptr);
  }
  j["residual_summary"] = residuals;

  j["eta_norm"] = r.eta_norm_max
                      ? Json{{"min", *r.eta_norm_min}, {"max", *r.eta_norm_max}}
                      : Json(nullptr);
  const IdentityStats& id = r.identities;
  j["identities"] = {{"sphere_identity", opt(id.sphere_identity)},
                     {"mo", opt(id.mo)},
                     {"eq102_vs_mf", opt(id.eq102_vs_mf)},
                     {"me1_vs_mf", opt(id.me1_vs_mf)},
                     {"eta_dot_phi", opt(id.eta_dot_phi)},
                     {"tension_vs_eta", opt(id.tension_vs_eta)}};

  Json theorems = Json::object();
  for (Theorem t : {Theorem::Takahashi, Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4}) {
    const TheoremVerdict v = verify(r, t);
    theorems[std::string(to_string(t))] = {{"status", to_string(v.status)},
                                           {"reason", v.reason}};
  }
  j["theorems"] = theorems;

  Json points = Json::array();
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const PointAnalysis& s = r.samples[i];
    points.push_back({{"index", i},
                      {"point", s.point},
                      {"phi_norm", norm(s.phi)},
                      {"density", s.density},
                      {"lap_phi_norm", norm(s.lap_phi)},
                      {"bilap_phi_norm", norm(s.bilap_phi)},
                      {"tension_norm", norm(s.tension)},
                      {"eta_norm", s.eta ? Json(norm(*s.eta)) : Json(nullptr)},
                      {"residual_eq102", opt_norm(s.residual_eq102)},
                      {"residual_mf", opt_norm(s.residual_mf)},
                      {"residual_me1", opt_norm(s.residual_me1)}});
  }
  j["points"] = points;
  return j;
}

std::string render_classification(const ClassificationReport& r, Format format) {
  if (format == Format::Json) {
    return to_canonical_json(report_json(r)) + "\n";
  }
  if (format == Format::Csv) {
    std::string out = "index";
    for (int i = 0; i < r.dim; ++i) {
      out += ",p" + std::to_string(i);
    }
    out += ",";
    out += kCsvColumns;
    out += "\n";
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
      const PointAnalysis& s = r.samples[i];
      out += std::to_string(i);
      for (double x : s.point) {
        out += "," + format_double(x);
      }
      const std::optional<double> eta =
          s.eta ? std::optional<double>(norm(*s.eta)) : std::nullopt;
      for (const std::optional<double>& v :
           {std::optional<double>(norm(s.phi)), std::optional<double>(s.density),
            std::optional<double>(norm(s.lap_phi)), std::optional<double>(norm(s.bilap_phi)),
            std::optional<double>(norm(s.tension)), eta, opt_sup(s.residual_eq102),
            opt_sup(s.residual_mf), opt_sup(s.residual_me1)}) {
        out += "," + csv_opt(v);
      }
      out += "\n";
    }
    return out;
  }

  const Json j = report_json(r);
  std::string out;
  out += "map: " + r.map_name + "\n";
  out += "dimension: " + std::to_string(r.dim) + ", ambient: " + std::to_string(r.ambient) +
         ", target: " + target_text(r.target) + "\n";
  out += "samples: " + std::to_string(r.sample_count()) + ", tolerance: abs " +
         text_double(r.tol.abs) + " rel " + text_double(r.tol.rel) + "\n";
  out += "constants:\n";
  out += "  lambda_hat  " + text_opt(r.fitted.lambda) + "\n";
  out += "  mu_hat      " + text_opt(r.fitted.mu) + "\n";
  out += "  rho_hat     " + text_opt(r.fitted.rho) + "\n";
  out += "  c_hat       " + text_double(r.fitted.c) + "\n";
  out += "verdicts:\n";
  for (std::string_view key : kVerdictKeys) {
    const Json& v = j["verdicts"][std::string(key)];
    std::string line = "  " + std::string(key);
    line.resize(24, ' ');
    line += v.is_null() ? "undetermined" : (v.get<bool>() ? "true" : "false");
    const auto check = j["checks"].find(std::string(key));
    if (check != j["checks"].end() && !check->is_null()) {
      line += "  (residual " + text_double((*check)["residual"].get<double>()) +
              ", threshold " + text_double((*check)["threshold"].get<double>()) + ")";
    }
    out += line + "\n";
  }
  out += "biharmonic route: " + std::string(to_string(r.biharmonic_route)) + "\n";
  if (r.eta_norm_max) {
    out += "|eta|: min " + text_double(*r.eta_norm_min) + ", max " +
           text_double(*r.eta_norm_max) + "\n";
  }
  out += "theorems:\n";
  for (auto it = j["theorems"].begin(); it != j["theorems"].end(); ++it) {
    std::string line = "  " + it.key();
    line.resize(14, ' ');
    out += line + (*it)["status"].get<std::string>() + "  " +
           (*it)["reason"].get<std::string>() + "\n";
  }
  return out;
}

Json verdict_json(const ClassificationReport& r, Theorem theorem,
                  const TheoremVerdict& verdict) {
  return {{"format_version", kFormatVersion},
          {"map", r.map_name},
          {"theorem", to_string(theorem)},
          {"status", to_string(verdict.status)},
          {"reason", verdict.reason},
          {"constants",
           {{"lambda_hat", opt(r.fitted.lambda)},
            {"mu_hat", opt(r.fitted.mu)},
            {"rho_hat", opt(r.fitted.rho)},
            {"c_hat", r.fitted.c}}}};
}

std::string render_verdict(const ClassificationReport& r, Theorem theorem,
                           const TheoremVerdict& verdict, Format format) {
  switch (format) {
    case Format::Json:
      return to_canonical_json(verdict_json(r, theorem, verdict)) + "\n";
    case Format::Csv: {
      Json reason = verdict.reason;
      return "map,theorem,status,reason\n" + r.map_name + "," + std::string(to_string(theorem)) +
             "," + std::string(to_string(verdict.status)) + "," + reason.dump() + "\n";
    }
    case Format::Text:
      break;
  }
  return std::string(to_string(theorem)) + " on " + r.map_name + ": " +
         std::string(to_string(verdict.status)) + " (" + verdict.reason + ")\n";
}

std::optional<ResidualTable> residual_table(const ClassificationReport& r, Equation equation) {
  auto field = equation == Equation::Eq102 ? &PointAnalysis::residual_eq102
               : equation == Equation::Mf  ? &PointAnalysis::residual_mf
                                           : &PointAnalysis::residual_me1;
  ResidualTable t;
  t.equation = equation;
  t.map_name = r.map_name;
  double sq = 0.0;
  for (const auto& s : r.samples) {
    if (!(s.*field)) {
      return std::nullopt;
    }
    const double n = sup_norm(*(s.*field));
    t.points.push_back(s.point);
    t.norms.push_back(n);
    t.max = std::max(t.max, n);
    sq += n * n;
  }
  if (t.norms.empty()) {
    return std::nullopt;
  }
  t.rms = std::sqrt(sq / static_cast<double>(t.norms.size()));
  if (equation == Equation::Me1) {
    t.c = r.fitted.c;
  }
  return t;
}

std::string render_residual(const ResidualTable& t, Format format) {
  const std::size_t dim = t.points.empty() ? 0 : t.points.front().size();
  if (format == Format::Json) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < t.norms.size(); ++i) {
      rows.push_back({{"index", i}, {"point", t.points[i]}, {"residual", t.norms[i]}});
    }
    Json j = {{"format_version", kFormatVersion},
              {"map", t.map_name},
              {"equation", to_string(t.equation)},
              {"max", t.max},
              {"rms", t.rms},
              {"c", opt(t.c)},
              {"points", rows}};
    return to_canonical_json(j) + "\n";
  }
  if (format == Format::Csv) {
    std::string out = "index";
    for (std::size_t k = 0; k < dim; ++k) {
      out += ",p" + std::to_string(k);
    }
    out += ",residual\n";
    for (std::size_t i = 0; i < t.norms.size(); ++i) {
      out += std::to_string(i);
      for (double x : t.points[i]) {
        out += "," + format_double(x);
      }
      out += "," + format_double(t.norms[i]) + "\n";
    }
    return out;
  }
  std::string out = "residual " + std::string(to_string(t.equation)) + " on " + t.map_name + "\n";
  if (t.c) {
    out += "c = " + text_double(*t.c) + "\n";
  }
  for (std::size_t i = 0; i < t.norms.size(); ++i) {
    out += "  " + std::to_string(i) + "  (";
    for (std::size_t k = 0; k < t.points[i].size(); ++k) {
      out += (k ? ", " : "") + text_double(t.points[i][k]);
    }
    out += ")  " + text_double(t.norms[i]) + "\n";
  }
  out += "max " + text_double(t.max) + ", rms " + text_double(t.rms) + "\n";
  return out;
}

std::string render_bienergy(std::string_view map_name, std::size_t grid, double value,
                            Format format) {
  switch (format) {
    case Format::Json:
      return to_canonical_json({{"format_version", kFormatVersion},
                                {"map", std::string(map_name)},
                                {"grid", grid},
                                {"label", "chart-domain bienergy"},
                                {"value", value}}) +
             "\n";
    case Format::Csv:
      return "map,grid,chart_domain_bienergy\n" + std::string(map_name) + "," +
             std::to_string(grid) + "," + format_double(value) + "\n";
    case Format::Text:
      break;
  }
  return "chart-domain bienergy of " + std::string(map_name) + " (grid " +
         std::to_string(grid) + "): " + format_double(value) + "\n";
}

}  // namespace bieigen
