#include "bieigen/bieigen.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <optional>
#include <string>

#include "catalog.hpp"
#include "manifest.hpp"
#include "report.hpp"

#ifndef BIEIGEN_VERSION_STRING
#define BIEIGEN_VERSION_STRING "0.0.0"
#endif

struct bieigen_map {
  bieigen::Manifest manifest;
  bieigen::SphereMap map;
};

namespace {

thread_local std::string g_last_error;

int set_error(int status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p != nullptr) {
    std::memcpy(p, s.c_str(), s.size() + 1);
  }
  return p;
}

int emit(char** out, const std::string& s) {
  if (out != nullptr) {
    *out = dup(s);
    if (*out == nullptr) {
      return set_error(BIEIGEN_E_INTERNAL, "out of memory");
    }
  }
  return BIEIGEN_OK;
}

// Runs fn, translating exceptions to status codes.
template <class F>
int guarded(F&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const bieigen::ManifestError& e) {
    return set_error(BIEIGEN_E_MANIFEST, e.what());
  } catch (const bieigen::ParseError& e) {
    return set_error(BIEIGEN_E_MANIFEST, e.what());
  } catch (const bieigen::BindError& e) {
    return set_error(BIEIGEN_E_MANIFEST, e.what());
  } catch (const bieigen::EvaluationError& e) {
    return set_error(BIEIGEN_E_EVAL, e.what());
  } catch (const bieigen::DomainError& e) {
    return set_error(BIEIGEN_E_EVAL, e.what());
  } catch (const std::invalid_argument& e) {
    return set_error(BIEIGEN_E_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return set_error(BIEIGEN_E_INTERNAL, e.what());
  } catch (...) {
    return set_error(BIEIGEN_E_INTERNAL, "unknown error");
  }
}

int make_map(bieigen::Manifest manifest, bieigen_map** out) {
  bieigen::SphereMap map = bieigen::build_map(manifest);
  *out = new bieigen_map{std::move(manifest), std::move(map)};
  return BIEIGEN_OK;
}

bieigen::ClassifyOptions to_options(const bieigen_options* o) {
  bieigen::ClassifyOptions c;
  if (o != nullptr) {
    if (o->samples == 0) {
      throw std::invalid_argument("samples must be positive");
    }
    if (!(o->tol_abs >= 0.0) || !(o->tol_rel >= 0.0)) {
      throw std::invalid_argument("tolerances must be non-negative");
    }
    if (!(o->inset >= 0.0 && o->inset < 0.5)) {
      throw std::invalid_argument("inset must lie in [0, 0.5)");
    }
    c.samples = o->samples;
    c.tol = {o->tol_abs, o->tol_rel};
    c.inset = o->inset;
  }
  return c;
}

bieigen::Format to_format(const bieigen_options* o) {
  if (o == nullptr) {
    return bieigen::Format::Text;
  }
  switch (o->format) {
    case BIEIGEN_FORMAT_TEXT: return bieigen::Format::Text;
    case BIEIGEN_FORMAT_JSON: return bieigen::Format::Json;
    case BIEIGEN_FORMAT_CSV: return bieigen::Format::Csv;
  }
  throw std::invalid_argument("unknown output format");
}

}  // namespace

extern "C" {

void bieigen_options_init(bieigen_options* options) {
  if (options == nullptr) {
    return;
  }
  options->samples = bieigen::kDefaultSamples;
  options->tol_abs = bieigen::kDefaultTolAbs;
  options->tol_rel = bieigen::kDefaultTolRel;
  options->inset = bieigen::kDefaultInset;
  options->format = BIEIGEN_FORMAT_TEXT;
}

const char* bieigen_version(void) { return BIEIGEN_VERSION_STRING; }

const char* bieigen_last_error(void) { return g_last_error.c_str(); }

const char* bieigen_status_name(int status) {
  switch (status) {
    case BIEIGEN_OK: return "ok";
    case BIEIGEN_FAIL: return "fail";
    case BIEIGEN_E_MANIFEST: return "manifest error";
    case BIEIGEN_E_EVAL: return "evaluation error";
    case BIEIGEN_NOT_APPLICABLE: return "not applicable";
    case BIEIGEN_E_DENSITY: return "non-constant energy density";
    case BIEIGEN_E_ARGUMENT: return "invalid argument";
    case BIEIGEN_E_INTERNAL: return "internal error";
    default: return "unknown status";
  }
}

int bieigen_map_from_file(const char* path, bieigen_map** out) {
  if (path == nullptr || out == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] { return make_map(bieigen::manifest_from_file(path), out); });
}

int bieigen_map_from_json(const char* json, bieigen_map** out) {
  if (json == nullptr || out == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] { return make_map(bieigen::manifest_from_string(json), out); });
}

int bieigen_map_from_catalog(const char* name, bieigen_map** out) {
  if (name == nullptr || out == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    const bieigen::CatalogEntry* entry = bieigen::catalog_find(name);
    if (entry == nullptr) {
      return set_error(BIEIGEN_E_MANIFEST, std::string("unknown catalog entry '") + name + "'");
    }
    return make_map(entry->manifest, out);
  });
}

void bieigen_map_free(bieigen_map* map) { delete map; }

const char* bieigen_map_name(const bieigen_map* map) {
  return map == nullptr ? nullptr : map->manifest.name.c_str();
}

int bieigen_map_dimension(const bieigen_map* map) {
  return map == nullptr ? 0 : map->map.dimension();
}

size_t bieigen_map_ambient(const bieigen_map* map) {
  return map == nullptr ? 0 : map->map.ambient();
}

int bieigen_map_export(const bieigen_map* map, char** out) {
  if (map == nullptr || out == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] { return emit(out, bieigen::manifest_to_string(map->manifest)); });
}

size_t bieigen_catalog_size(void) { return bieigen::catalog_list().size(); }

const char* bieigen_catalog_name(size_t index) {
  const auto& list = bieigen::catalog_list();
  return index < list.size() ? list[index].name.c_str() : nullptr;
}

const char* bieigen_catalog_note(size_t index) {
  const auto& list = bieigen::catalog_list();
  return index < list.size() ? list[index].note.c_str() : nullptr;
}

int bieigen_classify(const bieigen_map* map, const bieigen_options* options, char** out) {
  if (map == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null map");
  }
  if (out != nullptr) {
    *out = nullptr;
  }
  return guarded([&] {
    const auto format = to_format(options);
    const auto report = bieigen::classify(map->map, to_options(options));
    return emit(out, bieigen::render_classification(report, format));
  });
}

int bieigen_verify(const bieigen_map* map, const char* theorem,
                   const bieigen_options* options, char** out) {
  if (map == nullptr || theorem == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null argument");
  }
  if (out != nullptr) {
    *out = nullptr;
  }
  return guarded([&] {
    const auto which = bieigen::theorem_from_name(theorem);
    if (!which) {
      return set_error(BIEIGEN_E_ARGUMENT, std::string("unknown theorem '") + theorem + "'");
    }
    const auto format = to_format(options);
    const auto report = bieigen::classify(map->map, to_options(options));
    const auto verdict = bieigen::verify(report, *which);
    if (int rc = emit(out, bieigen::render_verdict(report, *which, verdict, format)); rc != 0) {
      return rc;
    }
    g_last_error = verdict.reason;
    switch (verdict.status) {
      case bieigen::Status::Pass: return int{BIEIGEN_OK};
      case bieigen::Status::Fail: return int{BIEIGEN_FAIL};
      case bieigen::Status::NotApplicable: return int{BIEIGEN_NOT_APPLICABLE};
    }
    return int{BIEIGEN_E_INTERNAL};
  });
}

int bieigen_residual(const bieigen_map* map, const char* equation,
                     const bieigen_options* options, char** out) {
  if (map == nullptr || equation == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null argument");
  }
  if (out != nullptr) {
    *out = nullptr;
  }
  return guarded([&] {
    const auto which = bieigen::equation_from_name(equation);
    if (!which) {
      return set_error(BIEIGEN_E_ARGUMENT, std::string("unknown equation '") + equation + "'");
    }
    const auto format = to_format(options);
    const auto report = bieigen::classify(map->map, to_options(options));
    if (!report.target.is_unit_sphere()) {
      return set_error(BIEIGEN_NOT_APPLICABLE,
                       std::string(equation) + " needs a unit-sphere target");
    }
    if (*which == bieigen::Equation::Me1 && !report.constant_density.value) {
      return set_error(BIEIGEN_E_DENSITY,
                       "me1 needs a constant energy density (spread " +
                           bieigen::format_double(report.constant_density.residual) + ")");
    }
    const auto table = bieigen::residual_table(report, *which);
    if (!table) {
      return set_error(BIEIGEN_NOT_APPLICABLE,
                       std::string(equation) + " needs an isometric map at every sample");
    }
    return emit(out, bieigen::render_residual(*table, format));
  });
}

int bieigen_bienergy(const bieigen_map* map, size_t grid, const bieigen_options* options,
                     double* value, char** out) {
  if (map == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null map");
  }
  if (out != nullptr) {
    *out = nullptr;
  }
  return guarded([&] {
    if (grid == 0) {
      return set_error(BIEIGEN_E_ARGUMENT, "grid must be positive");
    }
    const auto format = to_format(options);
    const double v = bieigen::bienergy_quadrature(map->map, grid);
    if (value != nullptr) {
      *value = v;
    }
    return emit(out, bieigen::render_bienergy(map->manifest.name, grid, v, format));
  });
}

int bieigen_evaluate_point(const bieigen_map* map, const double* p, size_t n,
                           double* density, double* phi_norm, double* lap_phi_norm,
                           double* tension_norm) {
  if (map == nullptr || p == nullptr) {
    return set_error(BIEIGEN_E_ARGUMENT, "null argument");
  }
  return guarded([&] {
    if (n != static_cast<size_t>(map->map.dimension())) {
      return set_error(BIEIGEN_E_ARGUMENT, "point dimension does not match the chart");
    }
    const auto a = bieigen::analyze_point(map->map, {p, n});
    if (density != nullptr) *density = a.density;
    if (phi_norm != nullptr) *phi_norm = bieigen::norm(a.phi);
    if (lap_phi_norm != nullptr) *lap_phi_norm = bieigen::norm(a.lap_phi);
    if (tension_norm != nullptr) *tension_norm = bieigen::norm(a.tension);
    return int{BIEIGEN_OK};
  });
}

void bieigen_string_free(char* s) { std::free(s); }

}  // extern "C"
