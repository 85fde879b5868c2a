// bieigen command-line tool. Exit codes: 0 ok/PASS, 1 FAIL, 2 manifest or
// usage error, 3 evaluation error, 4 NOT_APPLICABLE, 5 me1 requested on a
// non-constant energy density.

#include <bieigen/bieigen.h>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitEval = 3;

struct MapDeleter {
  void operator()(bieigen_map* m) const { bieigen_map_free(m); }
};
using MapPtr = std::unique_ptr<bieigen_map, MapDeleter>;

struct StringDeleter {
  void operator()(char* s) const { bieigen_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

// Library statuses 0..5 are exit codes already.
int exit_code(int status) {
  switch (status) {
    case BIEIGEN_E_ARGUMENT: return kExitUsage;
    case BIEIGEN_E_INTERNAL: return kExitEval;
    default: return status;
  }
}

int report_error(int status) {
  std::cerr << "error: " << bieigen_status_name(status) << ": " << bieigen_last_error() << "\n";
  return exit_code(status);
}

// An existing file is read as a manifest; anything else must name a catalog
// entry.
int load(const std::string& what, MapPtr& out) {
  bieigen_map* raw = nullptr;
  int status;
  std::error_code ec;
  if (std::filesystem::is_regular_file(what, ec)) {
    status = bieigen_map_from_file(what.c_str(), &raw);
  } else {
    status = bieigen_map_from_catalog(what.c_str(), &raw);
    if (status == BIEIGEN_E_MANIFEST) {
      std::cerr << "error: '" << what << "' is neither a manifest file nor a catalog entry\n";
      return kExitUsage;
    }
  }
  if (status != BIEIGEN_OK) {
    return report_error(status);
  }
  out.reset(raw);
  return 0;
}

int write_output(const char* text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitUsage;
  }
  return 0;
}

struct Common {
  std::string manifest;
  std::size_t samples = 0;
  std::optional<double> tol;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  std::string format = "text";
  std::string output;
};

const std::map<std::string, bieigen_format> kFormats = {
    {"text", BIEIGEN_FORMAT_TEXT}, {"json", BIEIGEN_FORMAT_JSON}, {"csv", BIEIGEN_FORMAT_CSV}};

void add_common(CLI::App* cmd, Common& c, bool sampling) {
  cmd->add_option("manifest", c.manifest, "Manifest file or catalog entry name")->required();
  if (sampling) {
    cmd->add_option("--samples", c.samples, "Target number of sample points (default 64)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", c.tol, "Absolute and relative tolerance")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol-abs", c.tol_abs, "Absolute tolerance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--tol-rel", c.tol_rel, "Relative tolerance")->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("-o,--output", c.output, "Write to a file instead of stdout");
}

// Precedence: --tol-abs/--tol-rel, then --tol, then BIEIGEN_TOL, then 1e-8.
std::optional<bieigen_options> options_from(const Common& c) {
  bieigen_options o;
  bieigen_options_init(&o);
  if (const char* env = std::getenv("BIEIGEN_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v >= 0.0)) {
      std::cerr << "error: BIEIGEN_TOL must be a non-negative number\n";
      return std::nullopt;
    }
    o.tol_abs = o.tol_rel = v;
  }
  if (c.tol) {
    o.tol_abs = o.tol_rel = *c.tol;
  }
  if (c.tol_abs) {
    o.tol_abs = *c.tol_abs;
  }
  if (c.tol_rel) {
    o.tol_rel = *c.tol_rel;
  }
  if (c.samples > 0) {
    o.samples = c.samples;
  }
  o.format = kFormats.at(c.format);
  return o;
}

// Runs a command producing text; statuses in `keep_output` still print it.
template <class F>
int run(const Common& c, F&& command) {
  const auto options = options_from(c);
  if (!options) {
    return kExitUsage;
  }
  MapPtr map;
  if (int rc = load(c.manifest, map); rc != 0) {
    return rc;
  }
  char* raw = nullptr;
  const int status = command(map.get(), &*options, &raw);
  OwnedString text(raw);
  if (text) {
    if (int rc = write_output(text.get(), c.output); rc != 0) {
      return rc;
    }
  }
  if (status == BIEIGEN_OK || status == BIEIGEN_FAIL ||
      (status == BIEIGEN_NOT_APPLICABLE && text)) {
    return status;
  }
  return report_error(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify maps into spheres: harmonic, biharmonic, eigen, bi-eigen and "
               "buckling eigenmaps"};
  app.set_version_flag("--version", std::string(bieigen_version()));
  app.require_subcommand(1);

  Common classify_args;
  auto* classify = app.add_subcommand("classify", "Full classification report");
  add_common(classify, classify_args, true);

  Common verify_args;
  std::string theorem;
  auto* verify = app.add_subcommand("verify", "Check one theorem's conclusion");
  add_common(verify, verify_args, true);
  verify->add_option("--theorem", theorem, "Theorem to check")
      ->required()
      ->check(CLI::IsMember({"takahashi", "t1", "t2", "t3", "t4"}));

  Common residual_args;
  std::string equation;
  auto* residual = app.add_subcommand("residual", "Per-point residual of a biharmonic equation");
  add_common(residual, residual_args, true);
  residual->add_option("--equation", equation, "Equation")
      ->required()
      ->check(CLI::IsMember({"eq102", "mf", "me1"}));

  Common bienergy_args;
  std::size_t grid = 256;
  auto* bienergy = app.add_subcommand("bienergy", "Chart-domain bienergy by the midpoint rule");
  add_common(bienergy, bienergy_args, false);
  bienergy->add_option("--grid", grid, "Cells per axis (default 256)")
      ->check(CLI::PositiveNumber);

  auto* catalog = app.add_subcommand("catalog", "Built-in example maps");
  catalog->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List entries");
  std::string export_name;
  std::string export_path;
  auto* catalog_export = catalog->add_subcommand("export", "Print an entry's manifest JSON");
  catalog_export->add_option("name", export_name, "Entry name")->required();
  catalog_export->add_option("-o,--output", export_path, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (classify->parsed()) {
    return run(classify_args, [](const bieigen_map* m, const bieigen_options* o, char** out) {
      return bieigen_classify(m, o, out);
    });
  }
  if (verify->parsed()) {
    return run(verify_args, [&](const bieigen_map* m, const bieigen_options* o, char** out) {
      return bieigen_verify(m, theorem.c_str(), o, out);
    });
  }
  if (residual->parsed()) {
    return run(residual_args, [&](const bieigen_map* m, const bieigen_options* o, char** out) {
      return bieigen_residual(m, equation.c_str(), o, out);
    });
  }
  if (bienergy->parsed()) {
    return run(bienergy_args, [&](const bieigen_map* m, const bieigen_options* o, char** out) {
      return bieigen_bienergy(m, grid, o, nullptr, out);
    });
  }
  if (catalog_list->parsed()) {
    for (std::size_t i = 0; i < bieigen_catalog_size(); ++i) {
      std::cout << bieigen_catalog_name(i) << "\t" << bieigen_catalog_note(i) << "\n";
    }
    return 0;
  }
  if (catalog_export->parsed()) {
    bieigen_map* raw = nullptr;
    if (int status = bieigen_map_from_catalog(export_name.c_str(), &raw); status != BIEIGEN_OK) {
      return report_error(status);
    }
    MapPtr map(raw);
    char* text = nullptr;
    if (int status = bieigen_map_export(map.get(), &text); status != BIEIGEN_OK) {
      return report_error(status);
    }
    OwnedString owned(text);
    return write_output(owned.get(), export_path);
  }
  return kExitUsage;
}
