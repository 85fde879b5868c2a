#pragma once

// Rendering of classification, verification, residual and bienergy results
// as text, JSON or CSV. JSON output is key-sorted with 17 significant digits
// and carries "format_version".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "classifier.hpp"
#include "json_io.hpp"

namespace bieigen {

inline constexpr std::string_view kFormatVersion = "1";

enum class Format { Text, Json, Csv };

/// CSV columns of the per-point table, in order, after p0..p{m-1}.
inline constexpr std::string_view kCsvColumns =
    "phi_norm,density,lap_phi_norm,bilap_phi_norm,tension_norm,eta_norm,"
    "residual_eq102,residual_mf,residual_me1";

enum class Equation { Eq102, Mf, Me1 };

std::string_view to_string(Equation e);
std::optional<Equation> equation_from_name(std::string_view name);

Json report_json(const ClassificationReport& report);
std::string render_classification(const ClassificationReport& report, Format format);

Json verdict_json(const ClassificationReport& report, Theorem theorem,
                  const TheoremVerdict& verdict);
std::string render_verdict(const ClassificationReport& report, Theorem theorem,
                           const TheoremVerdict& verdict, Format format);

struct ResidualTable {
  Equation equation = Equation::Mf;
  std::string map_name;
  std::vector<std::vector<double>> points;
  std::vector<double> norms;  // sup-norm over ambient components
  double max = 0.0;
  double rms = 0.0;
  std::optional<double> c;    // the density constant used by me1
};

/// nullopt when the equation is unavailable at some sample (wrong target,
/// non-isometric point for eq102, non-constant density for me1).
std::optional<ResidualTable> residual_table(const ClassificationReport& report,
                                            Equation equation);
std::string render_residual(const ResidualTable& table, Format format);

std::string render_bienergy(std::string_view map_name, std::size_t grid, double value,
                            Format format);

}  // namespace bieigen
