#pragma once

// Map-level quantities of phi: (M, g) -> R^{n+1} at chart points: Lap phi,
// Lap^2 phi, energy density |dphi|^2, tension field, mean curvature, div theta,
// and the residual vectors of the three biharmonicity characterizations for
// unit-sphere targets.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chart.hpp"
#include "expr.hpp"

namespace bieigen {

inline constexpr double kSphereConstraintTol = 1e-10;
inline constexpr double kSphereIdentityTol = 1e-9;
inline constexpr double kIsometryTol = 1e-9;
inline constexpr double kTangencyTol = 1e-9;

using Vec = std::vector<double>;

enum class TargetKind { Sphere, Euclidean };

struct Target {
  TargetKind kind = TargetKind::Sphere;
  double radius = 1.0;

  bool is_sphere() const { return kind == TargetKind::Sphere; }
  bool is_unit_sphere() const { return is_sphere() && radius == 1.0; }
};

class SphereMap {
public:
  SphereMap(std::string name, Chart chart, Target target,
            std::vector<Expr> components);

  const std::string& name() const { return name_; }
  const Chart& chart() const { return chart_; }
  const Target& target() const { return target_; }
  const std::vector<Expr>& components() const { return components_; }
  std::size_t ambient() const { return components_.size(); }
  int dimension() const { return chart_.dimension(); }

  /// phi^A as jets at the order of the coordinate jets.
  std::vector<Jet> component_jets(std::span<const Jet> coords) const;
  Vec values(std::span<const double> p) const;

private:
  std::string name_;
  Chart chart_;
  Target target_;
  std::vector<Expr> components_;
  std::vector<CompiledExpr> compiled_;
};

struct PointAnalysis {
  std::vector<double> point;
  int dim = 0;
  Target target;

  Vec phi;
  Vec lap_phi;
  Vec bilap_phi;
  double density = 0.0;          // |dphi|^2
  Vec tension;                   // tau(phi)
  std::optional<Vec> eta;        // unit sphere, isometric at the point
  Vec grad_density;              // dphi(grad |dphi|^2)
  double lap_density = 0.0;      // Lap |dphi|^2
  double grad_lap_dot = 0.0;     // <grad Lap phi, grad phi>
  double div_theta = 0.0;
  double gram_defect = 0.0;      // max_ij |g_ij - <d_i phi, d_j phi>|
  double sphere_identity = 0.0;  // <Lap phi, phi> + |dphi|^2 (sphere targets)

  std::optional<Vec> residual_eq102;
  std::optional<Vec> residual_mf;
  std::optional<Vec> residual_me1;  // filled once a constant density is known

  bool isometric() const { return gram_defect <= kIsometryTol; }
};

/// Everything above at one interior point. Throws EvaluationError on domain
/// errors, singular metrics, sphere-constraint violations or failed
/// self-checks.
PointAnalysis analyze_point(const SphereMap& map, std::span<const double> p);

double energy_density(const SphereMap& map, std::span<const double> p);

/// tau = Lap phi + (|dphi|^2 / r^2) phi on Sphere(r); Lap phi on a Euclidean
/// target.
Vec tension_field(const SphereMap& map, std::span<const double> p);

/// eta = (Lap phi + m phi) / m; nullopt unless the target is the unit sphere
/// and the map is isometric at p.
std::optional<Vec> mean_curvature(const SphereMap& map, std::span<const double> p);

std::optional<Vec> residual_eq102(const SphereMap& map, std::span<const double> p);
std::optional<Vec> residual_mf(const SphereMap& map, std::span<const double> p);
std::optional<Vec> residual_me1(const SphereMap& map, std::span<const double> p,
                                double c);

// Pure forms on an existing analysis.

/// Lap^2 phi + 2m Lap phi + (2m^2 - |Lap phi|^2) phi.
std::optional<Vec> eq102_residual(const PointAnalysis& a);
/// Lap^2 phi + 2|dphi|^2 Lap phi
///   + (Lap|dphi|^2 + 2 div theta - |Lap phi|^2 + 2|dphi|^4) phi
///   + 2 dphi(grad |dphi|^2).
std::optional<Vec> mf_residual(const PointAnalysis& a);
/// Lap^2 phi + 2c Lap phi + (2c^2 - <Lap^2 phi, phi>) phi.
std::optional<Vec> me1_residual(const PointAnalysis& a, double c);

/// Largest sup-norm among the individual terms of each residual; the scale
/// that relative tolerances are measured against.
double eq102_scale(const PointAnalysis& a);
double mf_scale(const PointAnalysis& a);
double me1_scale(const PointAnalysis& a, double c);

/// Chart-domain bienergy 1/2 int |tau|^2 sqrt(det g) du by the composite
/// midpoint rule with `grid` cells per axis.
double bienergy_quadrature(const SphereMap& map, std::size_t grid);

double dot(std::span<const double> a, std::span<const double> b);
double sup_norm(std::span<const double> a);
double norm(std::span<const double> a);

}  // namespace bieigen
