#pragma once

// Sample-based classification of maps into spheres.
//
// Fitted constants are least-squares fits over all samples and ambient
// components; every verdict compares a pointwise residual sup-norm against
// tol_abs + tol_rel * (largest term magnitude of that residual). The theorem
// verifiers read only the report, and answer PASS, FAIL or NOT_APPLICABLE
// (never PASS when a precondition is unmet).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "map_analysis.hpp"

namespace bieigen {

inline constexpr std::size_t kDefaultSamples = 64;
inline constexpr double kDefaultTolAbs = 1e-8;
inline constexpr double kDefaultTolRel = 1e-8;
// Denominators below this make a fitted constant or a pointwise ratio
// undefined.
inline constexpr double kFitDenominatorFloor = 1e-14;
inline constexpr double kRatioDenominatorFloor = 1e-10;

struct Tolerance {
  double abs = kDefaultTolAbs;
  double rel = kDefaultTolRel;

  double bound(double scale) const { return abs + rel * scale; }
};

struct ClassifyOptions {
  std::size_t samples = kDefaultSamples;
  double inset = kDefaultInset;
  Tolerance tol;
};

/// A thresholded verdict with the numbers behind it.
struct Check {
  bool value = false;
  double residual = 0.0;
  double threshold = 0.0;
};

struct FittedConstants {
  std::optional<double> lambda;  // Lap phi = -lambda phi
  std::optional<double> mu;      // Lap^2 phi = mu phi
  std::optional<double> rho;     // Lap^2 phi = -rho Lap phi
  double c = 0.0;                // mean |dphi|^2
};

/// max - min of the pointwise ratios, where their denominators are usable.
struct RatioSpread {
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> rho;
};

/// Maxima over the samples of identities that must hold on sphere targets.
struct IdentityStats {
  std::optional<double> sphere_identity;   // |<Lap phi, phi> + |dphi|^2|
  std::optional<double> mo;                // ||Lap phi|^2 - m^2|eta|^2 - m^2|
  std::optional<double> eq102_vs_mf;       // |r_102 - r_MF|_inf
  std::optional<double> me1_vs_mf;         // |r_Me1 - r_MF|_inf
  std::optional<double> eta_dot_phi;       // |<eta, phi>|
  std::optional<double> tension_vs_eta;    // |tau - m eta|_inf
};

enum class BiharmonicRoute {
  TensionEquation,  // residual of the unit-sphere biharmonic equation
  Flat,             // Lap^2 phi = 0 for Euclidean targets
  Harmonic,         // harmonic maps are biharmonic
  Unavailable,      // non-unit sphere and not harmonic
};

std::string_view to_string(BiharmonicRoute r);

struct ClassificationReport {
  std::string map_name;
  int dim = 0;
  std::size_t ambient = 0;
  Target target;
  Tolerance tol;

  FittedConstants fitted;
  RatioSpread spread;

  Check isometric;
  Check constant_density;
  Check harmonic;
  std::optional<Check> biharmonic;
  BiharmonicRoute biharmonic_route = BiharmonicRoute::Unavailable;
  std::optional<Check> biharmonic_eq102;
  std::optional<Check> biharmonic_mf;
  std::optional<Check> biharmonic_me1;
  Check eigenmap;
  Check bieigenmap;
  Check buckling;
  bool proper_bieigen = false;

  std::optional<double> eta_norm_min;
  std::optional<double> eta_norm_max;
  IdentityStats identities;

  std::vector<PointAnalysis> samples;

  std::size_t sample_count() const { return samples.size(); }
  bool is_biharmonic() const { return biharmonic && biharmonic->value; }
};

/// Least-squares constants; throws std::invalid_argument on an empty set.
FittedConstants fit_constants(const std::vector<PointAnalysis>& samples);

/// Thresholds every verdict. Fills residual_me1 on the samples when the
/// density is constant.
ClassificationReport verdicts(std::vector<PointAnalysis> samples,
                              const FittedConstants& fitted, const Tolerance& tol);

std::vector<PointAnalysis> analyze_samples(const SphereMap& map,
                                           std::size_t samples, double inset);

/// Sample, analyze, fit and threshold.
ClassificationReport classify(const SphereMap& map, const ClassifyOptions& options = {});

enum class Status { Pass, Fail, NotApplicable };

std::string_view to_string(Status s);

struct TheoremVerdict {
  Status status = Status::NotApplicable;
  std::string reason;
};

enum class Theorem { Takahashi, T1, T2, T3, T4 };

std::string_view to_string(Theorem t);
std::optional<Theorem> theorem_from_name(std::string_view name);

/// Isometric eigenmap into Sphere(r): lambda = m / r^2 and minimal.
TheoremVerdict verify_takahashi(const ClassificationReport& report);
/// Isometric biharmonic bi-eigenmap into S^n: mu = m^2, eta = 0, lambda = m.
TheoremVerdict verify_t1(const ClassificationReport& report);
/// Isometric proper-biharmonic buckling eigenmap: rho = 2m, |eta| = 1.
TheoremVerdict verify_t2(const ClassificationReport& report);
/// Constant-density biharmonic bi-eigenmap: harmonic.
TheoremVerdict verify_t3(const ClassificationReport& report);
/// Constant-density biharmonic buckling eigenmap: harmonic or rho = 2c.
TheoremVerdict verify_t4(const ClassificationReport& report);

TheoremVerdict verify(const ClassificationReport& report, Theorem theorem);

}  // namespace bieigen
