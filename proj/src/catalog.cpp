#include "catalog.hpp"

#include <cmath>

namespace bieigen {

std::string_view to_string(Source s) {
  switch (s) {
    case Source::Published: return "published";
    case Source::Derived: return "derived";
    case Source::Elementary: return "elementary";
  }
  return "elementary";
}

namespace {

constexpr Source P = Source::Published;
constexpr Source D = Source::Derived;
constexpr Source E = Source::Elementary;

constexpr Status PASS = Status::Pass;
constexpr Status NA = Status::NotApplicable;

Manifest circle_manifest(std::string name, std::string period,
                         std::vector<std::string> components, double radius = 1.0) {
  Manifest m;
  m.name = std::move(name);
  m.params = {"t"};
  m.domain = {{0.0, std::move(period)}};
  m.periodic = {true};
  m.metric_mode = MetricMode::Explicit;
  m.metric_upper = {{"1"}};
  m.target = TargetKind::Sphere;
  m.radius = radius;
  m.components = std::move(components);
  return m;
}

Manifest torus_manifest(std::string name, std::string period,
                        std::vector<std::string> components) {
  Manifest m;
  m.name = std::move(name);
  m.params = {"u", "v"};
  m.domain = {{0.0, period}, {0.0, period}};
  m.periodic = {true, true};
  m.metric_mode = MetricMode::Explicit;
  m.metric_upper = {{"1", "0"}, {"1"}};
  m.target = TargetKind::Sphere;
  m.components = std::move(components);
  return m;
}

std::vector<ExpectedVerdict> flags(Source s, bool isometric, bool constant_density,
                                   bool harmonic, bool biharmonic, bool eigen,
                                   bool bieigen, bool buckling) {
  return {{"is_isometric", isometric, s},
          {"is_constant_density", constant_density, s},
          {"is_harmonic", harmonic, s},
          {"is_biharmonic", biharmonic, s},
          {"is_eigenmap", eigen, s},
          {"is_bieigenmap", bieigen, s},
          {"is_buckling", buckling, s},
          {"is_proper_bieigen", bieigen && !eigen, s}};
}

std::vector<ExpectedStatus> statuses(Source s, Status takahashi, Status t1, Status t2,
                                     Status t3, Status t4) {
  return {{Theorem::Takahashi, takahashi, s},
          {Theorem::T1, t1, s},
          {Theorem::T2, t2, s},
          {Theorem::T3, t3, s},
          {Theorem::T4, t4, s}};
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;

  out.push_back({
      "great_circle_S2",
      circle_manifest("great_circle_S2", "2*pi", {"cos(t)", "sin(t)", "0"}),
      "Unit-speed equator of S^2. Totally geodesic, hence harmonic and "
      "biharmonic, with Lap phi = -phi.",
      {{"lambda_hat", 1.0, E}, {"mu_hat", 1.0, E}, {"rho_hat", 1.0, E},
       {"c_hat", 1.0, E}, {"eta_norm", 0.0, E}},
      flags(E, true, true, true, true, true, true, true),
      statuses(E, PASS, PASS, NA, PASS, PASS),
  });

  out.push_back({
      "small_circle_S2",
      circle_manifest("small_circle_S2", "pi*sqrt(2)",
                      {"cos(sqrt(2)*t)/sqrt(2)", "sin(sqrt(2)*t)/sqrt(2)", "1/sqrt(2)"}),
      "The circle of radius 1/sqrt(2) at height 1/sqrt(2): a minimal circle in "
      "S^1(1/sqrt(2)) composed with the inclusion into S^2. Proper biharmonic "
      "buckling eigenmap with rho = 2m = 2 and |eta| = 1; the m = 1 case of the "
      "composition construction.",
      {{"lambda_hat", 1.0, D}, {"mu_hat", 2.0, D}, {"rho_hat", 2.0, P},
       {"c_hat", 1.0, E}, {"eta_norm", 1.0, P}},
      flags(P, true, true, false, true, false, false, true),
      statuses(P, NA, NA, PASS, NA, PASS),
  });

  out.push_back({
      "clifford_torus_S3",
      torus_manifest("clifford_torus_S3", "pi*sqrt(2)",
                     {"cos(sqrt(2)*u)/sqrt(2)", "sin(sqrt(2)*u)/sqrt(2)",
                      "cos(sqrt(2)*v)/sqrt(2)", "sin(sqrt(2)*v)/sqrt(2)"}),
      "Minimal Clifford torus S^1(1/sqrt(2)) x S^1(1/sqrt(2)) in S^3 in a "
      "flat unit-speed chart. Isometric eigenmap with lambda = m = 2.",
      {{"lambda_hat", 2.0, D}, {"mu_hat", 4.0, D}, {"rho_hat", 2.0, D},
       {"c_hat", 2.0, D}, {"eta_norm", 0.0, D}},
      flags(D, true, true, true, true, true, true, true),
      statuses(D, PASS, PASS, NA, PASS, PASS),
  });

  {
    auto m = torus_manifest("clifford_comp_S4", "pi",
                            {"cos(2*u)/2", "sin(2*u)/2", "cos(2*v)/2", "sin(2*v)/2",
                             "1/sqrt(2)"});
    out.push_back({
        "clifford_comp_S4",
        std::move(m),
        "The minimal Clifford torus of S^3(1/sqrt(2)) placed at height "
        "1/sqrt(2) in S^4. Proper biharmonic buckling eigenmap with "
        "rho = 2m = 4 and |eta| = 1; the m = 2 case of the composition "
        "construction.",
        {{"lambda_hat", 2.0, D}, {"mu_hat", 8.0, D}, {"rho_hat", 4.0, D},
         {"c_hat", 2.0, D}, {"eta_norm", 1.0, D}},
        flags(D, true, true, false, true, false, false, true),
        statuses(D, NA, NA, PASS, NA, PASS),
    });
  }

  out.push_back({
      "kfold_equator_S2",
      circle_manifest("kfold_equator_S2", "2*pi", {"cos(3*t)", "sin(3*t)", "0"}),
      "The equator wrapped three times. Harmonic with constant density 9 but "
      "not isometric.",
      {{"lambda_hat", 9.0, D}, {"mu_hat", 81.0, D}, {"rho_hat", 9.0, D},
       {"c_hat", 9.0, D}, {"eta_norm", std::nullopt, E}},
      flags(D, false, true, true, true, true, true, true),
      statuses(D, NA, NA, NA, PASS, PASS),
  });

  out.push_back({
      "nonisometric_buckling_S2",
      circle_manifest("nonisometric_buckling_S2", "2*pi",
                      {"cos(3*t)/sqrt(2)", "sin(3*t)/sqrt(2)", "1/sqrt(2)"}),
      "The small circle at height 1/sqrt(2) traversed three times at constant "
      "density 9/2. Not isometric, proper biharmonic buckling eigenmap with "
      "rho = 2c = 9.",
      {{"lambda_hat", 4.5, D}, {"mu_hat", 40.5, D}, {"rho_hat", 9.0, D},
       {"c_hat", 4.5, D}, {"eta_norm", std::nullopt, E}},
      flags(D, false, true, false, true, false, false, true),
      statuses(D, NA, NA, NA, NA, PASS),
  });

  {
    Manifest m;
    m.name = "round_sphere_chart_S2_in_R3";
    m.params = {"theta", "ph"};
    m.domain = {{0.0, "pi"}, {0.0, "2*pi"}};
    m.periodic = {false, true};
    m.metric_mode = MetricMode::Induced;
    m.immersion = {"sin(theta)*cos(ph)", "sin(theta)*sin(ph)", "cos(theta)"};
    m.target = TargetKind::Sphere;
    m.components = m.immersion;
    out.push_back({
        "round_sphere_chart_S2_in_R3",
        std::move(m),
        "Identity of S^2 in spherical coordinates with the induced metric "
        "diag(1, sin^2 theta). Coordinate functions are first spherical "
        "harmonics, Lap phi = -2 phi.",
        {{"lambda_hat", 2.0, D}, {"mu_hat", 4.0, D}, {"rho_hat", 2.0, D},
         {"c_hat", 2.0, D}, {"eta_norm", 0.0, D}},
        flags(D, true, true, true, true, true, true, true),
        statuses(D, PASS, PASS, NA, PASS, PASS),
    });
  }

  out.push_back({
      "constant_map",
      circle_manifest("constant_map", "2*pi", {"0", "0", "1"}),
      "Constant map to the north pole. Every equation holds trivially; "
      "rho is undetermined and the map is not isometric.",
      {{"lambda_hat", 0.0, E}, {"mu_hat", 0.0, E}, {"rho_hat", std::nullopt, E},
       {"c_hat", 0.0, E}, {"eta_norm", std::nullopt, E}},
      flags(E, false, true, true, true, true, true, true),
      statuses(E, NA, NA, NA, PASS, PASS),
  });

  out.push_back({
      "factor_circle_S1",
      circle_manifest("factor_circle_S1", "pi*sqrt(2)",
                      {"cos(sqrt(2)*t)/sqrt(2)", "sin(sqrt(2)*t)/sqrt(2)"},
                      1.0 / std::sqrt(2.0)),
      "Unit-speed parametrization of the circle S^1(1/sqrt(2)) as a map into "
      "itself. Minimal with lambda = m / r^2 = 2; the non-unit radius leaves "
      "only the Takahashi check applicable.",
      {{"lambda_hat", 2.0, D}, {"mu_hat", 4.0, D}, {"rho_hat", 2.0, D},
       {"c_hat", 1.0, D}, {"eta_norm", std::nullopt, E}},
      flags(D, true, true, true, true, true, true, true),
      statuses(D, PASS, NA, NA, NA, NA),
  });

  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry* catalog_find(std::string_view name) {
  for (const auto& e : catalog_list()) {
    if (e.name == name) {
      return &e;
    }
  }
  return nullptr;
}

}  // namespace bieigen
