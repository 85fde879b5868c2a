#include "classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace bieigen {

std::string_view to_string(BiharmonicRoute r) {
  switch (r) {
    case BiharmonicRoute::TensionEquation: return "mf";
    case BiharmonicRoute::Flat: return "flat";
    case BiharmonicRoute::Harmonic: return "harmonic";
    case BiharmonicRoute::Unavailable: return "unavailable";
  }
  return "unavailable";
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::NotApplicable: return "NOT_APPLICABLE";
  }
  return "NOT_APPLICABLE";
}

namespace {

constexpr std::array<std::pair<std::string_view, Theorem>, 5> kTheorems{{
    {"takahashi", Theorem::Takahashi},
    {"t1", Theorem::T1},
    {"t2", Theorem::T2},
    {"t3", Theorem::T3},
    {"t4", Theorem::T4},
}};

// Adding +0.0 turns a negative zero into a positive one.
double clean(double v) { return v + 0.0; }

// Running worst case of a pointwise residual against its scale.
struct Accumulator {
  double residual = 0.0;
  double scale = 0.0;

  void add(double r, double s) {
    residual = std::max(residual, r);
    scale = std::max(scale, s);
  }
  Check check(const Tolerance& tol) const {
    const double threshold = tol.bound(scale);
    return {residual < threshold, residual, threshold};
  }
};

void track_spread(std::optional<std::pair<double, double>>& range, double v) {
  if (!range) {
    range.emplace(v, v);
  } else {
    range->first = std::min(range->first, v);
    range->second = std::max(range->second, v);
  }
}

std::optional<double> width(const std::optional<std::pair<double, double>>& range) {
  if (!range) {
    return std::nullopt;
  }
  return range->second - range->first;
}

void track_max(std::optional<double>& slot, double v) {
  slot = slot ? std::max(*slot, v) : v;
}

double diff_sup(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s = std::max(s, std::abs(a[k] - b[k]));
  }
  return s;
}

}  // namespace

std::string_view to_string(Theorem t) {
  for (const auto& [name, th] : kTheorems) {
    if (th == t) {
      return name;
    }
  }
  return "?";
}

std::optional<Theorem> theorem_from_name(std::string_view name) {
  for (const auto& [n, th] : kTheorems) {
    if (n == name) {
      return th;
    }
  }
  return std::nullopt;
}

FittedConstants fit_constants(const std::vector<PointAnalysis>& samples) {
  if (samples.empty()) {
    throw std::invalid_argument("cannot fit constants on an empty sample set");
  }
  double phi_phi = 0.0;
  double lap_phi = 0.0;
  double bilap_phi = 0.0;
  double bilap_lap = 0.0;
  double lap_lap = 0.0;
  double density = 0.0;
  for (const auto& s : samples) {
    phi_phi += dot(s.phi, s.phi);
    lap_phi += dot(s.lap_phi, s.phi);
    bilap_phi += dot(s.bilap_phi, s.phi);
    bilap_lap += dot(s.bilap_phi, s.lap_phi);
    lap_lap += dot(s.lap_phi, s.lap_phi);
    density += s.density;
  }
  FittedConstants f;
  if (phi_phi >= kFitDenominatorFloor) {
    f.lambda = clean(-lap_phi / phi_phi);
    f.mu = clean(bilap_phi / phi_phi);
  }
  if (lap_lap >= kFitDenominatorFloor) {
    f.rho = clean(-bilap_lap / lap_lap);
  }
  f.c = clean(density / static_cast<double>(samples.size()));
  return f;
}

ClassificationReport verdicts(std::vector<PointAnalysis> samples,
                              const FittedConstants& fitted, const Tolerance& tol) {
  if (samples.empty()) {
    throw std::invalid_argument("cannot classify an empty sample set");
  }
  ClassificationReport r;
  r.dim = samples.front().dim;
  r.ambient = samples.front().phi.size();
  r.target = samples.front().target;
  r.tol = tol;
  r.fitted = fitted;

  const double lambda = fitted.lambda.value_or(0.0);
  const double mu = fitted.mu.value_or(0.0);
  const double r2 = r.target.is_sphere() ? r.target.radius * r.target.radius : 1.0;

  double gram = 0.0;
  double density_dev = 0.0;
  Accumulator eigen, bieigen, buckling, harmonic, flat_bih, mf, eq102;
  bool all_eq102 = true;
  std::optional<std::pair<double, double>> lambda_range, mu_range, rho_range;
  std::optional<std::pair<double, double>> eta_range;
  bool all_eta = true;

  for (const auto& s : samples) {
    gram = std::max(gram, s.gram_defect);
    density_dev = std::max(density_dev, std::abs(s.density - fitted.c));
    const double phi_sup = sup_norm(s.phi);
    const double lap_sup = sup_norm(s.lap_phi);
    const double bilap_sup = sup_norm(s.bilap_phi);

    double e = 0.0, b = 0.0, k = 0.0;
    for (std::size_t a = 0; a < s.phi.size(); ++a) {
      e = std::max(e, std::abs(s.lap_phi[a] + lambda * s.phi[a]));
      b = std::max(b, std::abs(s.bilap_phi[a] - mu * s.phi[a]));
      if (fitted.rho) {
        k = std::max(k, std::abs(s.bilap_phi[a] + *fitted.rho * s.lap_phi[a]));
      } else {
        k = std::max(k, std::abs(s.bilap_phi[a]));
      }
      if (std::abs(s.phi[a]) > kRatioDenominatorFloor) {
        track_spread(lambda_range, -s.lap_phi[a] / s.phi[a]);
        track_spread(mu_range, s.bilap_phi[a] / s.phi[a]);
      }
      if (std::abs(s.lap_phi[a]) > kRatioDenominatorFloor) {
        track_spread(rho_range, -s.bilap_phi[a] / s.lap_phi[a]);
      }
    }
    eigen.add(e, std::max(lap_sup, std::abs(lambda) * phi_sup));
    bieigen.add(b, std::max(bilap_sup, std::abs(mu) * phi_sup));
    buckling.add(k, std::max(bilap_sup, std::abs(fitted.rho.value_or(0.0)) * lap_sup));
    harmonic.add(sup_norm(s.tension),
                 r.target.is_sphere() ? std::max(lap_sup, s.density / r2 * phi_sup) : lap_sup);
    flat_bih.add(bilap_sup, bilap_sup);
    if (s.residual_mf) {
      mf.add(sup_norm(*s.residual_mf), mf_scale(s));
    }
    if (s.residual_eq102) {
      eq102.add(sup_norm(*s.residual_eq102), eq102_scale(s));
    } else {
      all_eq102 = false;
    }
    if (s.eta) {
      track_spread(eta_range, norm(*s.eta));
    } else {
      all_eta = false;
    }
  }

  r.isometric = {gram <= kIsometryTol, gram, kIsometryTol};
  const double density_bound = tol.bound(std::abs(fitted.c));
  r.constant_density = {density_dev < density_bound, density_dev, density_bound};
  r.harmonic = harmonic.check(tol);
  r.eigenmap = fitted.lambda ? eigen.check(tol) : Check{false, 0.0, 0.0};
  r.bieigenmap = fitted.mu ? bieigen.check(tol) : Check{false, 0.0, 0.0};
  // With Lap phi = 0 everywhere the buckling equation reduces to Lap^2 phi = 0
  // and holds for every rho; rho_hat then stays undetermined.
  r.buckling = buckling.check(tol);
  r.proper_bieigen = r.bieigenmap.value && !r.eigenmap.value;

  if (r.target.is_unit_sphere()) {
    r.biharmonic_mf = mf.check(tol);
    if (all_eq102) {
      r.biharmonic_eq102 = eq102.check(tol);
    }
    if (r.constant_density.value) {
      Accumulator me1;
      for (auto& s : samples) {
        s.residual_me1 = me1_residual(s, fitted.c);
        me1.add(sup_norm(*s.residual_me1), me1_scale(s, fitted.c));
      }
      r.biharmonic_me1 = me1.check(tol);
    }
    r.biharmonic = r.biharmonic_mf;
    r.biharmonic_route = BiharmonicRoute::TensionEquation;
  } else if (!r.target.is_sphere()) {
    r.biharmonic = flat_bih.check(tol);
    r.biharmonic_route = BiharmonicRoute::Flat;
  } else if (r.harmonic.value) {
    r.biharmonic = r.harmonic;
    r.biharmonic_route = BiharmonicRoute::Harmonic;
  }

  r.spread = {width(lambda_range), width(mu_range), width(rho_range)};
  if (all_eta && eta_range) {
    r.eta_norm_min = eta_range->first;
    r.eta_norm_max = eta_range->second;
  }

  IdentityStats& id = r.identities;
  const double m = r.dim;
  for (const auto& s : samples) {
    if (s.target.is_sphere()) {
      track_max(id.sphere_identity, std::abs(s.sphere_identity));
    }
    if (s.eta) {
      const double eta2 = dot(*s.eta, *s.eta);
      track_max(id.mo, std::abs(dot(s.lap_phi, s.lap_phi) - m * m * eta2 - m * m));
      track_max(id.eta_dot_phi, std::abs(dot(*s.eta, s.phi)));
      Vec m_eta = *s.eta;
      for (auto& v : m_eta) {
        v *= m;
      }
      track_max(id.tension_vs_eta, diff_sup(s.tension, m_eta));
    }
    if (s.residual_eq102 && s.residual_mf) {
      track_max(id.eq102_vs_mf, diff_sup(*s.residual_eq102, *s.residual_mf));
    }
    if (s.residual_me1 && s.residual_mf) {
      track_max(id.me1_vs_mf, diff_sup(*s.residual_me1, *s.residual_mf));
    }
  }

  r.samples = std::move(samples);
  return r;
}

std::vector<PointAnalysis> analyze_samples(const SphereMap& map, std::size_t samples,
                                           double inset) {
  const auto points = sample_points(map.chart(), samples, inset);
  return parallel_map(points.size(),
                      [&](std::size_t i) { return analyze_point(map, points[i]); });
}

ClassificationReport classify(const SphereMap& map, const ClassifyOptions& options) {
  auto samples = analyze_samples(map, options.samples, options.inset);
  const auto fitted = fit_constants(samples);
  auto report = verdicts(std::move(samples), fitted, options.tol);
  report.map_name = map.name();
  return report;
}

namespace {

TheoremVerdict not_applicable(std::vector<std::string> unmet) {
  std::string reason = "unmet precondition: ";
  for (std::size_t i = 0; i < unmet.size(); ++i) {
    reason += (i ? ", " : "") + unmet[i];
  }
  return {Status::NotApplicable, reason};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

TheoremVerdict verify_takahashi(const ClassificationReport& r) {
  std::vector<std::string> unmet;
  if (!r.target.is_sphere()) unmet.push_back("sphere target");
  if (!r.isometric.value) unmet.push_back("isometric");
  if (!r.eigenmap.value) unmet.push_back("eigenmap");
  if (!unmet.empty()) {
    return not_applicable(unmet);
  }
  const double expected = r.dim / (r.target.radius * r.target.radius);
  const double dev = std::abs(*r.fitted.lambda - expected);
  const bool lambda_ok = dev <= r.tol.bound(expected);
  std::string reason = "lambda_hat = " + fmt(*r.fitted.lambda) + ", m/r^2 = " + fmt(expected);
  if (!lambda_ok) {
    return {Status::Fail, reason + " (deviation " + fmt(dev) + ")"};
  }
  if (!r.harmonic.value) {
    return {Status::Fail, reason + "; not minimal in the sphere (tension " +
                              fmt(r.harmonic.residual) + ")"};
  }
  return {Status::Pass, reason + "; minimal in the sphere"};
}

TheoremVerdict verify_t1(const ClassificationReport& r) {
  std::vector<std::string> unmet;
  if (!r.target.is_unit_sphere()) unmet.push_back("unit-sphere target");
  if (!r.isometric.value) unmet.push_back("isometric");
  if (!r.is_biharmonic()) unmet.push_back("biharmonic");
  if (!r.bieigenmap.value) unmet.push_back("bi-eigenmap");
  if (!unmet.empty()) {
    return not_applicable(unmet);
  }
  const double m = r.dim;
  const double dev = std::abs(*r.fitted.mu - m * m);
  std::string reason = "mu_hat = " + fmt(*r.fitted.mu) + ", m^2 = " + fmt(m * m);
  if (dev > r.tol.bound(m * m)) {
    return {Status::Fail, reason + " (deviation " + fmt(dev) + ")"};
  }
  const double eta = r.eta_norm_max.value_or(std::numeric_limits<double>::infinity());
  if (!(eta <= r.tol.bound(1.0))) {
    return {Status::Fail, reason + "; not minimal (max |eta| = " + fmt(eta) + ")"};
  }
  if (!r.eigenmap.value || std::abs(*r.fitted.lambda - m) > r.tol.bound(m)) {
    return {Status::Fail, reason + "; not an eigenmap with lambda = m"};
  }
  return {Status::Pass, reason + "; minimal, eigenmap with lambda_hat = " +
                            fmt(*r.fitted.lambda)};
}

TheoremVerdict verify_t2(const ClassificationReport& r) {
  std::vector<std::string> unmet;
  if (!r.target.is_unit_sphere()) unmet.push_back("unit-sphere target");
  if (!r.isometric.value) unmet.push_back("isometric");
  if (!r.is_biharmonic()) unmet.push_back("biharmonic");
  if (!r.buckling.value) unmet.push_back("buckling eigenmap");
  if (r.harmonic.value) unmet.push_back("non-harmonic");
  if (!unmet.empty()) {
    return not_applicable(unmet);
  }
  const double m = r.dim;
  if (!r.fitted.rho) {
    return {Status::Fail, "rho_hat undetermined"};
  }
  const double dev = std::abs(*r.fitted.rho - 2.0 * m);
  std::string reason = "rho_hat = " + fmt(*r.fitted.rho) + ", 2m = " + fmt(2.0 * m);
  if (dev > r.tol.bound(2.0 * m)) {
    return {Status::Fail, reason + " (deviation " + fmt(dev) + ")"};
  }
  if (!r.eta_norm_min || !r.eta_norm_max) {
    return {Status::Fail, reason + "; mean curvature unavailable"};
  }
  const double eta_dev =
      std::max(std::abs(*r.eta_norm_max - 1.0), std::abs(*r.eta_norm_min - 1.0));
  if (eta_dev > r.tol.bound(1.0)) {
    return {Status::Fail, reason + "; |eta| deviates from 1 by " + fmt(eta_dev)};
  }
  return {Status::Pass, reason + "; |eta| = 1"};
}

TheoremVerdict verify_t3(const ClassificationReport& r) {
  std::vector<std::string> unmet;
  if (!r.target.is_unit_sphere()) unmet.push_back("unit-sphere target");
  if (!r.constant_density.value) unmet.push_back("constant energy density");
  if (!r.is_biharmonic()) unmet.push_back("biharmonic");
  if (!r.bieigenmap.value) unmet.push_back("bi-eigenmap");
  if (!unmet.empty()) {
    return not_applicable(unmet);
  }
  if (!r.harmonic.value) {
    return {Status::Fail, "not harmonic (tension " + fmt(r.harmonic.residual) + ")"};
  }
  return {Status::Pass, "harmonic (tension " + fmt(r.harmonic.residual) + ")"};
}

TheoremVerdict verify_t4(const ClassificationReport& r) {
  std::vector<std::string> unmet;
  if (!r.target.is_unit_sphere()) unmet.push_back("unit-sphere target");
  if (!r.constant_density.value) unmet.push_back("constant energy density");
  if (!r.is_biharmonic()) unmet.push_back("biharmonic");
  if (!r.buckling.value) unmet.push_back("buckling eigenmap");
  if (!unmet.empty()) {
    return not_applicable(unmet);
  }
  if (r.harmonic.value) {
    return {Status::Pass, "harmonic (tension " + fmt(r.harmonic.residual) + ")"};
  }
  const double two_c = 2.0 * r.fitted.c;
  if (!r.fitted.rho) {
    return {Status::Fail, "not harmonic and rho_hat undetermined"};
  }
  const double dev = std::abs(*r.fitted.rho - two_c);
  std::string reason = "rho_hat = " + fmt(*r.fitted.rho) + ", 2c = " + fmt(two_c);
  if (dev > r.tol.bound(two_c)) {
    return {Status::Fail, "not harmonic and " + reason + " (deviation " + fmt(dev) + ")"};
  }
  return {Status::Pass, reason};
}

TheoremVerdict verify(const ClassificationReport& report, Theorem theorem) {
  switch (theorem) {
    case Theorem::Takahashi: return verify_takahashi(report);
    case Theorem::T1: return verify_t1(report);
    case Theorem::T2: return verify_t2(report);
    case Theorem::T3: return verify_t3(report);
    case Theorem::T4: return verify_t4(report);
  }
  return {};
}

}  // namespace bieigen
