#include "map_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace bieigen {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

double sup_norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) {
    s = std::max(s, std::abs(v));
  }
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SphereMap::SphereMap(std::string name, Chart chart, Target target,
                     std::vector<Expr> components)
    : name_(std::move(name)),
      chart_(std::move(chart)),
      target_(target),
      components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("map needs at least one component");
  }
  if (target_.is_sphere() && !(target_.radius > 0.0 && std::isfinite(target_.radius))) {
    throw std::invalid_argument("sphere radius must be positive and finite");
  }
  for (const auto& c : components_) {
    compiled_.push_back(chart_.bind(c));
  }
}

std::vector<Jet> SphereMap::component_jets(std::span<const Jet> coords) const {
  std::vector<Jet> out;
  out.reserve(compiled_.size());
  for (const auto& c : compiled_) {
    out.push_back(c.eval(coords));
  }
  return out;
}

Vec SphereMap::values(std::span<const double> p) const {
  Vec out;
  out.reserve(compiled_.size());
  for (const auto& c : compiled_) {
    out.push_back(c.eval(p));
  }
  return out;
}

namespace {

std::vector<double> to_vector(std::span<const double> p) { return {p.begin(), p.end()}; }

void check_sphere_constraint(const Target& target, const Vec& phi,
                             std::span<const double> p) {
  if (!target.is_sphere()) {
    return;
  }
  const double r2 = target.radius * target.radius;
  const double dev = dot(phi, phi) - r2;
  if (!(std::abs(dev) <= kSphereConstraintTol)) {
    throw EvaluationError(to_vector(p), "map leaves the target sphere (|phi|^2 - r^2 = " +
                                            std::to_string(dev) + ")");
  }
}

// Jets of phi and its frame, evaluated with domain errors tied to the point.
struct Evaluated {
  MetricFrame frame;
  std::vector<Jet> phi;
};

Evaluated evaluate(const SphereMap& map, std::span<const double> p, int order) {
  Evaluated ev{map.chart().metric_frame(p, order - 1), {}};
  try {
    const auto u = map.chart().coordinates(p, order);
    ev.phi = map.component_jets(u);
  } catch (const DomainError& e) {
    throw EvaluationError(to_vector(p), e.what());
  }
  return ev;
}

Jet density_jet(const MetricFrame& frame, const std::vector<std::vector<Jet>>& dphi) {
  const int m = frame.dim;
  const int order = dphi[0][0].order();
  Jet density = Jet::constant(0.0, order, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Jet inner = dphi[i][0] * dphi[j][0];
      for (std::size_t a = 1; a < dphi[i].size(); ++a) {
        inner += dphi[i][a] * dphi[j][a];
      }
      density += frame.inverse(i, j).truncated(order) * inner;
    }
  }
  return density;
}

Vec tension_from(const Target& target, const Vec& lap, const Vec& phi, double density) {
  Vec tau = lap;
  if (target.is_sphere()) {
    const double k = density / (target.radius * target.radius);
    for (std::size_t a = 0; a < tau.size(); ++a) {
      tau[a] += k * phi[a];
    }
  }
  return tau;
}

}  // namespace

PointAnalysis analyze_point(const SphereMap& map, std::span<const double> p) {
  const int m = map.dimension();
  const std::size_t n = map.ambient();
  const Evaluated ev = evaluate(map, p, 4);
  const MetricFrame& frame = ev.frame;

  PointAnalysis a;
  a.point = to_vector(p);
  a.dim = m;
  a.target = map.target();

  std::vector<Jet> lap;
  lap.reserve(n);
  for (const auto& phi : ev.phi) {
    a.phi.push_back(phi.value());
    lap.push_back(laplace_beltrami(frame, phi));
    a.lap_phi.push_back(lap.back().value());
    a.bilap_phi.push_back(laplace_beltrami(frame, lap.back()).value());
  }
  check_sphere_constraint(a.target, a.phi, p);

  std::vector<std::vector<Jet>> dphi(m);
  for (int i = 0; i < m; ++i) {
    for (const auto& phi : ev.phi) {
      dphi[i].push_back(phi.derivative(i));
    }
  }
  const Jet density = density_jet(frame, dphi);
  a.density = density.value();
  a.lap_density = laplace_beltrami(frame, density).value();
  a.grad_density = gradient_pushforward(frame, density, ev.phi);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double inner = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        inner += lap[k][1 + i] * ev.phi[k][1 + j];
      }
      a.grad_lap_dot += frame.inverse(i, j).value() * inner;
    }
  }
  a.div_theta = dot(a.lap_phi, a.lap_phi) + a.grad_lap_dot;

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double gram = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        gram += dphi[i][k].value() * dphi[j][k].value();
      }
      a.gram_defect = std::max(a.gram_defect, std::abs(frame.metric(i, j).value() - gram));
    }
  }

  a.tension = tension_from(a.target, a.lap_phi, a.phi, a.density);

  if (a.target.is_sphere()) {
    // 0 = Lap |phi|^2 / 2 = <Lap phi, phi> + |dphi|^2 on any sphere.
    a.sphere_identity = dot(a.lap_phi, a.phi) + a.density;
    if (!(std::abs(a.sphere_identity) <= kSphereIdentityTol * std::max(1.0, a.density))) {
      throw EvaluationError(a.point, "self-check <Lap phi, phi> = -|dphi|^2 failed (defect " +
                                         std::to_string(a.sphere_identity) + ")");
    }
  }

  if (a.target.is_unit_sphere() && a.isometric()) {
    Vec eta(n);
    for (std::size_t k = 0; k < n; ++k) {
      eta[k] = (a.lap_phi[k] + m * a.phi[k]) / m;
    }
    const double tangency = dot(eta, a.phi);
    if (!(std::abs(tangency) <= kTangencyTol)) {
      throw EvaluationError(a.point, "mean curvature is not tangent to the sphere (<eta, phi> = " +
                                         std::to_string(tangency) + ")");
    }
    a.eta = std::move(eta);
  }

  a.residual_eq102 = eq102_residual(a);
  a.residual_mf = mf_residual(a);
  return a;
}

std::optional<Vec> eq102_residual(const PointAnalysis& a) {
  if (!a.target.is_unit_sphere() || !a.isometric()) {
    return std::nullopt;
  }
  const double m = a.dim;
  const double coef = 2.0 * m * m - dot(a.lap_phi, a.lap_phi);
  Vec r(a.phi.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = a.bilap_phi[k] + 2.0 * m * a.lap_phi[k] + coef * a.phi[k];
  }
  return r;
}

double eq102_scale(const PointAnalysis& a) {
  const double m = a.dim;
  const double coef = 2.0 * m * m - dot(a.lap_phi, a.lap_phi);
  return std::max({sup_norm(a.bilap_phi), 2.0 * m * sup_norm(a.lap_phi),
                   std::abs(coef) * sup_norm(a.phi), 2.0 * m * m * sup_norm(a.phi)});
}

std::optional<Vec> mf_residual(const PointAnalysis& a) {
  if (!a.target.is_unit_sphere()) {
    return std::nullopt;
  }
  const double e = a.density;
  const double coef = a.lap_density + 2.0 * a.div_theta - dot(a.lap_phi, a.lap_phi) +
                      2.0 * e * e;
  Vec r(a.phi.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = a.bilap_phi[k] + 2.0 * e * a.lap_phi[k] + coef * a.phi[k] +
           2.0 * a.grad_density[k];
  }
  return r;
}

double mf_scale(const PointAnalysis& a) {
  const double e = a.density;
  const double lap2 = dot(a.lap_phi, a.lap_phi);
  const double coef_scale =
      std::max({std::abs(a.lap_density), 2.0 * std::abs(a.div_theta), lap2, 2.0 * e * e});
  return std::max({sup_norm(a.bilap_phi), 2.0 * e * sup_norm(a.lap_phi),
                   coef_scale * sup_norm(a.phi), 2.0 * sup_norm(a.grad_density)});
}

std::optional<Vec> me1_residual(const PointAnalysis& a, double c) {
  if (!a.target.is_unit_sphere()) {
    return std::nullopt;
  }
  const double coef = 2.0 * c * c - dot(a.bilap_phi, a.phi);
  Vec r(a.phi.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] = a.bilap_phi[k] + 2.0 * c * a.lap_phi[k] + coef * a.phi[k];
  }
  return r;
}

double me1_scale(const PointAnalysis& a, double c) {
  const double coef = std::max(2.0 * c * c, std::abs(dot(a.bilap_phi, a.phi)));
  return std::max({sup_norm(a.bilap_phi), 2.0 * std::abs(c) * sup_norm(a.lap_phi),
                   coef * sup_norm(a.phi)});
}

double energy_density(const SphereMap& map, std::span<const double> p) {
  return analyze_point(map, p).density;
}

Vec tension_field(const SphereMap& map, std::span<const double> p) {
  return analyze_point(map, p).tension;
}

std::optional<Vec> mean_curvature(const SphereMap& map, std::span<const double> p) {
  return analyze_point(map, p).eta;
}

std::optional<Vec> residual_eq102(const SphereMap& map, std::span<const double> p) {
  return analyze_point(map, p).residual_eq102;
}

std::optional<Vec> residual_mf(const SphereMap& map, std::span<const double> p) {
  return analyze_point(map, p).residual_mf;
}

std::optional<Vec> residual_me1(const SphereMap& map, std::span<const double> p,
                                double c) {
  return me1_residual(analyze_point(map, p), c);
}

double bienergy_quadrature(const SphereMap& map, std::size_t grid) {
  if (grid == 0) {
    throw std::invalid_argument("bienergy grid must be positive");
  }
  const Chart& chart = map.chart();
  const int m = chart.dimension();
  std::size_t total = 1;
  double cell = 1.0;
  for (const auto& iv : chart.domain()) {
    total *= grid;
    cell *= iv.length() / static_cast<double>(grid);
  }

  // Only tau is needed, so order-2 jets suffice here.
  const auto integrand = [&](std::size_t n) {
    std::vector<double> p(m);
    std::size_t rest = n;
    for (int i = m - 1; i >= 0; --i) {
      const auto& iv = chart.domain()[i];
      const double h = iv.length() / static_cast<double>(grid);
      p[i] = iv.lo + (static_cast<double>(rest % grid) + 0.5) * h;
      rest /= grid;
    }
    const Evaluated ev = evaluate(map, p, 2);
    Vec phi;
    Vec lap;
    for (const auto& c : ev.phi) {
      phi.push_back(c.value());
      lap.push_back(laplace_beltrami(ev.frame, c).value());
    }
    check_sphere_constraint(map.target(), phi, p);
    double density = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double inner = 0.0;
        for (const auto& c : ev.phi) {
          inner += c[1 + i] * c[1 + j];
        }
        density += ev.frame.inverse(i, j).value() * inner;
      }
    }
    const Vec tau = tension_from(map.target(), lap, phi, density);
    return 0.5 * dot(tau, tau) * ev.frame.sqrt_det.value();
  };

  const auto values = parallel_map(total, integrand);
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  return sum * cell;
}

}  // namespace bieigen
