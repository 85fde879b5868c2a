// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "fd_geometry.hpp"
#include "report.hpp"

using namespace bieigen;

namespace {

constexpr double kConstTol = 1e-8;
constexpr double kResidualTol = 1e-8;
constexpr double kHarmonicTol = 1e-9;
constexpr double kIdentityTol = 1e-9;
constexpr double kMoTol = 1e-8;
constexpr double kAgreementTol = 1e-7;
constexpr double kFdRel = 1e-6;
constexpr double kBienergyZero = 1e-10;
constexpr double kBienergyTol = 1e-9;

// Collects failures of one criterion.
class Criterion {
public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) {
      failures_.push_back(what);
    }
    failed_ = failed_ || !ok;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(17);
    s << what << " = " << got << ", expected " << want << " within " << tol;
    expect(std::abs(got - want) < tol, s.str());
  }
  void below(double got, double tol, const std::string& what) {
    std::ostringstream s;
    s.precision(17);
    s << what << " = " << got << ", bound " << tol;
    expect(std::abs(got) < tol, s.str());
  }
  void note(const std::string& text) { notes_.push_back(text); }

  bool failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

private:
  bool failed_ = false;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

ClassificationReport classify_entry(const std::string& name) {
  return classify(build_map(catalog_find(name)->manifest));
}

double opt_value(Criterion& c, const std::optional<double>& v, const std::string& what) {
  c.expect(v.has_value(), what + " is null");
  return v.value_or(std::nan(""));
}

void example_m1(Criterion& c) {
  const auto r = classify_entry("small_circle_S2");
  for (const auto& a : r.samples) {
    Vec d(a.phi.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      d[i] = a.bilap_phi[i] + 2 * a.lap_phi[i];
    }
    c.below(sup_norm(d), kResidualTol, "|Lap^2 phi + 2 Lap phi|");
    c.expect(a.residual_eq102.has_value(), "eq102 residual unavailable");
    if (a.residual_eq102) {
      c.below(sup_norm(*a.residual_eq102), kResidualTol, "eq102 residual");
    }
  }
  c.near(opt_value(c, r.fitted.rho, "rho_hat"), 2.0, kConstTol, "rho_hat");
  c.expect(!r.eigenmap.value, "eigenmap verdict is true");
  c.near(opt_value(c, r.eta_norm_min, "min |eta|"), 1.0, kConstTol, "min |eta|");
  c.near(opt_value(c, r.eta_norm_max, "max |eta|"), 1.0, kConstTol, "max |eta|");
  const auto v = verify_t2(r);
  c.expect(v.status == Status::Pass, "t2: " + std::string(to_string(v.status)) + " " + v.reason);
}

void example_m2(Criterion& c) {
  const auto r = classify_entry("clifford_comp_S4");
  c.near(opt_value(c, r.fitted.rho, "rho_hat"), 4.0, kConstTol, "rho_hat");
  c.near(opt_value(c, r.eta_norm_min, "min |eta|"), 1.0, kConstTol, "min |eta|");
  c.near(opt_value(c, r.eta_norm_max, "max |eta|"), 1.0, kConstTol, "max |eta|");
  const auto v = verify_t2(r);
  c.expect(v.status == Status::Pass, "t2: " + std::string(to_string(v.status)) + " " + v.reason);
}

void takahashi(Criterion& c) {
  for (const char* name : {"great_circle_S2", "clifford_torus_S3", "factor_circle_S1"}) {
    const auto r = classify_entry(name);
    const double want = r.dim / (r.target.radius * r.target.radius);
    c.near(opt_value(c, r.fitted.lambda, "lambda_hat"), want, kConstTol,
           std::string(name) + " lambda_hat");
    const auto v = verify_takahashi(r);
    c.expect(v.status == Status::Pass, std::string(name) + " takahashi: " + v.reason);
  }
}

void t1_branch(Criterion& c) {
  int covered = 0;
  for (const auto& e : catalog_list()) {
    const auto r = classify(build_map(e.manifest));
    if (!(r.is_biharmonic() && r.bieigenmap.value)) {
      continue;
    }
    // The identities below are the conclusion of T1, whose hypotheses are an
    // isometric immersion into the unit sphere.
    if (!(r.isometric.value && r.target.is_unit_sphere())) {
      c.note(e.name + " outside T1 hypotheses (" +
             (r.isometric.value ? "target" : "not isometric") + ")");
      continue;
    }
    ++covered;
    const double m = r.dim;
    c.near(opt_value(c, r.fitted.mu, e.name + " mu_hat"), m * m, kConstTol, e.name + " mu_hat");
    c.below(opt_value(c, r.eta_norm_max, e.name + " max |eta|"), kConstTol, e.name + " max |eta|");
    c.near(opt_value(c, r.fitted.lambda, e.name + " lambda_hat"), m, kConstTol,
           e.name + " lambda_hat");
    c.expect(verify_t1(r).status == Status::Pass, e.name + " t1 not PASS");
  }
  c.expect(covered >= 3, "fewer than three entries exercised");
  c.note(std::to_string(covered) + " entries checked");
}

void t3_t4_branches(Criterion& c) {
  const auto kfold = classify_entry("kfold_equator_S2");
  const auto v3 = verify_t3(kfold);
  c.expect(v3.status == Status::Pass, "kfold t3: " + v3.reason);
  c.expect(kfold.harmonic.value, "kfold not harmonic");
  double tau = 0.0;
  for (const auto& a : kfold.samples) {
    tau = std::max(tau, sup_norm(a.tension));
  }
  c.below(tau, kHarmonicTol, "kfold max |tau|");

  const auto buckling = classify_entry("nonisometric_buckling_S2");
  const auto v4 = verify_t4(buckling);
  c.expect(v4.status == Status::Pass, "buckling t4: " + v4.reason);
  c.near(opt_value(c, buckling.fitted.rho, "rho_hat"), 2 * buckling.fitted.c, kConstTol,
         "rho_hat - 2 c_hat");
}

void identity_suite(Criterion& c) {
  std::size_t points = 0;
  for (const auto& e : catalog_list()) {
    const SphereMap map = build_map(e.manifest);
    if (!map.target().is_unit_sphere()) {
      continue;
    }
    const auto r = classify(map);
    const double m = map.dimension();
    for (const auto& a : r.samples) {
      ++points;
      c.below(a.sphere_identity, kIdentityTol, e.name + " <Lap phi, phi> + |dphi|^2");
      if (r.isometric.value && a.eta) {
        const double lap_sq = dot(a.lap_phi, a.lap_phi);
        c.below(lap_sq - m * m * dot(*a.eta, *a.eta) - m * m, kMoTol, e.name + " Mo identity");
        c.below(dot(*a.eta, a.phi), kIdentityTol, e.name + " <eta, phi>");
        Vec d(a.phi.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
          d[i] = (*a.residual_eq102)[i] - (*a.residual_mf)[i];
        }
        c.below(sup_norm(d), kAgreementTol, e.name + " |r_102 - r_MF|");
      }
      if (r.constant_density.value) {
        c.expect(a.residual_me1.has_value(), e.name + " me1 residual unavailable");
        if (a.residual_me1) {
          Vec d(a.phi.size());
          for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] = (*a.residual_me1)[i] - (*a.residual_mf)[i];
          }
          c.below(sup_norm(d), kAgreementTol, e.name + " |r_Me1 - r_MF|");
        }
      }
    }
  }
  c.note(std::to_string(points) + " points");
}

void derivative_engine(Criterion& c) {
  testing::Rng rng(2024);
  testing::ExprGenerator gen(rng, {"u", "v"});
  const std::vector<std::string> uv{"u", "v"};
  for (int trial = 0; trial < 20; ++trial) {
    const std::string src = gen.generate(3);
    const CompiledExpr f(parse(src), uv);
    const std::vector<double> p{rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)};
    const Jet x[] = {Jet::variable(0, p[0], 4, 2), Jet::variable(1, p[1], 4, 2)};
    const Jet j = f.eval(std::span<const Jet>(x));
    const testing::Field scalar = [&](const std::vector<double>& q) {
      return f.eval(std::span<const double>(q));
    };
    for (std::size_t k = 0; k < j.size(); ++k) {
      const MultiIndex& a = jet_multi_index(2, k);
      const double want = testing::partial(scalar, p, {a[0], a[1]});
      c.expect(testing::close_rel(j.partial(a), want, kFdRel), "jet coefficient of " + src);
    }
  }

  const auto make = [](std::initializer_list<const char*> s) {
    std::vector<Expr> out;
    for (const char* e : s) out.push_back(parse(e));
    return out;
  };
  const Chart explicit_chart = Chart::explicit_metric(
      {"u", "v"}, {{-1, 1, false}, {-1, 1, false}},
      {make({"2 + sin(u)", "0.3*cos(v)"}), make({"1.5 + 0.5*cos(u*v)"})});
  const Chart induced_chart = Chart::induced(
      {"u", "v"}, {{0, 2 * M_PI, true}, {0, 2 * M_PI, true}},
      make({"(2 + cos(v))*cos(u)", "(2 + cos(v))*sin(u)", "sin(v)"}));
  for (const Chart* chart : {&explicit_chart, &induced_chart}) {
    testing::MetricFn metric;
    if (chart->mode() == MetricMode::Explicit) {
      // Straight from the metric expressions; the stencil may leave the box.
      std::vector<CompiledExpr> upper;
      for (const auto& row : chart->metric_upper())
        for (const auto& e : row) upper.push_back(chart->bind(e));
      metric = [upper](const std::vector<double>& q) {
        const std::span<const double> x(q);
        Eigen::MatrixXd g(2, 2);
        g << upper[0].eval(x), upper[1].eval(x), upper[1].eval(x), upper[2].eval(x);
        return g;
      };
    } else {
      std::vector<testing::Field> xs;
      for (const auto& e : chart->immersion()) {
        CompiledExpr ce = chart->bind(e);
        xs.push_back([ce](const std::vector<double>& q) { return ce.eval(std::span<const double>(q)); });
      }
      metric = testing::induced_metric(std::move(xs), 2);
    }
    for (int trial = 0; trial < 10; ++trial) {
      const std::string src = gen.generate(3);
      const CompiledExpr f = chart->bind(parse(src));
      const std::vector<double> p{rng.uniform(0.3, 0.9), rng.uniform(0.3, 0.9)};
      const double jet =
          laplace_beltrami(*chart, [&](std::span<const Jet> u) { return f.eval(u); }, p).value();
      const double fd = testing::fd_laplacian(
          metric, [&](const std::vector<double>& q) { return f.eval(std::span<const double>(q)); }, p);
      c.expect(testing::close_rel(jet, fd, kFdRel), "Laplacian of " + src);
    }
  }
}

void bienergy(Criterion& c) {
  for (const auto& e : catalog_list()) {
    const SphereMap map = build_map(e.manifest);
    ClassifyOptions opts;
    opts.samples = 16;
    if (classify(map, opts).harmonic.value) {
      c.below(bienergy_quadrature(map, 64), kBienergyZero, e.name + " bienergy");
    }
  }
  const SphereMap small = build_map(catalog_find("small_circle_S2")->manifest);
  const double fine = bienergy_quadrature(small, 256);
  c.near(fine, 0.5 * M_PI * std::sqrt(2.0), kBienergyTol, "small_circle_S2 bienergy");
  c.below(fine - bienergy_quadrature(small, 128), kBienergyTol, "small_circle_S2 grid doubling");
}

void determinism(Criterion& c) {
  for (const auto& e : catalog_list()) {
    const SphereMap map = build_map(e.manifest);
    const std::string a = render_classification(classify(map), Format::Json);
    const std::string b = render_classification(classify(map), Format::Json);
    const std::string fresh =
        render_classification(classify(build_map(manifest_from_string(manifest_to_string(e.manifest)))),
                              Format::Json);
    c.expect(a == b && a == fresh, e.name + " JSON differs between runs");
  }
}

}  // namespace

int main() {
  struct Item {
    const char* label;
    std::function<void(Criterion&)> run;
  };
  const Item items[] = {
      {"1 small circle (m=1): buckling, eq102, |eta| = 1, t2", example_m1},
      {"2 Clifford composition (m=2): rho = 2m, |eta| = 1, t2", example_m2},
      {"3 Takahashi: lambda = m / r^2", takahashi},
      {"4 T1 branch: mu = m^2, eta = 0, lambda = m", t1_branch},
      {"5 T3 / T4 branches", t3_t4_branches},
      {"6 identity suite on unit-sphere entries", identity_suite},
      {"7 jets and Laplace-Beltrami vs finite differences", derivative_engine},
      {"8 bienergy quadrature", bienergy},
      {"9 deterministic JSON reports", determinism},
  };
  int failed = 0;
  for (const auto& item : items) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      item.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %s  (%.0f ms)\n", c.failed() ? "FAIL" : "PASS", item.label, ms);
    for (const auto& n : c.notes()) {
      std::printf("        %s\n", n.c_str());
    }
    for (const auto& f : c.failures()) {
      std::printf("        %s\n", f.c_str());
    }
    failed += c.failed() ? 1 : 0;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(items)) - failed,
              std::size(items));
  return failed == 0 ? 0 : 1;
}
