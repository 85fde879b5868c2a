#pragma once

// Map fixtures for tests: catalog lookups, rigid motions of the target and
// random sphere-valued maps.

#include <Eigen/Dense>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "manifest.hpp"
#include "support.hpp"

namespace testing {

inline const bieigen::CatalogEntry& entry(const std::string& name) {
  const bieigen::CatalogEntry* e = bieigen::catalog_find(name);
  if (e == nullptr) {
    throw std::runtime_error("no catalog entry " + name);
  }
  return *e;
}

inline bieigen::SphereMap catalog_map(const std::string& name) {
  return bieigen::build_map(entry(name).manifest);
}

inline std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string("(") + buf + ")";
}

// Haar-ish random orthogonal matrix from the QR factorization of a Gaussian
// matrix.
inline Eigen::MatrixXd random_orthogonal(Rng& rng, int n) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = rng.uniform(-1.0, 1.0);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

// phi -> Q phi as new component expressions.
inline bieigen::Manifest rotated(bieigen::Manifest m, const Eigen::MatrixXd& q) {
  std::vector<std::string> out;
  for (Eigen::Index a = 0; a < q.rows(); ++a) {
    std::string s;
    for (Eigen::Index b = 0; b < q.cols(); ++b) {
      if (!s.empty()) {
        s += " + ";
      }
      s += number(q(a, b)) + "*(" + m.components[static_cast<std::size_t>(b)] + ")";
    }
    out.push_back(s);
  }
  m.components = std::move(out);
  m.name += "_rotated";
  return m;
}

// A curved 2-dimensional explicit-metric chart on [-1, 1]^2.
inline bieigen::Manifest warped_chart_manifest() {
  bieigen::Manifest m;
  m.name = "warped";
  m.params = {"u", "v"};
  m.domain = {{-1.0, 1.0}, {-1.0, 1.0}};
  m.periodic = {false, false};
  m.metric_mode = bieigen::MetricMode::Explicit;
  m.metric_upper = {{"2 + sin(u)", "0.3*cos(v)"}, {"1.5 + 0.5*cos(u*v)"}};
  return m;
}

// phi = (cos a cos b, cos a sin b, sin a) for random smooth a(u, v), b(u, v):
// a sphere-valued map, in general neither isometric nor of constant density.
inline bieigen::Manifest random_sphere_map(Rng& rng) {
  ExprGenerator gen(rng, {"u", "v"});
  const std::string a = "(" + gen.generate(2) + ")";
  const std::string b = "(" + gen.generate(2) + ")";
  bieigen::Manifest m = warped_chart_manifest();
  m.name = "random";
  m.components = {"cos" + a + "*cos" + b, "cos" + a + "*sin" + b, "sin" + a};
  return m;
}

}  // namespace testing
