#include "chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Eigenvalues>

namespace bieigen {

std::string format_point(std::span<const double> p) {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", p[i]);
    out += (i ? ", " : "");
    out += buf;
  }
  return out + ")";
}

EvaluationError::EvaluationError(std::vector<double> point,
                                 const std::string& message)
    : std::runtime_error(message + " at point " + format_point(point)),
      point_(std::move(point)),
      detail_(message) {}

namespace {

// Determinant of the sub-matrix of `a` (row-major, stride n) selected by
// `rows` x `cols`, by cofactor expansion along the first selected row.
Jet minor_det(const std::vector<Jet>& a, int n, std::span<const int> rows,
              std::span<const int> cols) {
  const std::size_t k = rows.size();
  if (k == 1) {
    return a[rows[0] * n + cols[0]];
  }
  if (k == 2) {
    return a[rows[0] * n + cols[0]] * a[rows[1] * n + cols[1]] -
           a[rows[0] * n + cols[1]] * a[rows[1] * n + cols[0]];
  }
  std::vector<int> sub_cols(k - 1);
  Jet sum = a[0] * 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t w = 0;
    for (std::size_t cc = 0; cc < k; ++cc) {
      if (cc != c) {
        sub_cols[w++] = cols[cc];
      }
    }
    const Jet term = a[rows[0] * n + cols[c]] * minor_det(a, n, rows.subspan(1), sub_cols);
    if (c % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

std::vector<int> all_but(int n, int skip) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (i != skip) {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

Chart Chart::explicit_metric(std::vector<std::string> params,
                             std::vector<Interval> domain,
                             std::vector<std::vector<Expr>> upper) {
  Chart c;
  c.params_ = std::move(params);
  c.domain_ = std::move(domain);
  c.mode_ = MetricMode::Explicit;
  c.upper_ = std::move(upper);
  c.validate_shape();
  const int m = c.dimension();
  if (static_cast<int>(c.upper_.size()) != m) {
    throw std::invalid_argument("explicit metric needs " + std::to_string(m) +
                                " upper-triangle rows");
  }
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(c.upper_[i].size()) != m - i) {
      throw std::invalid_argument("upper-triangle row " + std::to_string(i) +
                                  " must have " + std::to_string(m - i) +
                                  " entries");
    }
  }
  c.compiled_metric_.resize(m * m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      CompiledExpr ce = c.bind(c.upper_[i][j - i]);
      c.compiled_metric_[i * m + j] = ce;
      c.compiled_metric_[j * m + i] = ce;
    }
  }
  return c;
}

Chart Chart::induced(std::vector<std::string> params, std::vector<Interval> domain,
                     std::vector<Expr> immersion) {
  Chart c;
  c.params_ = std::move(params);
  c.domain_ = std::move(domain);
  c.mode_ = MetricMode::Induced;
  c.immersion_ = std::move(immersion);
  c.validate_shape();
  if (static_cast<int>(c.immersion_.size()) < c.dimension()) {
    throw std::invalid_argument("immersion needs at least as many components as "
                                "chart parameters");
  }
  for (const auto& e : c.immersion_) {
    c.compiled_immersion_.push_back(c.bind(e));
  }
  return c;
}

void Chart::validate_shape() const {
  const auto m = params_.size();
  if (m < 1 || m > static_cast<std::size_t>(kMaxJetVars)) {
    throw std::invalid_argument("chart dimension must be 1..4");
  }
  if (domain_.size() != m) {
    throw std::invalid_argument("domain must have one interval per parameter");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!(domain_[i].lo < domain_[i].hi) || !std::isfinite(domain_[i].lo) ||
        !std::isfinite(domain_[i].hi)) {
      throw std::invalid_argument("domain interval for '" + params_[i] +
                                  "' must be finite with lo < hi");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (params_[i] == params_[j]) {
        throw std::invalid_argument("duplicate parameter '" + params_[i] + "'");
      }
    }
    if (params_[i] == "pi" || func_from_name(params_[i])) {
      throw std::invalid_argument("parameter name '" + params_[i] + "' is reserved");
    }
  }
}

CompiledExpr Chart::bind(const Expr& e) const { return CompiledExpr(e, params_); }

std::vector<Jet> Chart::coordinates(std::span<const double> p, int order) const {
  const int m = dimension();
  if (static_cast<int>(p.size()) != m) {
    throw ContractViolation("point dimension does not match chart");
  }
  std::vector<Jet> out;
  out.reserve(m);
  for (int i = 0; i < m; ++i) {
    out.push_back(Jet::variable(i, p[i], order, m));
  }
  return out;
}

void Chart::require_interior(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dimension()) {
    throw EvaluationError({p.begin(), p.end()}, "point dimension does not match chart");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& iv = domain_[i];
    if (!std::isfinite(p[i]) || (!iv.periodic && !(iv.lo < p[i] && p[i] < iv.hi))) {
      throw EvaluationError({p.begin(), p.end()},
                            "point outside the interior of the chart domain");
    }
  }
}

MetricFrame Chart::metric_frame(std::span<const double> p, int order) const {
  require_interior(p);
  const int m = dimension();
  const std::vector<double> where(p.begin(), p.end());
  MetricFrame f;
  f.dim = m;
  f.order = order;
  f.g.reserve(m * m);
  try {
    if (mode_ == MetricMode::Explicit) {
      const auto u = coordinates(p, order);
      for (int k = 0; k < m * m; ++k) {
        f.g.push_back(compiled_metric_[k].eval(std::span<const Jet>(u)));
      }
    } else {
      const auto u = coordinates(p, order + 1);
      std::vector<std::vector<Jet>> dx(m);
      for (const auto& x : compiled_immersion_) {
        const Jet xa = x.eval(std::span<const Jet>(u));
        for (int i = 0; i < m; ++i) {
          dx[i].push_back(xa.derivative(i));
        }
      }
      f.g.assign(m * m, Jet::constant(0.0, order, m));
      for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
          Jet s = dx[i][0] * dx[j][0];
          for (std::size_t a = 1; a < dx[i].size(); ++a) {
            s += dx[i][a] * dx[j][a];
          }
          f.g[i * m + j] = s;
          f.g[j * m + i] = s;
        }
      }
    }
  } catch (const DomainError& e) {
    throw EvaluationError(where, e.what());
  }

  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) {
    idx[i] = i;
  }
  f.det = minor_det(f.g, m, idx, idx);
  if (mode_ == MetricMode::Induced && f.det.value() < kMinImmersionDeterminant) {
    throw EvaluationError(where, "immersion is rank-deficient (det g = " +
                                     std::to_string(f.det.value()) + ")");
  }

  Eigen::MatrixXd values(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      values(i, j) = f.g[i * m + j].value();
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      values, Eigen::EigenvaluesOnly);
  f.min_eigenvalue = solver.eigenvalues().minCoeff();
  if (!(f.min_eigenvalue > kMinMetricEigenvalue)) {
    throw EvaluationError(where, "metric is not positive definite (smallest "
                                 "eigenvalue " +
                                     std::to_string(f.min_eigenvalue) + ")");
  }

  // Adjugate inverse: g^ij = C_ji / det, with C the cofactor matrix.
  f.g_inv.assign(m * m, Jet::constant(0.0, order, m));
  if (m == 1) {
    f.g_inv[0] = 1.0 / f.det;
  } else {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const auto rows = all_but(m, j);
        const auto cols = all_but(m, i);
        Jet cof = minor_det(f.g, m, rows, cols);
        if ((i + j) % 2 == 1) {
          cof = -cof;
        }
        f.g_inv[i * m + j] = cof / f.det;
      }
    }
  }
  f.sqrt_det = sqrt(f.det);
  return f;
}

Jet laplace_beltrami(const MetricFrame& frame, const Jet& f) {
  const int k = f.order();
  const int m = frame.dim;
  if (k < 2) {
    throw ContractViolation("Laplace-Beltrami needs a jet of order >= 2");
  }
  if (frame.order < k - 1 || f.vars() != m) {
    throw ContractViolation("metric frame order too low for the field jet");
  }
  const Jet root = frame.sqrt_det.truncated(k - 1);
  std::vector<Jet> df;
  df.reserve(m);
  for (int j = 0; j < m; ++j) {
    df.push_back(f.derivative(j));
  }
  Jet div = Jet::constant(0.0, k - 2, m);
  for (int i = 0; i < m; ++i) {
    Jet flux = frame.inverse(i, 0).truncated(k - 1) * df[0];
    for (int j = 1; j < m; ++j) {
      flux += frame.inverse(i, j).truncated(k - 1) * df[j];
    }
    div += (root * flux).derivative(i);
  }
  return div / frame.sqrt_det.truncated(k - 2);
}

double bilaplacian(const MetricFrame& frame, const Jet& f) {
  if (f.order() != 4) {
    throw ContractViolation("bilaplacian needs an order-4 jet");
  }
  return laplace_beltrami(frame, laplace_beltrami(frame, f)).value();
}

std::vector<double> gradient_pushforward(const MetricFrame& frame, const Jet& s,
                                         std::span<const Jet> components) {
  const int m = frame.dim;
  if (s.order() < 1) {
    throw ContractViolation("gradient needs a jet of order >= 1");
  }
  // grad s = g^ij d_i s d_j
  std::vector<double> grad(m, 0.0);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      grad[j] += frame.inverse(i, j).value() * s[1 + i];
    }
  }
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& c : components) {
    if (c.order() < 1) {
      throw ContractViolation("pushforward needs component jets of order >= 1");
    }
    double v = 0.0;
    for (int j = 0; j < m; ++j) {
      v += grad[j] * c[1 + j];
    }
    out.push_back(v);
  }
  return out;
}

Jet laplace_beltrami(const Chart& chart, const ScalarField& f,
                     std::span<const double> p) {
  const auto frame = chart.metric_frame(p, 3);
  const auto u = chart.coordinates(p, 4);
  return laplace_beltrami(frame, f(u));
}

double bilaplacian(const Chart& chart, const ScalarField& f,
                   std::span<const double> p) {
  const auto frame = chart.metric_frame(p, 3);
  const auto u = chart.coordinates(p, 4);
  return bilaplacian(frame, f(u));
}

std::vector<double> gradient_pushforward(const Chart& chart, const ScalarField& s,
                                         std::span<const ScalarField> components,
                                         std::span<const double> p) {
  const auto frame = chart.metric_frame(p, 1);
  const auto u = chart.coordinates(p, 1);
  std::vector<Jet> comps;
  comps.reserve(components.size());
  for (const auto& c : components) {
    comps.push_back(c(u));
  }
  return gradient_pushforward(frame, s(u), comps);
}

std::vector<std::vector<double>> sample_points(const Chart& chart,
                                               std::size_t count, double inset) {
  const int m = chart.dimension();
  if (count == 0) {
    return {};
  }
  auto per_axis = static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(count), 1.0 / m) - 1e-9));
  per_axis = std::max<std::size_t>(per_axis, 1);

  std::vector<std::vector<double>> axes(m);
  for (int i = 0; i < m; ++i) {
    const auto& iv = chart.domain()[i];
    double lo = iv.lo;
    double hi = iv.hi;
    if (!iv.periodic) {
      lo += inset * iv.length();
      hi -= inset * iv.length();
    }
    const double h = (hi - lo) / static_cast<double>(per_axis);
    for (std::size_t k = 0; k < per_axis; ++k) {
      axes[i].push_back(lo + (static_cast<double>(k) + 0.5) * h);
    }
  }

  std::size_t total = 1;
  for (int i = 0; i < m; ++i) {
    total *= per_axis;
  }
  std::vector<std::vector<double>> points;
  points.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<double> p(m);
    std::size_t rest = n;
    // Last axis varies fastest.
    for (int i = m - 1; i >= 0; --i) {
      p[i] = axes[i][rest % per_axis];
      rest /= per_axis;
    }
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace bieigen
