#pragma once

// Coordinate charts of a Riemannian domain and the operators built on them.
//
// Sign convention: laplace_beltrami(f) = div(grad f), so Laplace eigenfunctions
// satisfy Lap f = -lambda f with lambda >= 0.
//
// Order budget: map and immersion expressions are evaluated as order-4 jets,
// metric frames carry order 3, Lap f comes out at order 2 and Lap Lap f at
// order 0.

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"
#include "jet.hpp"

namespace bieigen {

inline constexpr double kMinMetricEigenvalue = 1e-10;
inline constexpr double kMinImmersionDeterminant = 1e-12;
inline constexpr double kDefaultInset = 1e-3;

std::string format_point(std::span<const double> p);

/// A failure tied to one chart point: singular metric, domain error of an
/// elementary function, constraint violation.
class EvaluationError : public std::runtime_error {
public:
  EvaluationError(std::vector<double> point, const std::string& message);

  const std::vector<double>& point() const { return point_; }
  const std::string& detail() const { return detail_; }

private:
  std::vector<double> point_;
  std::string detail_;
};

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;

  double length() const { return hi - lo; }
};

enum class MetricMode { Explicit, Induced };

/// Metric data at one point as jets: g_ij, g^ij and sqrt(det g).
struct MetricFrame {
  int dim = 0;
  int order = 0;
  std::vector<Jet> g;      // row-major dim x dim
  std::vector<Jet> g_inv;  // row-major dim x dim
  Jet det;
  Jet sqrt_det;
  double min_eigenvalue = 0.0;

  const Jet& metric(int i, int j) const { return g[i * dim + j]; }
  const Jet& inverse(int i, int j) const { return g_inv[i * dim + j]; }
};

class Chart {
public:
  /// `upper` holds the upper triangle row by row: row i has dim - i entries.
  static Chart explicit_metric(std::vector<std::string> params,
                               std::vector<Interval> domain,
                               std::vector<std::vector<Expr>> upper);
  static Chart induced(std::vector<std::string> params,
                       std::vector<Interval> domain, std::vector<Expr> immersion);

  int dimension() const { return static_cast<int>(params_.size()); }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<Interval>& domain() const { return domain_; }
  MetricMode mode() const { return mode_; }
  const std::vector<Expr>& immersion() const { return immersion_; }
  const std::vector<std::vector<Expr>>& metric_upper() const { return upper_; }

  /// Bind an expression to this chart's parameters (BindError if it uses an
  /// undeclared name).
  CompiledExpr bind(const Expr& e) const;

  /// Coordinate jets u^i at p.
  std::vector<Jet> coordinates(std::span<const double> p, int order) const;

  /// Throws EvaluationError unless p lies strictly inside every non-periodic
  /// interval.
  void require_interior(std::span<const double> p) const;

  MetricFrame metric_frame(std::span<const double> p, int order = 3) const;

private:
  Chart() = default;
  void validate_shape() const;

  std::vector<std::string> params_;
  std::vector<Interval> domain_;
  MetricMode mode_ = MetricMode::Explicit;
  std::vector<std::vector<Expr>> upper_;
  std::vector<Expr> immersion_;
  std::vector<CompiledExpr> compiled_metric_;     // row-major dim x dim
  std::vector<CompiledExpr> compiled_immersion_;
};

/// A scalar field given by its jet as a function of the coordinate jets.
using ScalarField = std::function<Jet(std::span<const Jet>)>;

/// Lap f from the order-K jet of f (K >= 2); returns an order K-2 jet.
Jet laplace_beltrami(const MetricFrame& frame, const Jet& f);

/// Lap Lap f at the point from the order-4 jet of f.
double bilaplacian(const MetricFrame& frame, const Jet& f);

/// (dphi(grad s))^A = g^ij d_i s d_j phi^A.
std::vector<double> gradient_pushforward(const MetricFrame& frame, const Jet& s,
                                         std::span<const Jet> components);

Jet laplace_beltrami(const Chart& chart, const ScalarField& f,
                     std::span<const double> p);
double bilaplacian(const Chart& chart, const ScalarField& f,
                   std::span<const double> p);
std::vector<double> gradient_pushforward(const Chart& chart, const ScalarField& s,
                                         std::span<const ScalarField> components,
                                         std::span<const double> p);

/// Tensor grid of at least `count` interior points, midpoint-placed in every
/// axis; non-periodic axes are first shrunk by `inset` times their length at
/// both ends.
std::vector<std::vector<double>> sample_points(const Chart& chart,
                                               std::size_t count,
                                               double inset = kDefaultInset);

}  // namespace bieigen
