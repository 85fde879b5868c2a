#pragma once

// Test oracles: Richardson-extrapolated central differences, a seeded random
// source, and a generator of random smooth expressions.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace testing {

using Field = std::function<double(const std::vector<double>&)>;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::vector<double> point(int dim, double lo, double hi) {
    std::vector<double> p(static_cast<std::size_t>(dim));
    for (auto& x : p) {
      x = uniform(lo, hi);
    }
    return p;
  }

private:
  std::mt19937_64 engine_;
};

// Central stencil (offset in units of h, weight) for the n-th derivative with
// O(h^2) error and an error expansion in even powers of h.
inline std::vector<std::pair<int, double>> central_stencil(int n) {
  switch (n) {
    case 0: return {{0, 1.0}};
    case 1: return {{1, 0.5}, {-1, -0.5}};
    case 2: return {{1, 1.0}, {0, -2.0}, {-1, 1.0}};
    case 3: return {{2, 0.5}, {1, -1.0}, {-1, 1.0}, {-2, -0.5}};
    case 4: return {{2, 1.0}, {1, -4.0}, {0, 6.0}, {-1, -4.0}, {-2, 1.0}};
    default: return {};
  }
}

// Tensor-product central difference for the mixed partial d^alpha f at x.
inline double central_difference(const Field& f, const std::vector<double>& x,
                                  const std::vector<int>& alpha, double h) {
  double total = 0.0;
  std::vector<double> y = x;
  std::function<void(std::size_t, double)> rec = [&](std::size_t axis, double weight) {
    if (axis == x.size()) {
      total += weight * f(y);
      return;
    }
    for (auto [offset, w] : central_stencil(alpha[axis])) {
      y[axis] = x[axis] + offset * h;
      rec(axis + 1, weight * w);
    }
    y[axis] = x[axis];
  };
  rec(0, 1.0);
  int order = 0;
  for (int a : alpha) {
    order += a;
  }
  return total / std::pow(h, order);
}

// Richardson tableau over h0, h0/2, ... for an estimate whose error expands in
// h^leading, h^(leading+2), ...
inline double richardson(const std::function<double(double)>& estimate, double h0 = 0.2,
                         int levels = 4, int leading = 2) {
  std::vector<std::vector<double>> t(static_cast<std::size_t>(levels));
  double h = h0;
  for (int i = 0; i < levels; ++i, h /= 2.0) {
    t[i].push_back(estimate(h));
    double factor = std::pow(2.0, leading);
    for (int k = 1; k <= i; ++k, factor *= 4.0) {
      t[i].push_back(t[i][k - 1] + (t[i][k - 1] - t[i - 1][k - 1]) / (factor - 1.0));
    }
  }
  return t.back().back();
}

inline double partial(const Field& f, const std::vector<double>& x,
                      const std::vector<int>& alpha, double h0 = 0.2) {
  return richardson([&](double h) { return central_difference(f, x, alpha, h); }, h0);
}

// First derivative along `axis` from the 5-point stencil, extrapolated.
inline double derivative5(const Field& f, const std::vector<double>& x, std::size_t axis,
                          double h0 = 0.2) {
  return richardson(
      [&](double h) {
        std::vector<double> y = x;
        auto at = [&](double k) {
          y[axis] = x[axis] + k * h;
          return f(y);
        };
        return (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
      },
      h0, 4, 4);
}

inline bool close_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
}

// Random smooth expressions over the given variables. Every function
// argument is kept inside its domain for variables in [-1, 1] and the
// magnitudes stay moderate so that a finite-difference oracle is accurate.
class ExprGenerator {
public:
  ExprGenerator(Rng& rng, std::vector<std::string> vars) : rng_(rng), vars_(std::move(vars)) {}

  std::string generate(int depth = 3) {
    if (depth <= 0 || rng_.integer(0, 5) == 0) {
      return leaf();
    }
    const std::string a = generate(depth - 1);
    switch (rng_.integer(0, 13)) {
      case 0: return "(" + a + " + " + generate(depth - 1) + ")";
      case 1: return "(" + a + " - " + generate(depth - 1) + ")";
      case 2: return "(" + a + " * " + generate(depth - 1) + ")";
      case 3: return "(" + a + " / (2 + " + generate(depth - 1) + "^2))";
      case 4: return "sin(" + a + ")";
      case 5: return "cos(" + a + ")";
      case 6: return "exp(0.5*sin(" + a + "))";
      case 7: return "log(2 + cos(" + a + "))";
      case 8: return "sqrt(1.5 + sin(" + a + "))";
      case 9: return "sinh(0.5*sin(" + a + "))";
      case 10: return "cosh(0.5*cos(" + a + "))";
      case 11: return "tan(0.4*sin(" + a + "))";
      case 12: return "(" + a + ")^" + std::to_string(rng_.integer(2, 3));
      default: return "(2 + sin(" + a + "))^-1.5";
    }
  }

private:
  std::string leaf() {
    if (rng_.integer(0, 2) == 0) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", rng_.uniform(0.25, 1.5));
      return buf;
    }
    const std::string v = vars_[static_cast<std::size_t>(rng_.integer(0, static_cast<int>(vars_.size()) - 1))];
    return rng_.integer(0, 1) == 0 ? v : "(0.7*" + v + ")";
  }

  Rng& rng_;
  std::vector<std::string> vars_;
};

}  // namespace testing
