#include "jet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace bieigen {
namespace {

constexpr int kKeyBase = kMaxJetOrder + 1;
constexpr int kKeyCount = kKeyBase * kKeyBase * kKeyBase * kKeyBase;

struct ProductTerm {
  std::uint8_t lhs;
  std::uint8_t rhs;
};

// Index tables for one variable count, covering every order up to 4.
struct IndexTable {
  std::vector<MultiIndex> indices;
  std::array<std::size_t, kMaxJetOrder + 1> size_by_order{};
  std::array<std::int16_t, kKeyCount> flat_by_key{};
  // products[k] lists every (i, j) with alpha_i + alpha_j = alpha_k.
  std::vector<std::vector<ProductTerm>> products;
};

int degree(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}

int key_of(const MultiIndex& a) {
  return a[0] + kKeyBase * (a[1] + kKeyBase * (a[2] + kKeyBase * a[3]));
}

IndexTable build_table(int vars) {
  IndexTable t;
  t.flat_by_key.fill(-1);
  for (int total = 0; total <= kMaxJetOrder; ++total) {
    // Lexicographic enumeration (descending in the first slot) of all
    // multi-indices of this total degree.
    std::vector<MultiIndex> level;
    MultiIndex a{};
    auto recurse = [&](auto&& self, int slot, int remaining) -> void {
      if (slot == vars - 1) {
        a[slot] = static_cast<std::uint8_t>(remaining);
        level.push_back(a);
        a[slot] = 0;
        return;
      }
      for (int k = remaining; k >= 0; --k) {
        a[slot] = static_cast<std::uint8_t>(k);
        self(self, slot + 1, remaining - k);
      }
      a[slot] = 0;
    };
    recurse(recurse, 0, total);
    for (const auto& m : level) {
      t.flat_by_key[key_of(m)] = static_cast<std::int16_t>(t.indices.size());
      t.indices.push_back(m);
    }
    t.size_by_order[total] = t.indices.size();
  }

  t.products.resize(t.indices.size());
  for (std::size_t i = 0; i < t.indices.size(); ++i) {
    for (std::size_t j = 0; j < t.indices.size(); ++j) {
      MultiIndex sum{};
      for (int v = 0; v < kMaxJetVars; ++v) {
        sum[v] = static_cast<std::uint8_t>(t.indices[i][v] + t.indices[j][v]);
      }
      if (degree(sum) > kMaxJetOrder) {
        continue;
      }
      const auto k = static_cast<std::size_t>(t.flat_by_key[key_of(sum)]);
      t.products[k].push_back(
          {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
    }
  }
  return t;
}

const IndexTable& table(int vars) {
  static const std::array<IndexTable, kMaxJetVars> tables = [] {
    std::array<IndexTable, kMaxJetVars> out;
    for (int v = 1; v <= kMaxJetVars; ++v) {
      out[v - 1] = build_table(v);
    }
    return out;
  }();
  return tables[vars - 1];
}

void check_shape(int order, int vars) {
  if (order < 0 || order > kMaxJetOrder) {
    throw ContractViolation("jet order " + std::to_string(order) +
                            " outside [0, 4]");
  }
  if (vars < 1 || vars > kMaxJetVars) {
    throw ContractViolation("jet variable count " + std::to_string(vars) +
                            " outside [1, 4]");
  }
}

void require_same_shape(const Jet& a, const Jet& b) {
  if (!a.same_shape(b)) {
    throw ContractViolation(
        "jet shape mismatch: (K=" + std::to_string(a.order()) +
        ", d=" + std::to_string(a.vars()) + ") vs (K=" +
        std::to_string(b.order()) + ", d=" + std::to_string(b.vars()) + ")");
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

double multi_factorial(const MultiIndex& a) {
  double f = 1.0;
  for (auto k : a) {
    f *= factorial(k);
  }
  return f;
}

}  // namespace

std::size_t jet_size(int order, int vars) {
  check_shape(order, vars);
  return table(vars).size_by_order[order];
}

const MultiIndex& jet_multi_index(int vars, std::size_t flat) {
  check_shape(0, vars);
  const auto& t = table(vars);
  if (flat >= t.indices.size()) {
    throw ContractViolation("jet flat index out of range");
  }
  return t.indices[flat];
}

std::size_t jet_flat_index(int vars, const MultiIndex& alpha) {
  check_shape(0, vars);
  if (degree(alpha) > kMaxJetOrder) {
    throw ContractViolation("multi-index degree exceeds 4");
  }
  for (int v = vars; v < kMaxJetVars; ++v) {
    if (alpha[v] != 0) {
      throw ContractViolation("multi-index addresses a missing variable");
    }
  }
  return static_cast<std::size_t>(table(vars).flat_by_key[key_of(alpha)]);
}

Jet::Jet(int order, int vars)
    : order_(static_cast<std::int8_t>(order)),
      vars_(static_cast<std::int8_t>(vars)) {
  check_shape(order, vars);
}

Jet Jet::constant(double value, int order, int vars) {
  Jet j(order, vars);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int index, double value, int order, int vars) {
  Jet j(order, vars);
  if (index < 0 || index >= vars) {
    throw ContractViolation("variable index " + std::to_string(index) +
                            " outside [0, " + std::to_string(vars) + ")");
  }
  j.c_[0] = value;
  if (order >= 1) {
    // Degree-one indices are stored in variable order right after the value.
    j.c_[1 + index] = 1.0;
  }
  return j;
}

double Jet::taylor(const MultiIndex& alpha) const {
  if (degree(alpha) > order_) {
    throw ContractViolation("multi-index degree exceeds jet order");
  }
  return c_[jet_flat_index(vars_, alpha)];
}

double Jet::partial(const MultiIndex& alpha) const {
  return taylor(alpha) * multi_factorial(alpha);
}

Jet Jet::truncated(int order) const {
  if (order > order_) {
    throw ContractViolation("cannot raise jet order by truncation");
  }
  Jet out(order, vars_);
  const auto n = out.size();
  std::copy_n(c_.begin(), n, out.c_.begin());
  return out;
}

Jet Jet::derivative(int direction) const {
  if (order_ == 0) {
    throw ContractViolation("cannot differentiate an order-0 jet");
  }
  if (direction < 0 || direction >= vars_) {
    throw ContractViolation("derivative direction out of range");
  }
  const auto& t = table(vars_);
  Jet out(order_ - 1, vars_);
  const auto n = out.size();
  for (std::size_t k = 0; k < n; ++k) {
    MultiIndex shifted = t.indices[k];
    const int power = shifted[direction] + 1;
    shifted[direction] = static_cast<std::uint8_t>(power);
    out.c_[k] = power * c_[static_cast<std::size_t>(t.flat_by_key[key_of(shifted)])];
  }
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (std::size_t k = 0, n = size(); k < n; ++k) {
    out.c_[k] = -c_[k];
  }
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0, n = size(); k < n; ++k) {
    c_[k] += rhs.c_[k];
  }
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_same_shape(*this, rhs);
  for (std::size_t k = 0, n = size(); k < n; ++k) {
    c_[k] -= rhs.c_[k];
  }
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double rhs) {
  c_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  c_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (std::size_t k = 0, n = size(); k < n; ++k) {
    c_[k] *= rhs;
  }
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) {
    throw DomainError("division by zero");
  }
  for (std::size_t k = 0, n = size(); k < n; ++k) {
    c_[k] /= rhs;
  }
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  require_same_shape(a, b);
  const auto& t = table(a.vars_);
  Jet out(a.order_, a.vars_);
  for (std::size_t k = 0, n = a.size(); k < n; ++k) {
    // Seeded with the first product so an order-0 product is exactly a0 * b0
    // (including the sign of zero).
    const auto& terms = t.products[k];
    double sum = a.c_[terms[0].lhs] * b.c_[terms[0].rhs];
    for (std::size_t p = 1; p < terms.size(); ++p) {
      sum += a.c_[terms[p].lhs] * b.c_[terms[p].rhs];
    }
    out.c_[k] = sum;
  }
  return out;
}

// Solves b * q = a coefficient by coefficient in graded order, so the value
// coefficient is exactly a0 / b0.
Jet operator/(const Jet& a, const Jet& b) {
  require_same_shape(a, b);
  const double b0 = b.c_[0];
  if (b0 == 0.0) {
    throw DomainError("division by zero");
  }
  const auto& t = table(a.vars_);
  Jet out(a.order_, a.vars_);
  for (std::size_t k = 0, n = a.size(); k < n; ++k) {
    double sum = a.c_[k];
    for (const auto& term : t.products[k]) {
      if (term.rhs != 0) {
        sum -= out.c_[term.lhs] * b.c_[term.rhs];
      }
    }
    out.c_[k] = sum / b0;
  }
  return out;
}

Jet operator/(double a, const Jet& b) {
  return Jet::constant(a, b.order(), b.vars()) / b;
}

Jet compose(const Jet& a, std::span<const double> tower) {
  const int order = a.order();
  if (static_cast<int>(tower.size()) < order + 1) {
    throw ContractViolation("derivative tower shorter than jet order");
  }
  Jet h = a;
  h[0] = 0.0;
  // Horner evaluation of sum_k f^(k)(a0)/k! h^k; h is nilpotent of index K+1.
  Jet result = Jet::constant(tower[order] / factorial(order), order, a.vars());
  for (int k = order - 1; k >= 0; --k) {
    result = result * h;
    result[0] += tower[k] / factorial(k);
  }
  return result;
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 5> tower{s, c, -s, -c, s};
  return compose(a, tower);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 5> tower{c, -s, -c, s, c};
  return compose(a, tower);
}

Jet tan(const Jet& a) {
  if (std::cos(a.value()) == 0.0) {
    throw DomainError("tan undefined at " + std::to_string(a.value()));
  }
  const double t = std::tan(a.value());
  const double s = 1.0 + t * t;
  const std::array<double, 5> tower{t, s, 2.0 * t * s,
                                    2.0 * s * (1.0 + 3.0 * t * t),
                                    8.0 * t * s * (2.0 + 3.0 * t * t)};
  return compose(a, tower);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  const std::array<double, 5> tower{e, e, e, e, e};
  return compose(a, tower);
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw DomainError("log of non-positive value " + std::to_string(x));
  }
  const double r = 1.0 / x;
  const std::array<double, 5> tower{std::log(x), r, -r * r, 2.0 * r * r * r,
                                    -6.0 * r * r * r * r};
  return compose(a, tower);
}

Jet sqrt(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw DomainError("sqrt of non-positive value " + std::to_string(x));
  }
  const double s = std::sqrt(x);
  const double r = 1.0 / x;
  const std::array<double, 5> tower{s, 0.5 * s * r, -0.25 * s * r * r,
                                    0.375 * s * r * r * r,
                                    -0.9375 * s * r * r * r * r};
  return compose(a, tower);
}

Jet sinh(const Jet& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  const std::array<double, 5> tower{s, c, s, c, s};
  return compose(a, tower);
}

Jet cosh(const Jet& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  const std::array<double, 5> tower{c, s, c, s, c};
  return compose(a, tower);
}

Jet pow(const Jet& a, double exponent) {
  const double x = a.value();
  if (!(x > 0.0)) {
    throw DomainError("non-integer power of non-positive value " +
                      std::to_string(x));
  }
  std::array<double, 5> tower{};
  double coeff = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    tower[k] = coeff * std::pow(x, exponent - k);
    coeff *= exponent - k;
  }
  tower[0] = std::pow(x, exponent);
  return compose(a, tower);
}

}  // namespace bieigen
