#pragma once

// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet of order K in d variables stores the Taylor-normalized coefficients
// f_alpha = (d^alpha f)(p) / alpha! for every multi-index |alpha| <= K, in
// graded order (total degree first, then lexicographic). The graded layout
// makes an order-K table a prefix of the order-(K+1) table, so truncation is a
// prefix copy and products are plain truncated convolutions.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace bieigen {

inline constexpr int kMaxJetOrder = 4;
inline constexpr int kMaxJetVars = 4;
inline constexpr std::size_t kMaxJetCoeffs = 70;  // C(4+4, 4)

using MultiIndex = std::array<std::uint8_t, kMaxJetVars>;

/// Raised when jets of different shape are combined or an index is out of
/// range. These are programming errors, never user-input errors.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Raised when an elementary function is evaluated outside its domain.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Number of coefficients of a jet of the given order in `vars` variables.
std::size_t jet_size(int order, int vars);

/// Multi-index stored at a flat position for `vars` variables.
const MultiIndex& jet_multi_index(int vars, std::size_t flat);

/// Flat position of a multi-index; throws ContractViolation if |alpha| > 4.
std::size_t jet_flat_index(int vars, const MultiIndex& alpha);

class Jet {
public:
  Jet() = default;

  static Jet constant(double value, int order, int vars);
  /// The coordinate function u^index at a point whose index-th coordinate is
  /// `value`.
  static Jet variable(int index, double value, int order, int vars);

  int order() const { return order_; }
  int vars() const { return vars_; }
  std::size_t size() const { return jet_size(order_, vars_); }

  double value() const { return c_[0]; }

  std::span<const double> coefficients() const { return {c_.data(), size()}; }
  std::span<double> coefficients() { return {c_.data(), size()}; }

  double operator[](std::size_t flat) const { return c_[flat]; }
  double& operator[](std::size_t flat) { return c_[flat]; }

  /// Taylor-normalized coefficient d^alpha f / alpha!.
  double taylor(const MultiIndex& alpha) const;
  /// Plain partial derivative d^alpha f.
  double partial(const MultiIndex& alpha) const;

  /// Drop all coefficients above `order`.
  Jet truncated(int order) const;

  /// Jet of d f / d u^direction, one order lower.
  Jet derivative(int direction) const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(double a, const Jet& b) { return (-b) += a; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(double a, const Jet& b);

  /// Same (order, vars) shape.
  bool same_shape(const Jet& other) const {
    return order_ == other.order_ && vars_ == other.vars_;
  }

private:
  Jet(int order, int vars);

  std::array<double, kMaxJetCoeffs> c_{};
  std::int8_t order_ = 0;
  std::int8_t vars_ = 1;
};

/// Compose a univariate function with `a`, given its derivative tower
/// f(a0), f'(a0), ..., f^(K)(a0) at the value of `a`.
Jet compose(const Jet& a, std::span<const double> tower);

Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tan(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
/// Real power with a non-integer exponent; the base value must be positive.
Jet pow(const Jet& a, double exponent);

/// Integer power by repeated squaring. Shared by the scalar and jet paths so
/// that an order-0 jet reproduces scalar evaluation exactly.
template <class T>
T ipow(const T& base, int exponent) {
  if (exponent < 0) {
    return 1.0 / ipow(base, -exponent);
  }
  if (exponent == 0) {
    return base * 0.0 + 1.0;
  }
  T result = base;
  T acc = base;
  int remaining = exponent - 1;
  while (remaining > 0) {
    if (remaining & 1) {
      result = result * acc;
    }
    remaining >>= 1;
    if (remaining > 0) {
      acc = acc * acc;
    }
  }
  return result;
}

}  // namespace bieigen
