#pragma once

// Map-definition expression language.
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' exponent)?
//   exponent := '-' exponent | power          (must be variable-free)
//   primary  := number | 'pi' | ident | func '(' expr ')' | '(' expr ')'
//
// func is one of sin cos tan exp log sqrt sinh cosh.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jet.hpp"

namespace bieigen {

enum class Func : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

std::string_view func_name(Func f);
std::optional<Func> func_from_name(std::string_view name);

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t position, std::string message, std::string expected);

  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }
  const std::string& expected() const { return expected_; }

private:
  std::size_t position_;
  std::string detail_;
  std::string expected_;
};

/// An expression references a variable that the binding context lacks.
class BindError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Immutable expression tree. Copies share structure.
class Expr {
public:
  enum class Kind : std::uint8_t {
    Constant,
    Pi,
    Variable,
    Negate,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Call,
  };

  static Expr constant(double value);
  static Expr pi();
  static Expr variable(std::string name);
  static Expr negate(Expr operand);
  /// Add, Sub, Mul or Div.
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  /// Throws BindError if the exponent references a variable.
  static Expr power(Expr base, Expr exponent);
  static Expr call(Func func, Expr argument);

  Kind kind() const;
  double number() const;            // Constant, Pi
  const std::string& name() const;  // Variable
  Func func() const;                // Call
  const Expr& lhs() const;          // binary, Pow base, Negate/Call operand
  const Expr& rhs() const;          // binary, Pow exponent
  double exponent() const;          // Pow: the exponent's value

  /// Distinct variable names in first-appearance order.
  std::vector<std::string> variables() const;

private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view source);

/// Fully parenthesized, round-trip-stable rendering.
std::string print(const Expr& e);

/// Same shape, same names, bitwise-equal constants.
bool structurally_equal(const Expr& a, const Expr& b);

/// An expression bound to an ordered parameter list, flattened to postfix.
class CompiledExpr {
public:
  CompiledExpr() = default;
  CompiledExpr(const Expr& e, std::span<const std::string> params);

  std::size_t arity() const { return arity_; }

  double eval(std::span<const double> args) const;
  /// All argument jets must share one shape; the result has that shape.
  Jet eval(std::span<const Jet> args) const;
  /// Variable-free expressions evaluated directly as jets of a given shape.
  Jet eval_constant(int order, int vars) const;

  struct Instr;

private:
  template <class T>
  T run(std::span<const T> args, const T& zero) const;

  std::vector<Instr> code_;
  std::size_t arity_ = 0;
};

struct CompiledExpr::Instr {
  enum class Op : std::uint8_t {
    Const,
    Var,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    PowInt,
    PowReal,
    Call,
  };
  Op op;
  Func func = Func::Sin;
  std::uint16_t slot = 0;
  int int_exponent = 0;
  double value = 0.0;
};

Jet eval_jet(const Expr& e, const std::map<std::string, Jet>& env);
double eval_scalar(const Expr& e, const std::map<std::string, double>& env);

/// Value of a variable-free expression.
double eval_constant(const Expr& e);

}  // namespace bieigen
