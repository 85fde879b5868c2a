#include "expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <utility>

namespace bieigen {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 8> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"sinh", Func::Sinh},
    {"cosh", Func::Cosh},
}};

// Largest integer exponent evaluated by repeated multiplication.
constexpr double kMaxIntExponent = 64.0;

}  // namespace

std::string_view func_name(Func f) {
  for (const auto& [name, func] : kFunctions) {
    if (func == f) {
      return name;
    }
  }
  return "?";
}

std::optional<Func> func_from_name(std::string_view name) {
  for (const auto& [n, func] : kFunctions) {
    if (n == name) {
      return func;
    }
  }
  return std::nullopt;
}

ParseError::ParseError(std::size_t position, std::string message,
                       std::string expected)
    : std::runtime_error("parse error at offset " + std::to_string(position) +
                         ": " + message +
                         (expected.empty() ? "" : " (expected " + expected + ")")),
      position_(position),
      detail_(std::move(message)),
      expected_(std::move(expected)) {}

// ---------------------------------------------------------------------------
// Tree

struct Expr::Node {
  Kind kind = Kind::Constant;
  double number = 0.0;
  std::string name;
  Func func = Func::Sin;
  std::optional<Expr> lhs;
  std::optional<Expr> rhs;
};

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->number = value;
  return Expr(std::move(n));
}

Expr Expr::pi() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pi;
  n->number = std::numbers::pi;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->lhs = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (kind != Kind::Add && kind != Kind::Sub && kind != Kind::Mul &&
      kind != Kind::Div) {
    throw ContractViolation("Expr::binary requires + - * /");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, Expr exponent) {
  if (!exponent.variables().empty()) {
    throw BindError("exponent must be a constant");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->number = eval_constant(exponent);
  n->lhs = std::move(base);
  n->rhs = std::move(exponent);
  return Expr(std::move(n));
}

Expr Expr::call(Func func, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->func = func;
  n->lhs = std::move(argument);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
double Expr::number() const { return node_->number; }
const std::string& Expr::name() const { return node_->name; }
Func Expr::func() const { return node_->func; }
double Expr::exponent() const { return node_->number; }

const Expr& Expr::lhs() const {
  if (!node_->lhs) {
    throw ContractViolation("expression node has no operand");
  }
  return *node_->lhs;
}

const Expr& Expr::rhs() const {
  if (!node_->rhs) {
    throw ContractViolation("expression node has no right operand");
  }
  return *node_->rhs;
}

std::vector<std::string> Expr::variables() const {
  std::vector<std::string> out;
  auto visit = [&out](auto&& self, const Expr& e) -> void {
    switch (e.kind()) {
      case Kind::Constant:
      case Kind::Pi:
        return;
      case Kind::Variable:
        for (const auto& v : out) {
          if (v == e.name()) {
            return;
          }
        }
        out.push_back(e.name());
        return;
      case Kind::Negate:
      case Kind::Call:
        self(self, e.lhs());
        return;
      default:
        self(self, e.lhs());
        self(self, e.rhs());
        return;
    }
  };
  visit(visit, *this);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (!at_end()) {
      throw ParseError(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'",
                       "operator or end of input");
    }
    return e;
  }

private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::Kind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::Kind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::Kind::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::Kind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) {
      return Expr::negate(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    skip_space();
    const std::size_t caret = pos_;
    if (!accept('^')) {
      return base;
    }
    Expr exponent = parse_exponent();
    if (!exponent.variables().empty()) {
      throw ParseError(caret + 1, "exponent must be a constant",
                       "constant exponent");
    }
    try {
      return Expr::power(base, exponent);
    } catch (const DomainError& e) {
      throw ParseError(caret + 1, std::string("exponent not evaluable: ") + e.what(),
                       "finite constant exponent");
    }
  }

  Expr parse_exponent() {
    if (accept('-')) {
      return Expr::negate(parse_exponent());
    }
    return parse_power();
  }

  Expr parse_primary() {
    skip_space();
    if (at_end()) {
      throw ParseError(pos_, "unexpected end of input", "operand");
    }
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      skip_space();
      if (peek() != ')') {
        throw ParseError(pos_, at_end() ? "unbalanced parenthesis"
                                        : "unexpected '" + std::string(1, peek()) + "'",
                         "')'");
      }
      ++pos_;
      return inner;
    }
    if (is_digit(c) || c == '.') {
      return parse_number();
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (!at_end() && is_ident_char(src_[pos_])) {
        ++pos_;
      }
      const std::string name(src_.substr(start, pos_ - start));
      skip_space();
      const bool has_args = peek() == '(';
      if (name == "pi" && !has_args) {
        return Expr::pi();
      }
      const auto func = func_from_name(name);
      if (has_args) {
        if (!func) {
          throw ParseError(start, "unknown function '" + name + "'",
                           "one of sin, cos, tan, exp, log, sqrt, sinh, cosh");
        }
        ++pos_;
        Expr arg = parse_expr();
        skip_space();
        if (peek() != ')') {
          throw ParseError(pos_, at_end() ? "unbalanced parenthesis"
                                          : "unexpected '" + std::string(1, peek()) + "'",
                           "')'");
        }
        ++pos_;
        return Expr::call(*func, arg);
      }
      if (func) {
        throw ParseError(pos_, "function '" + name + "' needs an argument", "'('");
      }
      return Expr::variable(name);
    }
    throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'", "operand");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    std::size_t p = pos_;
    std::size_t mantissa_digits = 0;
    while (p < src_.size() && is_digit(src_[p])) {
      ++p;
      ++mantissa_digits;
    }
    if (p < src_.size() && src_[p] == '.') {
      ++p;
      while (p < src_.size() && is_digit(src_[p])) {
        ++p;
        ++mantissa_digits;
      }
    }
    if (mantissa_digits == 0) {
      throw ParseError(start, "malformed number", "digit");
    }
    if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
      ++p;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) {
        ++p;
      }
      std::size_t exp_digits = 0;
      while (p < src_.size() && is_digit(src_[p])) {
        ++p;
        ++exp_digits;
      }
      if (exp_digits == 0) {
        throw ParseError(start, "malformed number", "exponent digits");
      }
    }
    if (p < src_.size() && src_[p] == '.') {
      throw ParseError(start, "malformed number", "single decimal point");
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + p;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw ParseError(start, "malformed number", "finite decimal literal");
    }
    pos_ = p;
    return Expr::constant(value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (v < 0 || std::signbit(v)) {
    return "(" + s + ")";
  }
  return s;
}

char op_char(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add: return '+';
    case Expr::Kind::Sub: return '-';
    case Expr::Kind::Mul: return '*';
    case Expr::Kind::Div: return '/';
    case Expr::Kind::Pow: return '^';
    default: return '?';
  }
}

}  // namespace

Expr parse(std::string_view source) { return Parser(source).parse_all(); }

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return format_number(e.number());
    case Expr::Kind::Pi:
      return "pi";
    case Expr::Kind::Variable:
      return e.name();
    case Expr::Kind::Negate:
      return "(-" + print(e.lhs()) + ")";
    case Expr::Kind::Call:
      return std::string(func_name(e.func())) + "(" + print(e.lhs()) + ")";
    default:
      return "(" + print(e.lhs()) + " " + op_char(e.kind()) + " " +
             print(e.rhs()) + ")";
  }
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) {
    return false;
  }
  switch (a.kind()) {
    case Expr::Kind::Constant: {
      const double x = a.number();
      const double y = b.number();
      return std::memcmp(&x, &y, sizeof x) == 0;
    }
    case Expr::Kind::Pi:
      return true;
    case Expr::Kind::Variable:
      return a.name() == b.name();
    case Expr::Kind::Negate:
      return structurally_equal(a.lhs(), b.lhs());
    case Expr::Kind::Call:
      return a.func() == b.func() && structurally_equal(a.lhs(), b.lhs());
    default:
      return structurally_equal(a.lhs(), b.lhs()) &&
             structurally_equal(a.rhs(), b.rhs());
  }
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double apply(Func f, double x) {
  switch (f) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan:
      if (std::cos(x) == 0.0) {
        throw DomainError("tan undefined at " + std::to_string(x));
      }
      return std::tan(x);
    case Func::Exp: return std::exp(x);
    case Func::Log:
      if (!(x > 0.0)) {
        throw DomainError("log of non-positive value " + std::to_string(x));
      }
      return std::log(x);
    case Func::Sqrt:
      if (!(x > 0.0)) {
        throw DomainError("sqrt of non-positive value " + std::to_string(x));
      }
      return std::sqrt(x);
    case Func::Sinh: return std::sinh(x);
    case Func::Cosh: return std::cosh(x);
  }
  return 0.0;
}

Jet apply(Func f, const Jet& x) {
  switch (f) {
    case Func::Sin: return sin(x);
    case Func::Cos: return cos(x);
    case Func::Tan: return tan(x);
    case Func::Exp: return exp(x);
    case Func::Log: return log(x);
    case Func::Sqrt: return sqrt(x);
    case Func::Sinh: return sinh(x);
    case Func::Cosh: return cosh(x);
  }
  return x;
}

double value_of(double x) { return x; }
double value_of(const Jet& x) { return x.value(); }

double real_power(double x, double p) {
  if (!(x > 0.0)) {
    throw DomainError("non-integer power of non-positive value " +
                      std::to_string(x));
  }
  return std::pow(x, p);
}

Jet real_power(const Jet& x, double p) { return pow(x, p); }

template <class T>
T divide(const T& a, const T& b) {
  if (value_of(b) == 0.0) {
    throw DomainError("division by zero");
  }
  return a / b;
}

using Instr = CompiledExpr::Instr;

void compile_into(const Expr& e, std::span<const std::string> params,
                  std::vector<Instr>& code) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Pi:
      code.push_back({Instr::Op::Const, Func::Sin, 0, 0, e.number()});
      return;
    case Expr::Kind::Variable: {
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i] == e.name()) {
          code.push_back(
              {Instr::Op::Var, Func::Sin, static_cast<std::uint16_t>(i), 0, 0.0});
          return;
        }
      }
      throw BindError("unbound variable '" + e.name() + "'");
    }
    case Expr::Kind::Negate:
      compile_into(e.lhs(), params, code);
      code.push_back({Instr::Op::Neg});
      return;
    case Expr::Kind::Call:
      compile_into(e.lhs(), params, code);
      code.push_back({Instr::Op::Call, e.func()});
      return;
    case Expr::Kind::Pow: {
      compile_into(e.lhs(), params, code);
      const double p = e.exponent();
      if (p == std::trunc(p) && std::abs(p) <= kMaxIntExponent) {
        code.push_back({Instr::Op::PowInt, Func::Sin, 0, static_cast<int>(p), p});
      } else {
        code.push_back({Instr::Op::PowReal, Func::Sin, 0, 0, p});
      }
      return;
    }
    default: {
      compile_into(e.lhs(), params, code);
      compile_into(e.rhs(), params, code);
      Instr::Op op = Instr::Op::Add;
      switch (e.kind()) {
        case Expr::Kind::Sub: op = Instr::Op::Sub; break;
        case Expr::Kind::Mul: op = Instr::Op::Mul; break;
        case Expr::Kind::Div: op = Instr::Op::Div; break;
        default: break;
      }
      code.push_back({op});
      return;
    }
  }
}

}  // namespace

CompiledExpr::CompiledExpr(const Expr& e, std::span<const std::string> params)
    : arity_(params.size()) {
  compile_into(e, params, code_);
}

template <class T>
T CompiledExpr::run(std::span<const T> args, const T& zero) const {
  std::vector<T> stack;
  stack.reserve(8);
  auto pop = [&stack] {
    T v = std::move(stack.back());
    stack.pop_back();
    return v;
  };
  for (const auto& in : code_) {
    switch (in.op) {
      case Instr::Op::Const:
        stack.push_back(zero + in.value);
        break;
      case Instr::Op::Var:
        stack.push_back(args[in.slot]);
        break;
      case Instr::Op::Neg:
        stack.back() = -stack.back();
        break;
      case Instr::Op::Call:
        stack.back() = apply(in.func, stack.back());
        break;
      case Instr::Op::PowInt:
        stack.back() = ipow(stack.back(), in.int_exponent);
        break;
      case Instr::Op::PowReal:
        stack.back() = real_power(stack.back(), in.value);
        break;
      default: {
        T rhs = pop();
        T& lhs = stack.back();
        switch (in.op) {
          case Instr::Op::Add: lhs = lhs + rhs; break;
          case Instr::Op::Sub: lhs = lhs - rhs; break;
          case Instr::Op::Mul: lhs = lhs * rhs; break;
          case Instr::Op::Div: lhs = divide(lhs, rhs); break;
          default: break;
        }
      }
    }
  }
  return stack.back();
}

double CompiledExpr::eval(std::span<const double> args) const {
  if (args.size() != arity_) {
    throw ContractViolation("argument count does not match bound parameters");
  }
  // Constants are pushed as `0.0 + c`, which is c for every finite c.
  return run<double>(args, 0.0);
}

Jet CompiledExpr::eval(std::span<const Jet> args) const {
  if (args.size() != arity_ || args.empty()) {
    throw ContractViolation("argument count does not match bound parameters");
  }
  for (const auto& a : args) {
    if (!a.same_shape(args[0])) {
      throw ContractViolation("argument jets differ in shape");
    }
  }
  return run<Jet>(args, Jet::constant(0.0, args[0].order(), args[0].vars()));
}

Jet CompiledExpr::eval_constant(int order, int vars) const {
  if (arity_ != 0) {
    throw ContractViolation("eval_constant on an expression with parameters");
  }
  return run<Jet>({}, Jet::constant(0.0, order, vars));
}

Jet eval_jet(const Expr& e, const std::map<std::string, Jet>& env) {
  std::vector<std::string> names;
  std::vector<Jet> values;
  for (const auto& [name, jet] : env) {
    names.push_back(name);
    values.push_back(jet);
  }
  const CompiledExpr compiled(e, names);
  if (values.empty()) {
    throw BindError("eval_jet needs at least one variable to fix the jet shape");
  }
  return compiled.eval(std::span<const Jet>(values));
}

double eval_scalar(const Expr& e, const std::map<std::string, double>& env) {
  std::vector<std::string> names;
  std::vector<double> values;
  for (const auto& [name, v] : env) {
    names.push_back(name);
    values.push_back(v);
  }
  const CompiledExpr compiled(e, names);
  return compiled.eval(std::span<const double>(values));
}

double eval_constant(const Expr& e) {
  const CompiledExpr compiled(e, {});
  return compiled.eval(std::span<const double>());
}

}  // namespace bieigen
