#include <doctest.h>

#include <cmath>
#include <cstring>
#include <map>
#include <string>

#include "expr.hpp"
#include "support.hpp"

using namespace bieigen;
using Kind = Expr::Kind;

namespace {

// Grammar-valid strings exercising precedence, associativity, unary minus,
// pi, spacing and every function.
std::string random_source(testing::Rng& rng, int depth) {
  static const char* funcs[] = {"sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh"};
  static const char* ops[] = {" + ", "-", " * ", "/", "^"};
  if (depth == 0) {
    switch (rng.integer(0, 4)) {
      case 0: return "x";
      case 1: return "y_2";
      case 2: return "pi";
      case 3: return std::to_string(rng.integer(0, 99));
      default: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4g", rng.uniform(0.0, 1e3));
        return buf;
      }
    }
  }
  switch (rng.integer(0, 4)) {
    case 0: return "-" + random_source(rng, depth - 1);
    case 1: return std::string(funcs[rng.integer(0, 7)]) + "(" + random_source(rng, depth - 1) + ")";
    case 2: return "(" + random_source(rng, depth - 1) + ")";
    default: {
      const std::string op = ops[rng.integer(0, 4)];
      if (op == "^") {
        const std::string e = rng.integer(0, 1) ? "-1.5" : "2^3";
        return random_source(rng, depth - 1) + "^" + e;
      }
      return random_source(rng, depth - 1) + op + random_source(rng, depth - 1);
    }
  }
}

ParseError parse_error(const std::string& s) {
  try {
    parse(s);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for '" << s << "'");
  return ParseError(0, "", "");
}

}  // namespace

TEST_CASE("parse examples") {
  const Expr zero = parse("0");
  CHECK(zero.kind() == Kind::Constant);
  CHECK(zero.number() == 0.0);

  const Expr e = parse("cos(sqrt(2)*t)/sqrt(2)");
  REQUIRE(e.kind() == Kind::Div);
  REQUIRE(e.lhs().kind() == Kind::Call);
  CHECK(e.lhs().func() == Func::Cos);
  const Expr& mul = e.lhs().lhs();
  REQUIRE(mul.kind() == Kind::Mul);
  CHECK(mul.lhs().kind() == Kind::Call);
  CHECK(mul.lhs().func() == Func::Sqrt);
  CHECK(mul.lhs().lhs().number() == 2.0);
  CHECK(mul.rhs().kind() == Kind::Variable);
  CHECK(mul.rhs().name() == "t");
  CHECK(e.rhs().kind() == Kind::Call);
  CHECK(e.rhs().func() == Func::Sqrt);
  CHECK(print(e) == "(cos((sqrt(2) * t)) / sqrt(2))");
}

TEST_CASE("precedence and associativity") {
  CHECK(print(parse("1 - 2 - 3")) == "((1 - 2) - 3)");
  CHECK(print(parse("1 / 2 / 3")) == "((1 / 2) / 3)");
  CHECK(print(parse("a + b * c")) == "(a + (b * c))");
  CHECK(eval_constant(parse("2^3^2")) == 512.0);
  CHECK(eval_constant(parse("-2^2")) == -4.0);
  CHECK(eval_constant(parse("2^-1")) == 0.5);
  CHECK(eval_constant(parse("-pi")) == -M_PI);
  CHECK(eval_constant(parse("1e-3 + 2.5E2")) == 1e-3 + 2.5e2);
}

TEST_CASE("parse errors") {
  const ParseError e = parse_error("1 + ");
  CHECK(e.position() == 4);
  CHECK(e.expected() == "operand");

  const ParseError open = parse_error("cos(");
  CHECK(open.position() == 4);

  CHECK(parse_error("foo(1)").position() == 0);
  CHECK(parse_error("(1 + 2").position() == 6);
  CHECK(parse_error("1 + 2)").position() == 5);
  CHECK(parse_error("1.2.3").position() <= 5);
  CHECK(parse_error("1e").position() <= 2);
  CHECK(parse_error("sin 1").position() == 4);
  CHECK(parse_error("x^y").position() >= 2);
  CHECK(parse_error("").position() == 0);
  CHECK(parse_error("2 $ 3").position() == 2);

  for (const char* bad : {"1 + ", "cos(", "foo(1)", "(1 + 2", "1 + 2)", "x^y", "", "2 $ 3", "1..", "*2"}) {
    const ParseError err = parse_error(bad);
    CHECK(err.position() <= std::strlen(bad));
    CHECK(std::string(err.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("round trip") {
  testing::Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string s = random_source(rng, rng.integer(0, 5));
    CAPTURE(s);
    const Expr a = parse(s);
    const Expr b = parse(print(a));
    CHECK(structurally_equal(a, b));
    CHECK(print(a) == print(b));
  }
  CHECK_FALSE(structurally_equal(parse("x + 1"), parse("1 + x")));
  CHECK_FALSE(structurally_equal(parse("x"), parse("y")));
}

TEST_CASE("variables and binding") {
  const Expr e = parse("sin(u) * v + u");
  CHECK(e.variables() == std::vector<std::string>{"u", "v"});
  const std::vector<std::string> params{"u"};
  CHECK_THROWS_AS(CompiledExpr(e, params), BindError);
  CHECK_THROWS_AS(eval_constant(parse("x")), BindError);
  CHECK_THROWS_AS(eval_scalar(e, {{"u", 1.0}}), BindError);
}

TEST_CASE("jet evaluation examples") {
  const Jet t = Jet::variable(0, 3.0, 2, 1);
  const Jet sq = eval_jet(parse("t^2"), {{"t", t}});
  CHECK(sq.partial({0, 0, 0, 0}) == 9.0);
  CHECK(sq.partial({1, 0, 0, 0}) == 6.0);
  CHECK(sq.partial({2, 0, 0, 0}) == 2.0);

  const Jet s = eval_jet(parse("sin(t)"), {{"t", Jet::variable(0, 0.0, 4, 1)}});
  const double tower[] = {0.0, 1.0, 0.0, -1.0, 0.0};
  for (std::uint8_t n = 0; n <= 4; ++n) {
    CHECK(s.partial({n, 0, 0, 0}) == doctest::Approx(tower[n]).epsilon(1e-15));
  }

  // exp(uv) at (0.3, 0.7), order 2 and order 4.
  for (int order : {2, 4}) {
    const Jet u = Jet::variable(0, 0.3, order, 2);
    const Jet v = Jet::variable(1, 0.7, order, 2);
    const Jet j = eval_jet(parse("exp(u*v)"), {{"u", u}, {"v", v}});
    const testing::Field f = [](const std::vector<double>& p) { return std::exp(p[0] * p[1]); };
    for (std::size_t k = 0; k < j.size(); ++k) {
      const MultiIndex& a = jet_multi_index(2, k);
      const double want = testing::partial(f, {0.3, 0.7}, {a[0], a[1]});
      CHECK(std::abs(j.partial(a) - want) < 1e-7 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("evaluation errors") {
  const Jet x = Jet::variable(0, 0.0, 2, 1);
  CHECK_THROWS_AS(eval_jet(parse("log(x)"), {{"x", x}}), DomainError);
  CHECK_THROWS_AS(eval_jet(parse("1/x"), {{"x", x}}), DomainError);
  CHECK_THROWS_AS(eval_jet(parse("sqrt(x - 1)"), {{"x", x}}), DomainError);
  CHECK_THROWS_AS(eval_jet(parse("y"), {{"x", x}}), BindError);
  CHECK_THROWS_AS(eval_jet(parse("x*y"), {{"x", x}, {"y", Jet::variable(0, 0.0, 3, 1)}}),
                  ContractViolation);
}

TEST_CASE("order-0 jets equal scalar evaluation bit for bit") {
  testing::Rng rng(22);
  testing::ExprGenerator gen(rng, {"u", "v"});
  const std::vector<std::string> params{"u", "v"};
  for (int trial = 0; trial < 300; ++trial) {
    const std::string s = gen.generate(4);
    CAPTURE(s);
    const CompiledExpr c(parse(s), params);
    const double p[] = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const Jet j[] = {Jet::constant(p[0], 0, 2), Jet::constant(p[1], 0, 2)};
    const double scalar = c.eval(std::span<const double>(p));
    const double jet = c.eval(std::span<const Jet>(j)).value();
    CHECK(std::memcmp(&scalar, &jet, sizeof(double)) == 0);
    // Higher-order jets carry the same value as well.
    const Jet j4[] = {Jet::variable(0, p[0], 4, 2), Jet::variable(1, p[1], 4, 2)};
    CHECK(c.eval(std::span<const Jet>(j4)).value() == scalar);
  }
}

TEST_CASE("random expressions against the finite-difference oracle") {
  testing::Rng rng(23);
  testing::ExprGenerator gen(rng, {"u", "v"});
  const std::vector<std::string> params{"u", "v"};
  for (int trial = 0; trial < 40; ++trial) {
    const std::string s = gen.generate(3);
    CAPTURE(s);
    const CompiledExpr c(parse(s), params);
    const std::vector<double> p{rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8)};
    const Jet j[] = {Jet::variable(0, p[0], 4, 2), Jet::variable(1, p[1], 4, 2)};
    const Jet out = c.eval(std::span<const Jet>(j));
    const testing::Field f = [&](const std::vector<double>& x) {
      return c.eval(std::span<const double>(x));
    };
    for (std::size_t k = 0; k < out.size(); ++k) {
      const MultiIndex& a = jet_multi_index(2, k);
      CAPTURE(k);
      CHECK(testing::close_rel(out.partial(a), testing::partial(f, p, {a[0], a[1]}), 1e-6));
    }
  }
}
