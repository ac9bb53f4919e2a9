#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "bigeo/expr.hpp"
#include "support.hpp"

using bigeo::Expr;
using bigeo::ExprKind;
using Catch::Approx;

TEST_CASE("parse builds the expected tree shapes") {
  Expr e = bigeo::parse("sin(x)*x^2");
  REQUIRE(e.kind() == ExprKind::mul);
  REQUIRE(e.left().kind() == ExprKind::sin);
  REQUIRE(e.left().operand().kind() == ExprKind::variable);
  REQUIRE(e.right().kind() == ExprKind::pow);
  REQUIRE(e.right().left().kind() == ExprKind::variable);
  REQUIRE(e.right().right().kind() == ExprKind::number);
  REQUIRE(e.right().right().number_value() == 2.0);

  // Unary minus binds tighter than '^': -x^2 is (-x)^2.
  Expr m = bigeo::parse("-x^2");
  REQUIRE(m.kind() == ExprKind::pow);
  REQUIRE(m.left().kind() == ExprKind::neg);

  // '^' is right-associative.
  Expr p = bigeo::parse("x^2^3");
  REQUIRE(p.kind() == ExprKind::pow);
  REQUIRE(p.right().kind() == ExprKind::pow);

  // Left-associative chains.
  Expr s = bigeo::parse("1-2-3");
  REQUIRE(s.kind() == ExprKind::sub);
  REQUIRE(s.left().kind() == ExprKind::sub);

  // pi and e are numeric literals.
  Expr c = bigeo::parse("2*pi");
  REQUIRE(c.right().kind() == ExprKind::number);
  REQUIRE(c.right().number_value() == Approx(3.14159265358979).epsilon(1e-14));
}

TEST_CASE("parse errors carry 1-based columns") {
  auto col_of = [](const std::string& src) -> std::size_t {
    try {
      bigeo::parse(src);
    } catch (const bigeo::parse_error& pe) {
      return pe.column();
    }
    return 0;
  };
  CHECK(col_of("2**x") == 2);      // second '*' has no operand; blamed on the operator
  CHECK(col_of("2+*3") == 2);
  CHECK(col_of("ln(") == 4);       // unclosed call reported at end of input
  CHECK(col_of("(1+2") == 5);
  CHECK(col_of("sin x") == 5);
  CHECK(col_of("foo(x)") == 1);
  CHECK(col_of("x+y") == 3);
  CHECK(col_of("1 2") == 3);
  CHECK(col_of(")") == 1);
  CHECK(col_of("") == 1);
  CHECK(col_of("x @ 2") == 3);

  try {
    bigeo::parse("2**x");
    FAIL("expected a parse error");
  } catch (const bigeo::parse_error& pe) {
    CHECK(std::string(pe.what()).find("column 2") != std::string::npos);
  }
}

TEST_CASE("evaluate computes standard arithmetic") {
  CHECK(bigeo::evaluate(bigeo::parse("x^2+1"), 3.0) == Approx(10.0));
  CHECK(bigeo::evaluate(bigeo::parse("-x^2"), 3.0) == Approx(9.0));  // (-x)^2
  CHECK(bigeo::evaluate(bigeo::parse("2.5e-1*4"), 0.0) == Approx(1.0));
  CHECK(bigeo::evaluate(bigeo::parse("e^x"), 1.0) == Approx(std::exp(1.0)));
  CHECK(bigeo::evaluate(bigeo::parse("sin(pi/6)"), 0.0) == Approx(0.5));
  CHECK(bigeo::evaluate(bigeo::parse("ln(exp(x))"), 2.5) == Approx(2.5));
  CHECK(bigeo::evaluate(bigeo::parse("x/(1+x)"), 1.0) == Approx(0.5));
  CHECK(bigeo::evaluate(bigeo::parse("tan(pi/4)"), 0.0) == Approx(1.0));
}

TEST_CASE("evaluate rejects domain faults") {
  CHECK_THROWS_AS(bigeo::evaluate(bigeo::parse("1/x"), 0.0), bigeo::domain_error);
  CHECK_THROWS_AS(bigeo::evaluate(bigeo::parse("ln(x)"), 0.0), bigeo::domain_error);
  CHECK_THROWS_AS(bigeo::evaluate(bigeo::parse("ln(x)"), -2.0), bigeo::domain_error);
  CHECK_THROWS_AS(bigeo::evaluate(bigeo::parse("tan(x)"), 1.57079632679489661923),
                  bigeo::domain_error);
  CHECK_THROWS_AS(bigeo::evaluate(bigeo::parse("x^0.5"), -4.0), bigeo::domain_error);
  CHECK_THROWS_AS(bigeo::evaluate(bigeo::parse("x^(-1)"), 0.0), bigeo::domain_error);
  CHECK_NOTHROW(bigeo::evaluate(bigeo::parse("x^0.5"), 4.0));
}

TEST_CASE("differentiate produces expected closed forms") {
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("x^2"))) == "2*x");
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("sin(x)*x"))) == "cos(x)*x+sin(x)");
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("7"))) == "0");
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("sin(2)"))) == "0");
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("x"))) == "1");
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("ln(x)"))) == "1/x");
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("exp(x)"))) == "exp(x)");
}

TEST_CASE("differentiate handles variable exponents") {
  // d/dx x^x = x^x (ln x + 1)
  Expr d = bigeo::differentiate(bigeo::parse("x^x"));
  for (double x : {0.5, 1.0, 2.0, 3.5}) {
    double expect = std::pow(x, x) * (std::log(x) + 1.0);
    CHECK(bigeo::evaluate(d, x) == Approx(expect).epsilon(1e-12));
  }
  // A variable power over a negative constant base has no real derivative.
  CHECK_THROWS_AS(bigeo::differentiate(bigeo::parse("(-2)^x")), bigeo::domain_error);
  // Negative constant base with a constant exponent is fine (whole subtree constant).
  CHECK(bigeo::print(bigeo::differentiate(bigeo::parse("(-2)^3"))) == "0");
}

TEST_CASE("analytic derivatives agree with central differences") {
  struct Probe {
    const char* src;
    double lo, hi;
  };
  const std::vector<Probe> probes = {
      {"exp(x)", 0.5, 3.0},
      {"sin(x)", 0.3, 2.9},
      {"x", 0.5, 5.0},
      {"x^3", 0.5, 5.0},
      {"x^7", 0.5, 5.0},
      {"x^ln(x)", 0.5, 5.0},
      {"3*2^x", 0.1, 5.0},
      {"exp(-1/x^2)/(x^2*sin(x))", 0.3, 2.9},
      {"x^2+1", 0.5, 5.0},
      {"tan(x)", 0.1, 1.4},
      {"cos(x)/x", 0.3, 2.9},
  };
  for (const auto& pr : probes) {
    Expr f = bigeo::parse(pr.src);
    Expr df = bigeo::differentiate(f);
    for (int i = 0; i < 5; ++i) {
      double x = testsup::uniform(pr.lo, pr.hi);
      double h = 1e-6 * std::max(1.0, std::fabs(x));
      double central =
          (bigeo::evaluate(f, x + h) - bigeo::evaluate(f, x - h)) / (2.0 * h);
      double got = bigeo::evaluate(df, x);
      INFO(pr.src << " at x=" << x);
      CHECK(std::fabs(got - central) <= 2e-6 * std::max(1.0, std::fabs(got)));
    }
  }
}

TEST_CASE("second derivatives stay evaluable") {
  for (const char* src : {"sin(x)*x^2", "exp(x)/x", "x^ln(x)", "tan(x)"}) {
    Expr d2 = bigeo::differentiate(bigeo::differentiate(bigeo::parse(src)));
    CHECK(std::isfinite(bigeo::evaluate(d2, 0.7)));
  }
}

TEST_CASE("print emits a canonical reparsable form") {
  CHECK(bigeo::print(bigeo::parse("sin(x)*x^2")) == "sin(x)*x^2");
  CHECK(bigeo::print(bigeo::parse("-x^2")) == "(-x)^2");
  CHECK(bigeo::print(bigeo::parse("x^-2")) == "x^(-2)");
  CHECK(bigeo::print(bigeo::parse("(x+1)*(x-1)")) == "(x+1)*(x-1)");
  CHECK(bigeo::print(bigeo::parse("x-(2-x)")) == "x-(2-x)");
  CHECK(bigeo::print(bigeo::parse("x^2^3")) == "x^2^3");
  CHECK(bigeo::print(bigeo::parse("1/2/x")) == "1/2/x");  // parse never rewrites
  CHECK(bigeo::print(Expr::sub(Expr::variable(), Expr::number(-3.0))) == "x-(-3)");
  CHECK(bigeo::print(Expr::neg(Expr::neg(Expr::variable()))) == "--x");
}

namespace {

bigeo::Expr random_tree(int depth) {
  auto& rng = testsup::rng();
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 12);
  switch (pick(rng)) {
    case 0:
      return Expr::variable();
    case 1: {
      std::uniform_int_distribution<int> coin(0, 3);
      if (coin(rng) == 0) return Expr::number(-std::round(testsup::uniform(1.0, 9.0)));
      return Expr::number(std::round(testsup::uniform(0.0, 9.0) * 8.0) / 8.0);
    }
    case 2:
      return Expr::add(random_tree(depth - 1), random_tree(depth - 1));
    case 3:
      return Expr::sub(random_tree(depth - 1), random_tree(depth - 1));
    case 4:
      return Expr::mul(random_tree(depth - 1), random_tree(depth - 1));
    case 5:
      return Expr::div(random_tree(depth - 1), random_tree(depth - 1));
    case 6:
      return Expr::pow(random_tree(depth - 1), random_tree(depth - 1));
    case 7:
      return Expr::neg(random_tree(depth - 1));
    case 8:
      return Expr::sin(random_tree(depth - 1));
    case 9:
      return Expr::cos(random_tree(depth - 1));
    case 10:
      return Expr::tan(random_tree(depth - 1));
    case 11:
      return Expr::exp(random_tree(depth - 1));
    default:
      return Expr::ln(random_tree(depth - 1));
  }
}

}  // namespace

TEST_CASE("printing is idempotent through a reparse") {
  for (int trial = 0; trial < 500; ++trial) {
    Expr t = random_tree(4);
    std::string once = bigeo::print(t);
    std::string twice = bigeo::print(bigeo::parse(once));
    INFO("tree " << trial << ": " << once);
    REQUIRE(once == twice);
  }
  for (const char* src : {"sin(x)*x^2", "x^ln(x)", "3*2^x", "exp(-1/x^2)/(x^2*sin(x))"}) {
    Expr d = bigeo::differentiate(bigeo::parse(src));
    CHECK(bigeo::print(bigeo::parse(bigeo::print(d))) == bigeo::print(d));
  }
}

TEST_CASE("structural equality ignores sharing") {
  Expr a = bigeo::parse("x^2+sin(x)");
  Expr b = bigeo::parse("x ^ 2 + sin( x )");
  CHECK(a.same(b));
  CHECK_FALSE(a.same(bigeo::parse("x^2+cos(x)")));
}
