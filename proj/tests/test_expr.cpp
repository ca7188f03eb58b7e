#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kontact/expr.hpp"

using namespace kontact;

TEST_CASE("parser handles precedence and associativity") {
  // 1 + 2*3 = 7, (1+2)*3 = 9, 2^3^... single level only by grammar.
  ExprPtr e = parse_expression("1 + 2*3");
  CHECK(eval_jet(e, {}, 0).v == 7);
  CHECK(eval_jet(parse_expression("(1+2)*3"), {}, 0).v == 9);
  CHECK(eval_jet(parse_expression("2^3"), {}, 0).v == 8);
  CHECK(eval_jet(parse_expression("8 / 2 / 2"), {}, 0).v == 2);   // left assoc
  CHECK(eval_jet(parse_expression("1 - 2 - 3"), {}, 0).v == -4);

  // Unary minus binds to the base: -x1^2 is (-x1)^2.
  CHECK(eval_jet(parse_expression("-3^2"), {}, 0).v == 9);
  CHECK(eval_jet(parse_expression("-(3^2)"), {}, 0).v == -9);
}

TEST_CASE("parser reports offsets on bad input") {
  CHECK_THROWS_AS(parse_expression("1 + "), ParseError);
  CHECK_THROWS_AS(parse_expression("x0"), ParseError);   // variables are 1-based
  CHECK_THROWS_AS(parse_expression("sin 3"), ParseError);
  CHECK_THROWS_AS(parse_expression("(1"), ParseError);
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  try {
    parse_expression("2 + @");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("round trip through to_string") {
  const char* cases[] = {
      "x1",
      "-x2 + 3*x1",
      "sin(x1)*cos(x2) + exp(-x3)",
      "(x1 + x2)^2 / (1 + x3^2)",
      "sqrt(1 + x1^2)",
      "x1^-2",
  };
  for (const char* src : cases) {
    ExprPtr e = parse_expression(src);
    ExprPtr again = parse_expression(to_string(e));
    CHECK_MESSAGE(structurally_equal(e, again), src);
  }
}

TEST_CASE("normalize folds builder trees to parseable form") {
  ExprPtr built = expr_mul(expr_num(-0.5), expr_var(1));
  ExprPtr parsed = parse_expression("-0.5 * x2");
  CHECK(structurally_equal(normalize(built), normalize(parsed)));
}

TEST_CASE("min_dimension tracks the largest variable") {
  CHECK(min_dimension(parse_expression("3.5")) == 0);
  CHECK(min_dimension(parse_expression("x1 + 1")) == 1);
  CHECK(min_dimension(parse_expression("sin(x7)")) == 7);
}

TEST_CASE("jet evaluation matches hand derivatives") {
  // f = x^2 y + sin(y) at (2, 0).
  ExprPtr e = parse_expression("x1^2 * x2 + sin(x2)");
  Jet j = eval_jet(e, Vec{2.0, 0.0}, 2);
  CHECK(j.v == doctest::Approx(0.0));
  CHECK(j.g[0] == doctest::Approx(0.0));        // 2xy = 0
  CHECK(j.g[1] == doctest::Approx(5.0));        // x^2 + cos y = 5
  CHECK(j.h(0, 0) == doctest::Approx(0.0));     // 2y
  CHECK(j.h(0, 1) == doctest::Approx(4.0));     // 2x
  CHECK(j.h(1, 0) == doctest::Approx(4.0));
  CHECK(j.h(1, 1) == doctest::Approx(0.0));     // -sin y
}

TEST_CASE("jet chain rules for quotients powers and roots") {
  // f = sqrt(1 + x^2): f' = x/f, f'' = 1/f^3.
  ExprPtr e = parse_expression("sqrt(1 + x1^2)");
  double x = 0.75;
  Jet j = eval_jet(e, Vec{x}, 2);
  double f = std::sqrt(1 + x * x);
  CHECK(j.v == doctest::Approx(f).epsilon(1e-14));
  CHECK(j.g[0] == doctest::Approx(x / f).epsilon(1e-14));
  CHECK(j.h(0, 0) == doctest::Approx(1.0 / (f * f * f)).epsilon(1e-14));

  // f = 1/x at x = 4.
  Jet q = eval_jet(parse_expression("1/x1"), Vec{4.0}, 2);
  CHECK(q.v == doctest::Approx(0.25));
  CHECK(q.g[0] == doctest::Approx(-1.0 / 16));
  CHECK(q.h(0, 0) == doctest::Approx(2.0 / 64));

  // f = x^1.5 at x = 4 via real power.
  Jet p = eval_jet(parse_expression("x1^1.5"), Vec{4.0}, 2);
  CHECK(p.v == doctest::Approx(8.0));
  CHECK(p.g[0] == doctest::Approx(3.0));
  CHECK(p.h(0, 0) == doctest::Approx(0.375));
}

TEST_CASE("jet order propagation and partials") {
  Jet j = eval_jet(parse_expression("x1 * x2"), Vec{3.0, 5.0}, 2);
  CHECK(j.order == 2);
  Jet dx = j.partial(0);
  CHECK(dx.order == 1);
  CHECK(dx.v == 5.0);
  CHECK(dx.g[1] == 1.0);
  Jet dxy = dx.partial(1);
  CHECK(dxy.order == 0);
  CHECK(dxy.v == 1.0);
}

TEST_CASE("domain violations throw with context") {
  CHECK_THROWS_AS(eval_jet(parse_expression("1 / x1"), Vec{0.0}, 0), DomainError);
  CHECK_THROWS_AS(eval_jet(parse_expression("sqrt(x1)"), Vec{-1.0}, 0), DomainError);
  CHECK_THROWS_AS(eval_jet(parse_expression("x1 ^ 0.5"), Vec{-1.0}, 0), DomainError);
  // The error names the offending subexpression.
  try {
    eval_jet(parse_expression("1 + 1 / (x1 - 1)"), Vec{1.0}, 0);
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(e.subexpression().find("x1") != std::string::npos);
  }
  // Variable index beyond the point dimension.
  CHECK_THROWS_AS(eval_jet(parse_expression("x3"), Vec{1.0}, 0), Error);
}
