#include <doctest.h>

#include <cmath>

#include "vex/expr.hpp"

using namespace vex;

namespace {
double at(const std::string& src, double x, double y = 0.0) {
  return parse_expr(src)(Point{x, y});
}
}  // namespace

TEST_CASE("expression basics and precedence") {
  CHECK(at("2", 5.0) == 2.0);
  CHECK(at("1 + 2*3", 0.0) == 7.0);
  CHECK(at("(1 + 2)*3", 0.0) == 9.0);
  CHECK(at("2^3^2", 0.0) == 512.0);  // right-associative
  CHECK(at("-2^2", 0.0) == -4.0);
  CHECK(at("x", 3.5) == 3.5);
  CHECK(at("y", 1.0, -2.0) == -2.0);
  CHECK(at("|x|", -3.0) == 3.0);
  CHECK(at("r", 3.0, 4.0) == doctest::Approx(5.0));
  CHECK(at("pi", 0.0) == doctest::Approx(M_PI));
  CHECK(std::isinf(at("inf", 0.0)));
}

TEST_CASE("expression functions") {
  CHECK(at("log(e)", 0.0) == doctest::Approx(1.0));
  CHECK(at("exp(0)", 0.0) == 1.0);
  CHECK(at("abs(-4)", 0.0) == 4.0);
  CHECK(at("sqrt(9)", 0.0) == 3.0);
  CHECK(at("min(2, 5)", 0.0) == 2.0);
  CHECK(at("max(2, 5)", 0.0) == 5.0);
  CHECK(at("2 + 1/log(e + |x|)", 0.0) == doctest::Approx(3.0));
}

TEST_CASE("ite selects on comparisons") {
  CHECK(at("ite(x < 0, 2, 3)", -1.0) == 2.0);
  CHECK(at("ite(x < 0, 2, 3)", 1.0) == 3.0);
  CHECK(at("ite(x <= 1, 10, 20)", 1.0) == 10.0);
  CHECK(at("ite(x > 0, 1, 0) + ite(x >= 2, 1, 0)", 2.0) == 2.0);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_expr("2 +"), ParseError);
  CHECK_THROWS_AS(parse_expr("foo(1)"), ParseError);
  CHECK_THROWS_AS(parse_expr("(1 + 2"), ParseError);
  try {
    parse_expr("1 + @");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}
