#include <doctest.h>

#include <cmath>

#include "vex/exponents.hpp"
#include "vex/norms.hpp"
#include "vex/verify.hpp"

using namespace vex;

TEST_CASE("eval_exponent") {
  ExponentField p2 = constant_exponent(1, 2.0);
  CHECK(eval_exponent(p2, Point{3.0, 0.0}) == 2.0);

  ExponentField p = exponent_from_expr(1, "2 + 1/log(e + |x|)");
  CHECK(eval_exponent(p, Point{0.0, 0.0}) == doctest::Approx(3.0));

  ExponentField pinf = exponent_from_expr(1, "inf");
  CHECK(exponent_infinite_at(pinf, Point{0.3, 0.0}));
}

TEST_CASE("conjugate") {
  ExponentField p2 = constant_exponent(1, 2.0);
  CHECK(eval_exponent(conjugate(p2), Point{0.0, 0.0}) == 2.0);

  ExponentField p1 = constant_exponent(1, 1.0);
  CHECK(std::isinf(eval_exponent(conjugate(p1), Point{0.0, 0.0})));

  ExponentField step = exponent_from_expr(1, "ite(x < 0, 3, 4)");
  ExponentField stepc = conjugate(step);
  CHECK(eval_exponent(stepc, Point{-1.0, 0.0}) == doctest::Approx(1.5));
  CHECK(eval_exponent(stepc, Point{1.0, 0.0}) == doctest::Approx(4.0 / 3.0));

  // involution, including the 1 <-> inf convention
  ExponentField mixed = exponent_from_expr(1, "ite(x < 0, 1, 2 + |x|/8)");
  ExponentField back = conjugate(conjugate(mixed));
  for (double x : {-2.0, -0.1, 0.0, 0.5, 3.0}) {
    const double a = eval_exponent(mixed, Point{x, 0.0});
    const double b = eval_exponent(back, Point{x, 0.0});
    if (std::isinf(a))
      CHECK(std::isinf(b));
    else
      CHECK(b == doctest::Approx(a).epsilon(1e-12));
  }
}

TEST_CASE("sobolev_shift") {
  ExponentField p43 = constant_exponent(1, 4.0 / 3.0);
  ExponentField q = sobolev_shift(p43, 0.5, 1);
  CHECK(eval_exponent(q, Point{0.0, 0.0}) == doctest::Approx(4.0));

  ExponentField p = exponent_from_expr(1, "2 - 1/(2 + |x|)");
  ExponentField same = sobolev_shift(p, 0.0, 1);
  CHECK(eval_exponent(same, Point{0.7, 0.0}) ==
        eval_exponent(p, Point{0.7, 0.0}));

  // 1/q - 1/p + alpha/n = 0 pointwise
  ExponentField q2 = sobolev_shift(p, 0.25, 1);
  for (double x : {-3.0, 0.0, 1.3}) {
    const double lhs = 1.0 / eval_exponent(q2, Point{x, 0.0}) -
                       1.0 / eval_exponent(p, Point{x, 0.0}) + 0.25;
    CHECK(std::abs(lhs) <= 1e-12);
  }
  CHECK(q2.p_minus >= p.p_minus);

  CHECK_THROWS_AS(sobolev_shift(constant_exponent(1, 2.0), 0.5, 1),
                  ExponentOverflow);
}

TEST_CASE("check_lh0") {
  CHECK(check_lh0(constant_exponent(1, 2.0)).verdict == Verdict::pass);
  CHECK(check_lh0(constant_exponent(1, 2.0)).constant == 0.0);

  // the classic prototype 2 + 1/log(1/|x|) near zero (capped away from it)
  ExponentField lh = exponent_from_expr(1, "2 + max(0, min(1, -1/log(|x|)))");
  Lh0Options opt;
  opt.box_half = 0.25;  // probe near the origin, below the cap transition
  CheckReport rep = check_lh0(lh, opt);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.constant == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("check_lh0 on the square-root exponent") {
  // sup |p(x)-p(y)| (-log|x-y|) = max_d sqrt(d) log(1/d) = 2/e: the
  // square-root exponent is genuinely log-Holder continuous, so the
  // faithful checker passes with that constant.
  ExponentField sq = exponent_from_expr(1, "2 + sqrt(|x|)");
  CheckReport rep = check_lh0(sq);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.constant > 0.2);
  CHECK(rep.constant <= 2.0 / std::exp(1.0) + 0.01);
}

TEST_CASE("check_lh_inf") {
  CHECK(check_lh_inf(constant_exponent(1, 3.0), 3.0).verdict == Verdict::pass);
  CHECK(check_lh_inf(constant_exponent(1, 3.0), 3.0).constant == 0.0);

  ExponentField decay = exponent_from_expr(1, "2 + 1/log(e + |x|)");
  CheckReport good = check_lh_inf(decay, 2.0);
  CHECK(good.verdict == Verdict::pass);
  CHECK(good.constant == doctest::Approx(1.0).epsilon(0.05));

  ExponentField osc = make_exponent(
      1, [](const Point& x) { return 2.0 + std::sin(x.norm()) / 4.0; },
      "2 + sin(|x|)/4");
  CHECK(check_lh_inf(osc, 2.0).verdict == Verdict::fail);
}

TEST_CASE("check_n_inf") {
  CHECK(check_n_inf(constant_exponent(1, 2.0), 32.0, 2.0).verdict ==
        Verdict::pass);

  ExponentField decay = exponent_from_expr(1, "2 + 1/log(e + |x|)");
  CheckReport good = check_n_inf(decay, 32.0, 2.0);
  CHECK(good.verdict == Verdict::pass);
  CHECK(good.constant > 0.0);
  CHECK(std::isfinite(good.constant));

  // recurring unit-cell bump: the integrand is bounded below on a set of
  // infinite measure
  ExponentField periodic = make_exponent(
      1,
      [](const Point& x) {
        const double frac = x.norm() - std::floor(x.norm());
        return frac < 0.5 ? 2.5 : 2.0;
      },
      "periodic bump");
  CHECK(check_n_inf(periodic, 32.0, 2.0).verdict == Verdict::fail);
}

TEST_CASE("n_inf scaling monotonicity") {
  ExponentField decay = exponent_from_expr(1, "2 + 1/log(e + |x|)");
  REQUIRE(check_n_inf(decay, 32.0, 2.0).verdict == Verdict::pass);
  for (double beta : {1.0, 1.5, 2.0}) {
    ExponentField scaled = scale_exponent(decay, beta);
    CHECK(check_n_inf(scaled, 32.0, beta * 2.0).verdict == Verdict::pass);
  }
}

TEST_CASE("search_n_inf finds a witness") {
  ExponentField decay = exponent_from_expr(1, "2 + 1/log(e + |x|)");
  auto hit = search_n_inf(decay, {8.0, 32.0}, {3.0, 2.0});
  REQUIRE(hit.has_value());
  CHECK(hit->second == 2.0);
}

TEST_CASE("check_k0") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {512});
  FamilyPolicy pol;
  pol.shape = Shape::cube;
  pol.levels = 3;
  pol.r_min = 0.25;
  pol.r_max = 1.0;
  pol.center_stride = 64;
  BallFamily cubes = make_family(g, pol);

  CheckReport flat = check_k0(constant_exponent(1, 2.5), g, cubes);
  CHECK(flat.verdict == Verdict::pass);
  CHECK(flat.constant == doctest::Approx(1.0).epsilon(1e-6));

  ExponentField step = exponent_from_expr(1, "ite(x < 0, 2, 3)");
  CheckReport jump = check_k0(step, g, cubes);
  CHECK(jump.verdict == Verdict::pass);
  CHECK(jump.constant >= 1.0 - 1e-9);
  CHECK(std::isfinite(jump.constant));

  // Holder floor: the product is >= 1 on every cube
  for (const auto& [scale, value] : jump.evidence) CHECK(value >= 1.0 - 1e-9);
}

TEST_CASE("check_matrix_compat") {
  Matrix rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  ExponentField radial2 = make_exponent(
      2, [](const Point& x) { return 2.0 + 1.0 / std::log(M_E + x.norm()); },
      "radial");
  CHECK(check_matrix_compat(radial2, rot, CompatMode::eq).verdict ==
        Verdict::pass);

  ExponentField c = constant_exponent(1, 2.0);
  Matrix two = scalar_matrix(2.0);
  CHECK(check_matrix_compat(c, two, CompatMode::le).verdict == Verdict::pass);
  CHECK(check_matrix_compat(c, two, CompatMode::eq).verdict == Verdict::pass);

  ExponentField grow = make_exponent(
      1, [](const Point& x) { return 2.0 + std::min(4.0, std::abs(x[0])); },
      "increasing");
  CHECK(check_matrix_compat(grow, two, CompatMode::le).verdict ==
        Verdict::fail);

  Matrix sing = scalar_matrix(0.0);
  CHECK_THROWS_AS(check_matrix_compat(c, sing, CompatMode::le),
                  SingularMatrix);
}
