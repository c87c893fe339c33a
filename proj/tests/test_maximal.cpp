#include <doctest.h>

#include <cmath>

#include "vex/maximal.hpp"
#include "vex/norms.hpp"
#include "vex/suite.hpp"
#include "vex/verify.hpp"

using namespace vex;

namespace {

GridSpec grid_m2() { return make_grid(1, {{-2.0, 2.0}}, {512}); }

BallFamily dense_family(const GridSpec& g) {
  FamilyPolicy pol;
  pol.center_stride = 1;
  pol.levels = 10;
  pol.r_min = 2.0 * g.spacing(0);
  pol.r_max = 4.0;
  return make_family(g, pol);
}

SampledFunction chi01(const GridSpec& g) {
  return sample(g, [](const Point& x) {
    return (x[0] >= 0.0 && x[0] < 1.0) ? 1.0 : 0.0;
  });
}

Index cell_at(const GridSpec& g, double x) {
  return Index((x - g.lo[0]) / g.spacing(0));
}

}  // namespace

TEST_CASE("hl_maximal examples") {
  GridSpec g = grid_m2();
  BallFamily fam = dense_family(g);

  SampledFunction one = sample(g, [](const Point&) { return 1.0; });
  CHECK((hl_maximal(one, fam).values == 1.0).all());

  SampledFunction chi = chi01(g);
  SampledFunction m = hl_maximal(chi, fam);
  // at the right edge the best ball clips to [0, 2]: averages are taken over
  // the intersection with the domain, so the value is 1/2, not 1/4
  CHECK(m.values[g.cells() - 1] == doctest::Approx(0.5).epsilon(0.02));
  CHECK(m.values[cell_at(g, 0.5)] == 1.0);
}

TEST_CASE("fractional_maximal examples") {
  GridSpec g = grid_m2();
  BallFamily fam = dense_family(g);

  SampledFunction chi =
      sample(g, [](const Point& x) { return std::abs(x[0]) <= 1.0 ? 1.0 : 0.0; });
  // maximizer r = 1: (2r)^{-1/2} min(2r, 2)
  SampledFunction ma = fractional_maximal(chi, 0.5, fam);
  CHECK(ma.values[cell_at(g, 0.0)] ==
        doctest::Approx(std::sqrt(2.0)).epsilon(0.02));

  SampledFunction zero = sample(g, [](const Point&) { return 0.0; });
  CHECK((fractional_maximal(zero, 0.5, fam).values == 0.0).all());

  SampledFunction doubled(g, 2.0 * chi.values);
  CHECK((fractional_maximal(doubled, 0.5, fam).values ==
         2.0 * ma.values).all());
}

TEST_CASE("fractional_maximal_s examples") {
  GridSpec g = grid_m2();
  BallFamily fam = dense_family(g);
  SampledFunction chi =
      sample(g, [](const Point& x) { return std::abs(x[0]) <= 1.0 ? 1.0 : 0.0; });

  SampledFunction a = fractional_maximal_s(chi, 0.5, 1.0, fam);
  SampledFunction b = fractional_maximal(chi, 0.5, fam);
  CHECK((a.values == b.values).all());

  SampledFunction ms = fractional_maximal_s(chi, 0.25, 2.0, fam);
  CHECK(ms.values[cell_at(g, 0.0)] ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(0.02));

  SampledFunction cst = sample(g, [](const Point&) { return -0.6; });
  // (avg 0.36)^{1/2} = 0.6 up to the rounding of 0.36 and pow
  CHECK((fractional_maximal_s(cst, 0.0, 2.0, fam).values - 0.6)
            .abs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("sharp_maximal examples and domination") {
  GridSpec g = make_grid(1, {{-1.0, 1.0}}, {512});
  BallFamily fam = dense_family(g);

  SampledFunction cst = sample(g, [](const Point&) { return 2.5; });
  CHECK((sharp_maximal(cst, fam).values == 0.0).all());

  SampledFunction chi = chi01(g);
  SampledFunction sharp = sharp_maximal(chi, fam);
  CHECK(sharp.values[cell_at(g, 0.0)] == doctest::Approx(0.5).epsilon(0.04));

  for (const SuiteCase& c : standard_suite(1)) {
    const SampledFunction f = sample_case(g, c);
    const SampledFunction ms = sharp_maximal(f, fam);
    const SampledFunction m = hl_maximal(f, fam);
    CHECK((ms.values <= 2.0 * m.values).all());  // exact, no tolerance
  }
}

TEST_CASE("maximal invariants: sublinearity, homogeneity, lower bound") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {256});
  BallFamily fam = dense_family(g);
  std::vector<SuiteCase> suite = standard_suite(1);

  for (size_t i = 0; i + 1 < suite.size(); i += 2) {
    const SampledFunction f = sample_case(g, suite[i]);
    const SampledFunction h = sample_case(g, suite[i + 1]);
    const SampledFunction fh(g, f.values + h.values);
    for (double alpha : {0.0, 0.5}) {
      auto op = [&](const SampledFunction& u) {
        return alpha == 0.0 ? hl_maximal(u, fam)
                            : fractional_maximal(u, alpha, fam);
      };
      CHECK((op(fh).values <= op(f).values + op(h).values + 1e-12).all());
    }
  }

  const SampledFunction f = sample_case(g, suite[4]);
  for (double alpha : {0.0, 0.5}) {
    auto op = [&](const SampledFunction& u) {
      return alpha == 0.0 ? hl_maximal(u, fam)
                          : fractional_maximal(u, alpha, fam);
    };
    SampledFunction f2(g, 2.0 * f.values);
    CHECK((op(f2).values == 2.0 * op(f).values).all());
    SampledFunction f3(g, f.values / 3.0);
    CHECK((op(f3).values - op(f).values / 3.0).abs().maxCoeff() <= 1e-10);
  }

  // exact lower bound through the smallest containing ball
  const SampledFunction m = hl_maximal(f, fam);
  const Ball small{g.center(17), fam.balls.front().radius};
  CHECK(m.values[17] >= average_over_ball(f, small));
}

TEST_CASE("monotonicity in s") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {256});
  BallFamily fam = dense_family(g);
  for (const SuiteCase& c : standard_suite(1)) {
    const SampledFunction f = sample_case(g, c);
    const SampledFunction m1 = fractional_maximal_s(f, 0.25, 1.0, fam);
    const SampledFunction m2 = fractional_maximal_s(f, 0.25, 2.0, fam);
    const SampledFunction m3 = fractional_maximal_s(f, 0.25, 3.0, fam);
    CHECK((m1.values <= m2.values + 1e-10).all());
    CHECK((m2.values <= m3.values + 1e-10).all());
  }
}

TEST_CASE("rubio_de_francia") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {512});
  BallFamily fam = dense_family(g);
  ExponentField p2 = constant_exponent(1, 2.0);

  // geometric series: M fixes constants, so Rh = sum 2^-k for opnorm 1
  SampledFunction one = sample(g, [](const Point&) { return 1.0; });
  const int K = 8;
  SampledFunction r1 = rubio_de_francia(one, 1.0, K, fam);
  CHECK((r1.values == 2.0 * (1.0 - std::pow(2.0, -(K + 1)))).all());

  const std::vector<SampledFunction> probes = default_opnorm_probes(g);
  const double opnorm = estimate_maximal_opnorm(p2, probes, fam);
  CHECK(opnorm >= 2.0);  // safety factor on a ratio >= 1

  auto bump = sample(g, [](const Point& x) {
    const double u = 1.0 - x[0] * x[0];
    return u > 0.0 ? u * u * u : 0.0;
  });
  for (const SampledFunction& h : {chi01(g), bump}) {
    double tail = 0.0;
    SampledFunction rh = rubio_de_francia(h, opnorm, K, fam, &tail);
    CHECK((rh.values >= h.values.abs()).all());  // property (i), exact
    const double nh = luxemburg_norm(h, p2).value;
    const double nrh = luxemburg_norm(rh, p2).value;
    const double slack = 2.0 * std::pow(2.0 * opnorm, -K) * nh;
    CHECK(nrh <= 2.0 * nh + slack);  // property (ii)
    CHECK(a1_constant(Weight(rh), fam) <= 2.0 * opnorm * 1.1);  // (iii)
    CHECK(tail >= 0.0);
  }
}

TEST_CASE("estimate_maximal_opnorm edge cases") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {256});
  BallFamily fam = dense_family(g);
  ExponentField p2 = constant_exponent(1, 2.0);

  SampledFunction one = sample(g, [](const Point&) { return 1.0; });
  // M1 = 1 exactly, so the estimate is exactly the safety factor
  CHECK(estimate_maximal_opnorm(p2, {one}, fam) == doctest::Approx(2.0));

  CHECK_THROWS_AS(estimate_maximal_opnorm(p2, {}, fam), ConfigError);
  SampledFunction zero = sample(g, [](const Point&) { return 0.0; });
  CHECK_THROWS_AS(estimate_maximal_opnorm(p2, {zero}, fam), ZeroNorm);
}

TEST_CASE("uncovered cells are a configuration error") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {64});
  BallFamily fam;
  fam.balls = {Ball{Point{-1.9, 0.0}, 0.05}};
  SampledFunction f = chi01(g);
  CHECK_THROWS_AS(hl_maximal(f, fam), ConfigError);
}
