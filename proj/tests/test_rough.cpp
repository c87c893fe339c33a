#include <doctest.h>

#include <cmath>

#include "vex/rough.hpp"

using namespace vex;

namespace {

// Riesz potential I_{1/2} in dimension 1: one term, identity dilation.
KernelConfig riesz_half() {
  KernelConfig cfg;
  cfg.n = 1;
  cfg.alpha = 0.5;
  cfg.matrices = {scalar_matrix(1.0)};
  cfg.q_list = {2.0};
  cfg.omegas = {sphere_constant(1)};
  cfg.p_list = {4.0};
  cfg.s = s_from_p_list(cfg.p_list);
  return cfg;
}

// Two reflections, alpha = 0: K(x,y) = (|x-y| |x+y|)^{-1/2}.
KernelConfig classical_pair() {
  KernelConfig cfg;
  cfg.n = 1;
  cfg.alpha = 0.0;
  cfg.matrices = {scalar_matrix(1.0), scalar_matrix(-1.0)};
  cfg.q_list = {2.0, 2.0};
  cfg.omegas = {sphere_constant(1), sphere_constant(1)};
  cfg.p_list = {4.0, 4.0};
  cfg.s = s_from_p_list(cfg.p_list);
  return cfg;
}

SampledFunction chi01(const GridSpec& g) {
  return sample(g, [](const Point& x) {
    return (x[0] >= 0.0 && x[0] < 1.0) ? 1.0 : 0.0;
  });
}

}  // namespace

TEST_CASE("s_from_p_list") {
  CHECK(s_from_p_list({4.0, 4.0}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s_from_p_list({4.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(s_from_p_list({2.0, 2.0}), ConfigError);
}

TEST_CASE("eval_sphere") {
  SphereFunction one = sphere_constant(1, 1.0);
  CHECK(eval_sphere(one, Point{-3.0, 0.0}) == 1.0);

  SphereFunction sgn = sphere_from_name(1, "coordinate");
  CHECK(eval_sphere(sgn, Point{2.0, 0.0}) == 1.0);
  CHECK(eval_sphere(sgn, Point{-0.5, 0.0}) == -1.0);

  SphereFunction c2 = sphere_from_name(2, "cos");
  CHECK(std::abs(eval_sphere(c2, Point{0.0, 5.0})) <= 1e-12);
  CHECK(eval_sphere(c2, Point{3.0, 0.0}) == doctest::Approx(1.0));
  // degree-zero homogeneity
  CHECK(eval_sphere(c2, Point{1.0, 2.0}) ==
        doctest::Approx(eval_sphere(c2, Point{2.0, 4.0})).epsilon(1e-14));

  CHECK_THROWS_AS(eval_sphere(one, Point{0.0, 0.0}), OnSingularity);
  CHECK_THROWS_AS(sphere_from_table({1.0, 2.0}), ConfigError);
}

TEST_CASE("sphere_lp_norm") {
  // dimension 1 uses counting measure on {+1,-1}
  SphereFunction one = sphere_constant(1, 1.0);
  for (double p : {1.0, 2.0, 4.0})
    CHECK(sphere_lp_norm(one, p) ==
          doctest::Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-12));

  // ||cos||_{L^2(S^1)} = sqrt(pi)
  SphereFunction c2 = sphere_from_name(2, "cos");
  CHECK(sphere_lp_norm(c2, 2.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-3));
}

TEST_CASE("modulus_of_continuity") {
  SphereFunction cst = sphere_constant(2, 3.0);
  CHECK(modulus_of_continuity(cst, 2.0, 0.25) == 0.0);

  SphereFunction c2 = sphere_from_name(2, "cos");
  double prev = 0.0;
  for (double t : {1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0}) {
    const double m = modulus_of_continuity(c2, 2.0, t);
    CHECK(m > 0.0);
    CHECK(m <= 4.0 * t);  // Lipschitz on the circle
    CHECK(m >= prev);
    prev = m;
  }

  CHECK_THROWS_AS(modulus_of_continuity(c2, 2.0, 0.0), ConfigError);
}

TEST_CASE("check_h1") {
  SphereFunction one = sphere_constant(1, 1.0);
  CheckReport rep = check_h1(one, 2.0, 4.0);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.constant == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(check_h1(one, 4.0, 2.0), ConfigError);
}

TEST_CASE("check_h2_dini") {
  CheckReport cst = check_h2_dini(sphere_constant(2, 2.0), 2.0, 1.0 / 64.0);
  CHECK(cst.verdict == Verdict::pass);
  CHECK(cst.notes.find("vanishes") != std::string::npos);

  CheckReport smooth =
      check_h2_dini(sphere_from_name(2, "cos"), 2.0, 1.0 / 64.0);
  CHECK(smooth.verdict == Verdict::pass);
  CHECK(std::isfinite(smooth.constant));

  SphereFunction odd;
  odd.dim = 1;
  odd.at_plus = 1.0;
  odd.at_minus = -1.0;
  CheckReport deg = check_h2_dini(odd, 2.0, 1.0 / 64.0);
  CHECK(deg.verdict == Verdict::pass);
  CHECK(deg.notes.find("two-point") != std::string::npos);

  CHECK_THROWS_AS(check_h2_dini(odd, 2.0, 0.0), ConfigError);
}

TEST_CASE("validate_kernel") {
  CHECK(validate_kernel(riesz_half()).verdict == Verdict::pass);
  CHECK(validate_kernel(classical_pair()).verdict == Verdict::pass);

  KernelConfig bad = classical_pair();
  bad.p_list = {2.0, 4.0};  // p_1 <= q_1
  bad.s = 2.0;
  CheckReport rep = validate_kernel(bad);
  CHECK(rep.verdict == Verdict::fail);
  CHECK(rep.notes.find("violated") != std::string::npos);

  bad = classical_pair();
  bad.q_list = {2.0, 3.0};  // budget: 1/2 + 1/3 != 1 - alpha
  CHECK(validate_kernel(bad).verdict == Verdict::fail);

  bad = riesz_half();
  bad.alpha = 0.0;  // alpha = 0 requires m >= 2 (and breaks the budget)
  CHECK(validate_kernel(bad).verdict == Verdict::fail);

  bad = classical_pair();
  bad.matrices = {scalar_matrix(1.0), scalar_matrix(1.0)};  // A_1 - A_2 = 0
  CHECK(validate_kernel(bad).verdict == Verdict::fail);
}

TEST_CASE("kernel_eval") {
  KernelConfig cfg = classical_pair();
  CHECK(kernel_eval(cfg, Point{2.0, 0.0}, Point{1.0, 0.0}) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

  // homogeneity of degree -(n - alpha)
  for (const KernelConfig& k : {classical_pair(), riesz_half()}) {
    const double base = kernel_eval(k, Point{2.0, 0.0}, Point{0.5, 0.0});
    const double scaled = kernel_eval(k, Point{4.0, 0.0}, Point{1.0, 0.0});
    CHECK(scaled == doctest::Approx(std::pow(2.0, -(k.n - k.alpha)) * base)
                        .epsilon(1e-12));
  }

  CHECK_THROWS_AS(
      kernel_eval(riesz_half(), Point{1.0, 0.0}, Point{1.0, 0.0}, 1e-6),
      OnSingularity);
}

TEST_CASE("apply_T_alpha_at: Riesz potential of the unit interval") {
  // I_{1/2} chi_[0,1] (0) = integral_0^1 y^{-1/2} dy = 2
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {1024});
  SampledFunction f = chi01(g);
  KernelConfig cfg = riesz_half();

  double prev = 0.0;
  double last = 0.0;
  for (int L : {4, 5, 6}) {
    QuadOptions quad;
    quad.refine_levels = L;
    last = apply_T_alpha_at(f, cfg, Point{0.0, 0.0}, quad);
    CHECK(last >= prev);  // refinement only recovers positive mass
    prev = last;
  }
  CHECK(last == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("apply_T_alpha: linearity and zero") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {256});
  SampledFunction f = chi01(g);
  SampledFunction h = sample(g, [](const Point& x) {
    const double u = 1.0 - x[0] * x[0];
    return u > 0.0 ? u * u : 0.0;
  });
  KernelConfig cfg = classical_pair();
  QuadOptions quad;
  quad.refine_levels = 4;

  SampledFunction comb(g, 2.0 * f.values - 0.5 * h.values);
  for (double x : {-1.3, -0.2, 0.4, 1.7}) {
    const Point pt{x, 0.0};
    const double lhs = apply_T_alpha_at(comb, cfg, pt, quad);
    const double rhs = 2.0 * apply_T_alpha_at(f, cfg, pt, quad) -
                       0.5 * apply_T_alpha_at(h, cfg, pt, quad);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }

  SampledFunction zero = sample(g, [](const Point&) { return 0.0; });
  CHECK(apply_T_alpha_at(zero, cfg, Point{0.3, 0.0}, quad) == 0.0);
}

TEST_CASE("apply_T_alpha: symmetry and diagnostics") {
  GridSpec g = make_grid(1, {{-2.0, 2.0}}, {128});
  SampledFunction f = sample(g, [](const Point& x) {
    const double u = 1.0 - x[0] * x[0];
    return u > 0.0 ? u * u * u : 0.0;
  });
  KernelConfig cfg = classical_pair();
  QuadOptions quad;
  quad.refine_levels = 4;

  TAlphaResult res = apply_T_alpha(f, cfg, quad);
  CHECK((res.error_indicator >= 0.0).all());
  CHECK(res.dropped_fraction >= 0.0);
  CHECK(res.dropped_fraction <= quad.max_dropped_fraction);

  // even data under {Id, -Id}: Tf is even up to summation roundoff
  const double scale = res.result.values.abs().maxCoeff();
  for (Index i = 0; i < g.cells(); ++i) {
    const double diff =
        std::abs(res.result.values[i] - res.result.values[g.cells() - 1 - i]);
    CHECK(diff <= 1e-10 * scale);
  }

  // zero tolerance for the excluded shell must reject this configuration
  QuadOptions strict = quad;
  strict.max_dropped_fraction = 0.0;
  CHECK_THROWS_AS(apply_T_alpha(f, cfg, strict), ConfigError);

  KernelConfig bad = cfg;
  bad.p_list = {2.0, 4.0};
  CHECK_THROWS_AS(apply_T_alpha(f, bad, quad), ConfigError);

  GridSpec g2 = make_grid(2, {{-1.0, 1.0}, {-1.0, 1.0}}, {8, 8});
  SampledFunction f2 = sample(g2, [](const Point&) { return 1.0; });
  CHECK_THROWS_AS(apply_T_alpha(f2, cfg, quad), ConfigError);
}
