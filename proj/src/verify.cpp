#include "vex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "vex/expr.hpp"

namespace vex {

using nlohmann::json;

const char* bound_verdict_name(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::bounded_stable:
      return "bounded-stable";
    case BoundVerdict::growing:
      return "growing";
    default:
      return "inconclusive";
  }
}

uint64_t fnv1a(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

BallFamily make_family(const GridSpec& grid, const FamilyPolicy& policy) {
  FamilyPolicy p = policy;
  double diam = grid.hi[0] - grid.lo[0];
  if (grid.dim == 2) diam = std::hypot(diam, grid.hi[1] - grid.lo[1]);
  if (p.r_max <= 0.0) p.r_max = diam;
  if (p.r_min <= 0.0) {
    double h = grid.spacing(0);
    if (grid.dim == 2) h = std::max(h, grid.spacing(1));
    p.r_min = std::min(4.0 * h, p.r_max);
  }
  if (p.levels <= 0)
    p.levels = 1 + int(std::floor(std::log2(p.r_max / p.r_min) + 1e-12));
  RadiiPolicy radii{p.levels, p.r_min, p.r_max};
  return ball_family(grid, radii, p.center_stride, p.shape);
}

double interpolate(const SampledFunction& f, const Point& x) {
  const GridSpec& g = f.grid;
  auto axis = [&](int a, Index* i0, double* frac) {
    const double h = g.spacing(a);
    const double u = (x[a] - (g.lo[a] + 0.5 * h)) / h;
    double base = std::floor(u);
    double fr = u - base;
    Index i = Index(base);
    if (i < 0) {
      i = 0;
      fr = 0.0;
    }
    if (i > g.res[a] - 2) {
      i = g.res[a] - 2;
      fr = 1.0;
    }
    if (g.res[a] < 2) {
      i = 0;
      fr = 0.0;
    }
    *i0 = i;
    *frac = fr;
  };
  Index ix;
  double fx;
  axis(0, &ix, &fx);
  if (g.dim == 1) {
    const Index ix1 = std::min<Index>(ix + 1, g.res[0] - 1);
    return f.values[ix] * (1.0 - fx) + f.values[ix1] * fx;
  }
  Index iy;
  double fy;
  axis(1, &iy, &fy);
  const Index ix1 = std::min<Index>(ix + 1, g.res[0] - 1);
  const Index iy1 = std::min<Index>(iy + 1, g.res[1] - 1);
  const double v00 = f.values[g.index(ix, iy)];
  const double v10 = f.values[g.index(ix1, iy)];
  const double v01 = f.values[g.index(ix, iy1)];
  const double v11 = f.values[g.index(ix1, iy1)];
  return (v00 * (1.0 - fx) + v10 * fx) * (1.0 - fy) +
         (v01 * (1.0 - fx) + v11 * fx) * fy;
}

namespace {

BoundVerdict judge_trend(const std::vector<double>& trend, double stability) {
  if (trend.size() < 2) return BoundVerdict::inconclusive;
  bool stable = true;
  for (size_t i = 1; i < trend.size(); ++i) {
    const double rel = std::abs(trend[i] - trend[i - 1]) /
                       std::max(std::abs(trend[i - 1]), 1e-300);
    stable = stable && rel <= stability;
  }
  if (stable) return BoundVerdict::bounded_stable;
  if (trend.back() > trend[trend.size() - 2] * (1.0 + stability))
    return BoundVerdict::growing;
  return BoundVerdict::inconclusive;
}

std::vector<GridSpec> refinement_grids(const GridSpec& finest, int levels) {
  std::vector<GridSpec> grids;
  for (int k = levels - 1; k >= 0; --k) {
    GridSpec g = finest;
    g.res[0] = std::max<int>(8, finest.res[0] >> k);
    if (g.dim == 2) g.res[1] = std::max<int>(8, finest.res[1] >> k);
    grids.push_back(g);
  }
  return grids;
}

}  // namespace

InequalityReport verify_strong_bound(
    const std::string& check_id, const OpBuilder& op, const ExponentField& p,
    const ExponentField& q, const std::vector<SuiteCase>& suite,
    const std::vector<GridSpec>& grids, const FamilyPolicy& fam, double tol,
    double stability) {
  if (suite.empty()) throw ConfigError("verify_strong_bound: empty suite");
  if (grids.empty()) throw ConfigError("verify_strong_bound: no grids");
  InequalityReport rep;
  rep.check = check_id;
  for (const GridSpec& grid : grids) {
    const BallFamily balls = make_family(grid, fam);
    auto opfn = op(grid, balls);
    double cmax = 0.0;
    std::vector<CaseRow> rows;
    for (const SuiteCase& c : suite) {
      CaseRow row;
      row.id = c.id;
      try {
        const SampledFunction f = sample_case(grid, c);
        const double nf = luxemburg_norm(f, p, tol).value;
        if (nf == 0.0) {
          row.valid = false;
          row.note = "zero input norm";
        } else {
          const SampledFunction opf = opfn(f);
          const double nq = luxemburg_norm(opf, q, tol).value;
          row.lhs = nq;
          row.rhs = nf;
          row.ratio = nq / nf;
          cmax = std::max(cmax, row.ratio);
        }
      } catch (const Error& e) {
        row.valid = false;
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
    rep.trend.push_back(cmax);
    rep.cases = std::move(rows);
  }
  rep.constant = rep.trend.back();
  rep.verdict = judge_trend(rep.trend, stability);
  rep.notes = "constant = max ||Op f||_q / ||f||_p over the suite";
  return rep;
}

InequalityReport verify_weak_bound(
    const std::string& check_id, const OpBuilder& op, const ExponentField& p,
    const ExponentField& q, const std::vector<SuiteCase>& suite,
    const std::vector<GridSpec>& grids, const FamilyPolicy& fam, double tol,
    double stability, int lambda_levels) {
  if (suite.empty()) throw ConfigError("verify_weak_bound: empty suite");
  if (grids.empty()) throw ConfigError("verify_weak_bound: no grids");
  InequalityReport rep;
  rep.check = check_id;
  const Eigen::ArrayXd* unused = nullptr;
  (void)unused;
  for (const GridSpec& grid : grids) {
    const BallFamily balls = make_family(grid, fam);
    auto opfn = op(grid, balls);
    const Eigen::ArrayXd qv = exponent_values(q, grid);
    double cmax = 0.0;
    std::vector<CaseRow> rows;
    for (const SuiteCase& c : suite) {
      CaseRow row;
      row.id = c.id;
      try {
        const SampledFunction f = sample_case(grid, c);
        const double nf = luxemburg_norm(f, p, tol).value;
        if (nf == 0.0) {
          row.valid = false;
          row.note = "zero input norm";
        } else {
          const SampledFunction opf = opfn(f);
          const double top = opf.values.abs().maxCoeff();
          double lhs = 0.0;
          for (int j = 0; j < lambda_levels && top > 0.0; ++j) {
            const double lambda = top * std::pow(2.0, 1 - j);
            SampledFunction chi(
                grid, (opf.values.abs() > lambda).cast<double>(),
                "superlevel");
            if ((chi.values == 0.0).all()) continue;
            const double nchi =
                luxemburg_norm(chi, qv, grid.cell_volume(), tol).value;
            lhs = std::max(lhs, lambda * nchi);
          }
          row.lhs = lhs;
          row.rhs = nf;
          row.ratio = lhs / nf;
          cmax = std::max(cmax, row.ratio);
        }
      } catch (const Error& e) {
        row.valid = false;
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
    rep.trend.push_back(cmax);
    rep.cases = std::move(rows);
  }
  rep.constant = rep.trend.back();
  rep.verdict = judge_trend(rep.trend, stability);
  rep.notes =
      "constant = max_f sup_lambda ||lambda chi_{|Op f|>lambda}||_q / ||f||_p"
      " over 32 dyadic lambda levels";
  return rep;
}

InequalityReport verify_msharp_pointwise(
    const KernelConfig& cfg, const std::vector<SuiteCase>& suite,
    const std::vector<GridSpec>& grids, const FamilyPolicy& fam,
    const QuadOptions& quad, double stability) {
  if (suite.empty())
    throw ConfigError("verify_msharp_pointwise: empty suite");
  InequalityReport rep;
  rep.check = "msharp_pointwise";
  std::vector<Matrix> inverses;
  for (const Matrix& a : cfg.matrices)
    inverses.push_back(inverse_n(a, cfg.n));
  bool any_valid_case = false;
  for (const GridSpec& grid : grids) {
    const BallFamily balls = make_family(grid, fam);
    double cmax = 0.0;
    std::vector<CaseRow> rows;
    for (const SuiteCase& c : suite) {
      CaseRow row;
      row.id = c.id;
      try {
        const SampledFunction f = sample_case(grid, c);
        if ((f.values == 0.0).all()) {
          row.valid = false;
          row.note = "identically zero: vacuous";
          rows.push_back(std::move(row));
          continue;
        }
        const SampledFunction tf = apply_T_alpha(f, cfg, quad).result;
        const SampledFunction sharp = sharp_maximal(tf, balls);
        const SampledFunction ms =
            fractional_maximal_s(f, cfg.alpha, cfg.s, balls);
        Eigen::ArrayXd denom(grid.cells());
        for (Index i = 0; i < grid.cells(); ++i) {
          const Point x = grid.center(i);
          double d = 0.0;
          for (const Matrix& ainv : inverses)
            d += interpolate(ms, apply_n(ainv, x, cfg.n));
          denom[i] = d;
        }
        const double dmax = denom.maxCoeff();
        const double tiny = 1e-12 * std::max(dmax, 1e-300);
        Index support = 0, vanished = 0;
        double ratio = 0.0, lhs_at = 0.0, rhs_at = 0.0;
        for (Index i = 0; i < grid.cells(); ++i) {
          if (f.values[i] != 0.0) {
            ++support;
            if (denom[i] <= tiny) ++vanished;
          }
          if (denom[i] > tiny) {
            const double r = sharp.values[i] / denom[i];
            if (r > ratio) {
              ratio = r;
              lhs_at = sharp.values[i];
              rhs_at = denom[i];
            }
          }
        }
        if (support == 0 || 2 * vanished > support) {
          row.valid = false;
          row.note = "denominator vanished on most of the support";
        } else {
          row.lhs = lhs_at;
          row.rhs = rhs_at;
          row.ratio = ratio;
          cmax = std::max(cmax, ratio);
          any_valid_case = true;
        }
      } catch (const Error& e) {
        row.valid = false;
        row.note = e.what();
      }
      rows.push_back(std::move(row));
    }
    rep.trend.push_back(cmax);
    rep.cases = std::move(rows);
  }
  rep.constant = rep.trend.empty() ? 0.0 : rep.trend.back();
  rep.verdict = any_valid_case ? judge_trend(rep.trend, stability)
                               : BoundVerdict::inconclusive;
  rep.notes =
      "constant = max over cells of M#(T f)(x) / sum_i M_{alpha,s} f(A_i^-1 x)";
  return rep;
}

InequalityReport verify_composition(const ExponentField& p, const Matrix& a,
                                    CompatMode mode,
                                    const std::vector<SuiteCase>& suite,
                                    const std::vector<GridSpec>& grids,
                                    double tol, double slack) {
  if (suite.empty()) throw ConfigError("verify_composition: empty suite");
  if (grids.empty()) throw ConfigError("verify_composition: no grids");
  if (!invertible(a, p.dim))
    throw SingularMatrix("verify_composition: singular matrix");
  if (mode == CompatMode::eq &&
      check_matrix_compat(p, a, CompatMode::eq).verdict != Verdict::pass)
    throw ConfigError(
        "verify_composition: explicit-constant mode requires p(Ax) = p(x)");
  const double d_det = std::abs(det_n(inverse_n(a, p.dim), p.dim));
  const double bound =
      std::max(1.0, std::pow(d_det, 1.0 / p.p_minus));
  InequalityReport rep;
  rep.check = mode == CompatMode::eq ? "prop3b" : "prop3a";
  bool violated = false;
  for (const GridSpec& grid : grids) {
    double cmax = 0.0;
    std::vector<CaseRow> rows;
    for (const SuiteCase& c : suite) {
      CaseRow row;
      row.id = c.id;
      const SampledFunction f = sample_case(grid, c);
      const SampledFunction fa = sample(
          grid, [&](const Point& x) { return c.fn(apply_n(a, x, p.dim)); },
          c.id + " composed");
      const double nf = luxemburg_norm(f, p, tol).value;
      if (nf == 0.0) {
        row.valid = false;
        row.note = "zero input norm";
        rows.push_back(std::move(row));
        continue;
      }
      const double nfa = luxemburg_norm(fa, p, tol).value;
      row.lhs = nfa;
      row.rhs = mode == CompatMode::eq ? bound * nf : nf;
      row.ratio = nfa / nf;
      cmax = std::max(cmax, row.ratio);
      if (mode == CompatMode::eq && nfa > bound * nf * (1.0 + slack)) {
        violated = true;
        row.note = "exceeds the explicit constant";
      }
      rows.push_back(std::move(row));
    }
    rep.trend.push_back(cmax);
    rep.cases = std::move(rows);
  }
  rep.constant = rep.trend.back();
  if (mode == CompatMode::eq) {
    rep.verdict =
        violated ? BoundVerdict::growing : BoundVerdict::bounded_stable;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", bound);
    rep.notes = std::string("explicit bound max(1, D^{1/p_minus}) = ") + buf;
  } else {
    rep.verdict = judge_trend(rep.trend, 0.2);
    rep.notes = "empirical constant for ||f(A.)||_p / ||f||_p";
  }
  return rep;
}

namespace {

void audit_clause(CheckReport& agg, int idx, const std::string& name,
                  Verdict v, double value) {
  agg.evidence.emplace_back(double(idx), v == Verdict::pass ? 1.0 : 0.0);
  agg.notes += name + ": " + verdict_name(v) + "; ";
  if (v == Verdict::fail) agg.verdict = Verdict::fail;
  if (v == Verdict::inconclusive && agg.verdict == Verdict::pass)
    agg.verdict = Verdict::inconclusive;
  (void)value;
}

}  // namespace

CheckReport audit_hypotheses(const ExperimentConfig& config) {
  CheckReport agg;
  agg.verdict = Verdict::pass;
  int idx = 0;
  double s = 1.0;
  if (config.kernel) {
    const KernelConfig& k = *config.kernel;
    s = k.s;
    const CheckReport vk = validate_kernel(k);
    audit_clause(agg, idx++, "kernel", vk.verdict, vk.constant);
    if (vk.verdict != Verdict::pass) agg.notes += "[" + vk.notes + "] ";
    for (int i = 0; i < k.m(); ++i) {
      CheckReport h1;
      try {
        h1 = check_h1(k.omegas[i], k.q_list[i], k.p_list[i]);
      } catch (const Error& e) {
        h1.verdict = Verdict::fail;
        h1.notes = e.what();
      }
      audit_clause(agg, idx++, "H1[" + std::to_string(i) + "]", h1.verdict,
                   h1.constant);
      const CheckReport h2 = check_h2_dini(k.omegas[i], k.p_list[i], 1.0 / 64);
      audit_clause(agg, idx++, "H2[" + std::to_string(i) + "]", h2.verdict,
                   h2.constant);
    }
    for (int i = 0; i < k.m(); ++i) {
      const CheckReport mc =
          check_matrix_compat(config.p, k.matrices[i], config.compat_mode);
      audit_clause(agg, idx++, "compat[" + std::to_string(i) + "]",
                   mc.verdict, mc.constant);
    }
  } else if (config.comp_matrix) {
    const CheckReport mc =
        check_matrix_compat(config.p, *config.comp_matrix, config.compat_mode);
    audit_clause(agg, idx++, "compat", mc.verdict, mc.constant);
  }

  const bool range_ok =
      1.0 <= s && s <= config.p.p_minus && config.p.p_minus <= config.p.p_plus &&
      (config.alpha <= 0.0 ||
       config.p.p_plus < double(config.n) / config.alpha);
  audit_clause(agg, idx++, "range 1<=s<=p-<=p+<n/alpha",
               range_ok ? Verdict::pass : Verdict::fail, 0.0);

  if (range_ok) {
    const ExponentField q = sobolev_shift(config.p, config.alpha, config.n);
    const auto qfn = q.fn;
    const double sdiv = s;
    ExponentField qs = make_exponent(
        config.p.dim,
        [qfn, sdiv](const Point& x) { return qfn(x) / sdiv; },
        "q(.)/s");
    double qs_inf;
    if (q.p_infinity)
      qs_inf = *q.p_infinity / s;
    else
      qs_inf = qs.fn(Point{1e6, 0.0});
    const CheckReport ni = check_n_inf(qs, config.lambda_inf, qs_inf);
    audit_clause(agg, idx++, "N_inf(q/s)", ni.verdict, ni.constant);

    FamilyPolicy cubes;
    cubes.shape = Shape::cube;
    cubes.levels = 3;
    const double width = config.grid.hi[0] - config.grid.lo[0];
    cubes.r_max = width / 4.0;
    cubes.r_min = width / 16.0;
    cubes.center_stride = std::max<int>(1, config.grid.res[0] / 8);
    const CheckReport k0 =
        check_k0(qs, config.grid, make_family(config.grid, cubes));
    audit_clause(agg, idx++, "K_0(q/s)", k0.verdict, k0.constant);
  }
  agg.constant = agg.verdict == Verdict::pass ? 1.0 : 0.0;
  return agg;
}

namespace {

InequalityReport verify_lemma2(const ExponentField& p, double stability) {
  InequalityReport rep;
  rep.check = "lemma2";
  const double r0 = 1.0;
  const int levels = 12;
  const int samples = 256;
  bool all_geometric = true;
  std::vector<double> slowest_partial;
  const std::vector<double> lambdas = {1.25, 2.0, 4.0};
  for (size_t li = 0; li < lambdas.size(); ++li) {
    const double lambda = lambdas[li];
    std::vector<double> contrib;
    double r = r0;
    for (int k = 0; k < levels; ++k) {
      double block = 0.0;
      const double dr = r / samples;
      for (int j = 0; j < samples; ++j) {
        const double rad = r + (j + 0.5) * dr;
        for (double sgn : {1.0, -1.0}) {
          Point x{sgn * rad, 0.0};
          if (p.dim == 2) x = Point{rad, 0.0};  // radial probe suffices
          const double pv = p.fn(x);
          if (std::isinf(pv)) continue;
          double cell = std::pow(1.0 / lambda, pv) * dr;
          if (p.dim == 2) cell *= 2.0 * M_PI * rad;
          block += cell;
          if (p.dim == 2) break;
        }
      }
      contrib.push_back(block);
      r *= 2.0;
    }
    double total = 0.0;
    for (double v : contrib) total += v;
    bool geometric = true;
    for (size_t j = contrib.size() - 3; j < contrib.size(); ++j) {
      const double prev = contrib[j - 1];
      geometric = geometric &&
                  (prev <= 0.0 ? contrib[j] <= 0.0
                               : contrib[j] / prev <= 0.9);
    }
    all_geometric = all_geometric && geometric;
    CaseRow row;
    char buf[32];
    std::snprintf(buf, sizeof buf, "lambda=%g", lambda);
    row.id = buf;
    row.lhs = total;
    row.rhs = 1.0;
    row.ratio = total;
    row.note = geometric ? "annulus contributions decay geometrically"
                         : "no geometric decay";
    rep.cases.push_back(std::move(row));
    if (li == 0) {
      double part = 0.0;
      for (double v : contrib) {
        part += v;
        slowest_partial.push_back(part);
      }
    }
  }
  rep.trend = {slowest_partial[slowest_partial.size() / 2],
               slowest_partial.back()};
  rep.constant = 0.0;
  for (const CaseRow& row : rep.cases)
    rep.constant = std::max(rep.constant, row.ratio);
  rep.verdict = all_geometric &&
                        judge_trend(rep.trend, stability) ==
                            BoundVerdict::bounded_stable
                    ? BoundVerdict::bounded_stable
                    : BoundVerdict::growing;
  rep.notes =
      "modular of the constant 1/lambda over growing truncations of"
      " {|x| > 1}; finite limit evidences 1 in L^{p(.)}";
  return rep;
}

}  // namespace

std::vector<InequalityReport> run_experiment(const ExperimentConfig& config) {
  std::vector<InequalityReport> reports;
  if (config.checks.empty()) return reports;

  const bool needs_kernel =
      std::any_of(config.checks.begin(), config.checks.end(),
                  [](const std::string& c) {
                    return c.rfind("thm", 0) == 0 || c == "msharp_pointwise";
                  });
  if (needs_kernel && !config.kernel)
    throw ConfigError("run_experiment: requested check needs a kernel config");
  const bool needs_matrix =
      std::any_of(config.checks.begin(), config.checks.end(),
                  [](const std::string& c) { return c.rfind("prop3", 0) == 0; });
  if (needs_matrix && !config.comp_matrix)
    throw ConfigError("run_experiment: prop3 checks need a matrix");

  CheckReport audit;
  bool audited = false;
  if (!config.waive_hypotheses) {
    audit = audit_hypotheses(config);
    audited = true;
    if (audit.verdict == Verdict::fail)
      throw ConfigError("run_experiment: hypothesis audit failed: " +
                        audit.notes);
  }

  const std::vector<GridSpec> grids =
      refinement_grids(config.grid, std::max(1, config.refine_levels));
  const std::vector<SuiteCase> suite =
      suite_by_id(config.suite_id, config.grid.dim, config.suite_scale);

  const ExponentField q =
      sobolev_shift(config.p, config.alpha, config.n);

  OpBuilder maximal_op = [&](const GridSpec&, const BallFamily& balls) {
    const double alpha = config.alpha;
    return [alpha, balls](const SampledFunction& f) {
      return alpha == 0.0 ? hl_maximal(f, balls)
                          : fractional_maximal(f, alpha, balls);
    };
  };
  OpBuilder t_alpha_op = [&](const GridSpec&, const BallFamily&) {
    const KernelConfig k = *config.kernel;
    const QuadOptions quad = config.quad;
    return [k, quad](const SampledFunction& f) {
      return apply_T_alpha(f, k, quad).result;
    };
  };

  for (const std::string& check : config.checks) {
    InequalityReport rep;
    if (check == "lemma1_strong") {
      rep = verify_strong_bound(check, maximal_op, config.p, q, suite, grids,
                                config.family, config.tol,
                                config.stability_threshold);
    } else if (check == "lemma1_weak") {
      rep = verify_weak_bound(check, maximal_op, config.p, q, suite, grids,
                              config.family, config.tol,
                              config.stability_threshold);
    } else if (check == "lemma2") {
      rep = verify_lemma2(config.p, config.stability_threshold);
    } else if (check == "prop3a") {
      rep = verify_composition(config.p, *config.comp_matrix, CompatMode::le,
                               suite, grids, config.tol);
    } else if (check == "prop3b") {
      rep = verify_composition(config.p, *config.comp_matrix, CompatMode::eq,
                               suite, grids, config.tol);
    } else if (check == "thm1b_strong" || check == "thm2b_strong") {
      rep = verify_strong_bound(check, t_alpha_op, config.p, q, suite, grids,
                                config.family, config.tol,
                                config.stability_threshold);
    } else if (check == "thm1a_weak" || check == "thm2a_weak") {
      rep = verify_weak_bound(check, t_alpha_op, config.p, q, suite, grids,
                              config.family, config.tol,
                              config.stability_threshold);
    } else if (check == "msharp_pointwise") {
      rep = verify_msharp_pointwise(*config.kernel, suite, grids,
                                    config.family, config.quad,
                                    config.stability_threshold);
    } else if (check == "conditions_audit") {
      const CheckReport a = audited ? audit : audit_hypotheses(config);
      rep.check = check;
      rep.constant = a.constant;
      rep.trend = {a.constant, a.constant};
      rep.notes = a.notes;
      rep.verdict = a.verdict == Verdict::pass
                        ? BoundVerdict::bounded_stable
                        : (a.verdict == Verdict::fail
                               ? BoundVerdict::growing
                               : BoundVerdict::inconclusive);
      for (const auto& [clause, ok] : a.evidence) {
        CaseRow row;
        row.id = "clause " + std::to_string(int(clause));
        row.lhs = ok;
        row.rhs = 1.0;
        row.ratio = ok;
        rep.cases.push_back(std::move(row));
      }
    } else {
      throw ConfigError("run_experiment: unknown check '" + check + "'");
    }
    if (config.waive_hypotheses)
      rep.notes += " [exploratory: hypothesis audit waived]";
    rep.config_hash = config.hash;
    reports.push_back(std::move(rep));
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

Matrix parse_matrix(const json& j, int n) {
  std::vector<double> v = j.get<std::vector<double>>();
  Matrix m = identity_matrix();
  if (n == 1) {
    if (v.size() != 1)
      throw ConfigError("matrix: expected 1 entry for n = 1");
    m(0, 0) = v[0];
  } else {
    if (v.size() != 4)
      throw ConfigError("matrix: expected 4 row-major entries for n = 2");
    m << v[0], v[1], v[2], v[3];
  }
  return m;
}

SphereFunction parse_omega(const json& j, int n) {
  if (j.is_string()) return sphere_from_name(n, j.get<std::string>());
  if (j.is_object()) {
    if (j.contains("table"))
      return sphere_from_table(j["table"].get<std::vector<double>>());
    if (j.contains("plus")) {
      SphereFunction s = sphere_constant(1, 1.0);
      s.at_plus = j["plus"].get<double>();
      s.at_minus = j.value("minus", s.at_plus);
      s.desc = "two-point";
      return s;
    }
  }
  throw ConfigError("kernel: omega must be a name, a table, or plus/minus");
}

KernelConfig parse_kernel(const json& j, int n, double default_alpha) {
  KernelConfig k;
  k.n = n;
  k.alpha = j.value("alpha", default_alpha);
  for (const json& mj : j.at("matrices")) k.matrices.push_back(parse_matrix(mj, n));
  k.q_list = j.at("q_list").get<std::vector<double>>();
  for (const json& oj : j.at("omegas")) k.omegas.push_back(parse_omega(oj, n));
  k.p_list = j.at("p_list").get<std::vector<double>>();
  if (j.contains("s"))
    k.s = j["s"].get<double>();
  else
    k.s = s_from_p_list(k.p_list);
  return k;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  try {
    ExperimentConfig cfg;
    const json& gj = j.at("grid");
    const int dim = gj.at("dim").get<int>();
    std::vector<std::array<double, 2>> bounds;
    for (const json& bj : gj.at("bounds"))
      bounds.push_back({bj.at(0).get<double>(), bj.at(1).get<double>()});
    cfg.grid = make_grid(dim, bounds, gj.at("resolution").get<std::vector<int>>());
    cfg.n = j.value("n", dim);
    cfg.alpha = j.value("alpha", 0.0);

    const json& ej = j.at("exponent");
    if (ej.contains("constant")) {
      cfg.p = constant_exponent(dim, ej["constant"].get<double>());
    } else {
      cfg.p = exponent_from_expr(dim, ej.at("expr").get<std::string>());
    }
    if (ej.contains("p_infinity"))
      cfg.p.p_infinity = ej["p_infinity"].get<double>();

    if (j.contains("kernel") && !j["kernel"].is_null())
      cfg.kernel = parse_kernel(j["kernel"], cfg.n, cfg.alpha);

    if (j.contains("family")) {
      const json& fj = j["family"];
      cfg.family.levels = fj.value("levels", 0);
      cfg.family.r_min = fj.value("r_min", 0.0);
      cfg.family.r_max = fj.value("r_max", 0.0);
      cfg.family.center_stride = fj.value("center_stride", 8);
      const std::string shape = fj.value("shape", "ball");
      if (shape == "ball")
        cfg.family.shape = Shape::ball;
      else if (shape == "cube")
        cfg.family.shape = Shape::cube;
      else
        throw ConfigError("family.shape must be ball or cube");
    }

    cfg.suite_id = j.value("suite", "standard");
    cfg.suite_scale = j.value("suite_scale", 1.0);
    if (j.contains("checks"))
      cfg.checks = j["checks"].get<std::vector<std::string>>();
    cfg.tol = j.value("tol", 1e-8);
    cfg.refine_levels = j.value("refine_levels", 2);
    cfg.stability_threshold = j.value("stability_threshold", 0.2);
    if (j.contains("quad")) {
      const json& qj = j["quad"];
      cfg.quad.refine_levels = qj.value("refine_levels", 6);
      cfg.quad.eps_sing = qj.value("eps_sing", -1.0);
      cfg.quad.max_dropped_fraction = qj.value("max_dropped_fraction", 0.10);
    }
    cfg.lambda_inf = j.value("lambda_inf", 32.0);
    if (j.contains("matrix")) cfg.comp_matrix = parse_matrix(j["matrix"], dim);
    const std::string mode = j.value("compat_mode", "eq");
    if (mode == "eq")
      cfg.compat_mode = CompatMode::eq;
    else if (mode == "le")
      cfg.compat_mode = CompatMode::le;
    else
      throw ConfigError("compat_mode must be eq or le");
    cfg.waive_hypotheses = j.value("waive_hypotheses", false);

    if (j.contains("function")) {
      const json& fj = j["function"];
      cfg.function_expr = fj.value("expr", "");
      cfg.function_file = fj.value("file", "");
    }
    if (j.contains("operator")) {
      const json& oj = j["operator"];
      cfg.op_name = oj.value("name", "hl");
      if (oj.contains("alpha")) cfg.alpha = oj["alpha"].get<double>();
      cfg.op_s = oj.value("s", 1.0);
    }
    cfg.hash = fnv1a(j.dump());
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

namespace {

std::string hex_hash(uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string report_json(const std::vector<InequalityReport>& reports,
                        uint64_t config_hash) {
  json doc;
  doc["config_hash"] = hex_hash(config_hash);
  doc["reports"] = json::array();
  for (const InequalityReport& r : reports) {
    json jr;
    jr["check"] = r.check;
    jr["constant"] = r.constant;
    jr["verdict"] = bound_verdict_name(r.verdict);
    jr["trend"] = r.trend;
    jr["notes"] = r.notes;
    jr["cases"] = json::array();
    for (const CaseRow& c : r.cases) {
      json jc;
      jc["id"] = c.id;
      jc["lhs"] = c.lhs;
      jc["rhs"] = c.rhs;
      jc["ratio"] = c.ratio;
      jc["valid"] = c.valid;
      jc["note"] = c.note;
      jr["cases"].push_back(std::move(jc));
    }
    doc["reports"].push_back(std::move(jr));
  }
  return doc.dump(2) + "\n";
}

std::string report_csv(const std::vector<InequalityReport>& reports,
                       uint64_t config_hash) {
  std::ostringstream out;
  out << "check,case,lhs,rhs,ratio,valid,constant,verdict,config_hash\n";
  const std::string hash = hex_hash(config_hash);
  for (const InequalityReport& r : reports) {
    if (r.cases.empty()) {
      out << r.check << ",,,,,," << fmt(r.constant) << ','
          << bound_verdict_name(r.verdict) << ',' << hash << '\n';
      continue;
    }
    for (const CaseRow& c : r.cases)
      out << r.check << ',' << c.id << ',' << fmt(c.lhs) << ',' << fmt(c.rhs)
          << ',' << fmt(c.ratio) << ',' << (c.valid ? 1 : 0) << ','
          << fmt(r.constant) << ',' << bound_verdict_name(r.verdict) << ','
          << hash << '\n';
  }
  return out.str();
}

void emit_report(const std::vector<InequalityReport>& reports,
                 const std::string& format, const std::string& path,
                 uint64_t config_hash) {
  std::string body;
  if (format == "json")
    body = report_json(reports, config_hash);
  else if (format == "csv")
    body = report_csv(reports, config_hash);
  else
    throw ConfigError("emit_report: format must be json or csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_report: cannot open " + path);
  out << body;
  if (!out) throw IoError("emit_report: write failed for " + path);
}

}  // namespace vex
