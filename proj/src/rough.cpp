#include "vex/rough.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace vex {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double point_norm(const Point& x, int dim) {
  return dim == 1 ? std::abs(x[0]) : x.norm();
}
}  // namespace

SphereFunction sphere_constant(int dim, double c) {
  SphereFunction s;
  s.dim = dim;
  s.at_plus = s.at_minus = c;
  if (dim == 2) s.closed_form = [c](double) { return c; };
  s.desc = "constant";
  return s;
}

SphereFunction sphere_from_name(int dim, const std::string& name) {
  if (name == "constant") return sphere_constant(dim, 1.0);
  if (name == "cos" || name == "coordinate") {
    SphereFunction s;
    s.dim = dim;
    s.at_plus = 1.0;
    s.at_minus = -1.0;
    if (dim == 2) s.closed_form = [](double th) { return std::cos(th); };
    s.desc = name;
    return s;
  }
  throw ConfigError("sphere_from_name: unknown sphere function '" + name + "'");
}

SphereFunction sphere_from_table(std::vector<double> table, std::string desc) {
  if (table.size() < 16)
    throw ConfigError("sphere_from_table: need >= 16 angle samples");
  for (double v : table)
    if (!std::isfinite(v))
      throw NonFinite("sphere_from_table: non-finite table value");
  SphereFunction s;
  s.dim = 2;
  s.table = std::move(table);
  s.desc = desc.empty() ? "table" : std::move(desc);
  return s;
}

double eval_sphere(const SphereFunction& omega, const Point& x) {
  const double r = point_norm(x, omega.dim);
  if (r <= 0.0) throw OnSingularity("eval_sphere: zero vector");
  if (omega.dim == 1) return x[0] > 0.0 ? omega.at_plus : omega.at_minus;
  double th = std::atan2(x[1], x[0]);
  if (th < 0.0) th += 2.0 * M_PI;
  if (omega.closed_form) return omega.closed_form(th);
  const size_t n = omega.table.size();
  const double u = th / (2.0 * M_PI) * double(n);
  const size_t i0 = size_t(std::floor(u)) % n;
  const size_t i1 = (i0 + 1) % n;
  const double frac = u - std::floor(u);
  return omega.table[i0] * (1.0 - frac) + omega.table[i1] * frac;
}

double sphere_lp_norm(const SphereFunction& omega, double p) {
  if (omega.dim == 1) {
    const double a = std::abs(omega.at_plus), b = std::abs(omega.at_minus);
    if (std::isinf(p)) return std::max(a, b);
    return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
  }
  const int ns = 512;
  const double dth = 2.0 * M_PI / ns;
  double acc = 0.0, sup = 0.0;
  for (int i = 0; i < ns; ++i) {
    const double th = (i + 0.5) * dth;
    const double v = std::abs(eval_sphere(omega, Point{std::cos(th), std::sin(th)}));
    if (std::isinf(p))
      sup = std::max(sup, v);
    else
      acc += std::pow(v, p) * dth;
  }
  return std::isinf(p) ? sup : std::pow(acc, 1.0 / p);
}

double modulus_of_continuity(const SphereFunction& omega, double p, double t,
                             const ModulusOptions& opt) {
  if (!(t > 0.0)) throw ConfigError("modulus_of_continuity: t > 0 required");
  const int dim = omega.dim;
  std::vector<Point> dirs;
  if (dim == 1) {
    dirs = {Point{1, 0}, Point{-1, 0}};
  } else {
    for (int d = 0; d < opt.directions; ++d) {
      const double th = 2.0 * M_PI * d / opt.directions;
      dirs.push_back(Point{std::cos(th), std::sin(th)});
    }
  }

  auto shifted_norm = [&](const Point& y) {
    if (dim == 1) {
      double worst = 0.0, acc = 0.0;
      for (double sgn : {1.0, -1.0}) {
        const Point xp{sgn, 0.0};
        const Point z = xp + y;
        double d = 0.0;
        if (point_norm(z, 1) > 1e-12)
          d = std::abs(eval_sphere(omega, z) - eval_sphere(omega, xp));
        if (std::isinf(p))
          worst = std::max(worst, d);
        else
          acc += std::pow(d, p);
      }
      return std::isinf(p) ? worst : std::pow(acc, 1.0 / p);
    }
    const int ns = opt.sphere_samples;
    const double dth = 2.0 * M_PI / ns;
    double worst = 0.0, acc = 0.0;
    for (int i = 0; i < ns; ++i) {
      const double th = (i + 0.5) * dth;
      const Point xp{std::cos(th), std::sin(th)};
      const Point z = xp + y;
      double d = 0.0;
      if (point_norm(z, 2) > 1e-9)
        d = std::abs(eval_sphere(omega, z) - eval_sphere(omega, xp));
      if (std::isinf(p))
        worst = std::max(worst, d);
      else
        acc += std::pow(d, p) * dth;
    }
    return std::isinf(p) ? worst : std::pow(acc, 1.0 / p);
  };

  double sup = 0.0;
  for (int j = 1; j <= opt.radii; ++j) {
    const double rho = t * double(j) / opt.radii;
    for (const Point& d : dirs) sup = std::max(sup, shifted_norm(rho * d));
  }
  return sup;
}

CheckReport check_h1(const SphereFunction& omega, double q_i, double p_i) {
  if (!(p_i > q_i)) throw ConfigError("check_h1: requires p_i > q_i");
  CheckReport rep;
  rep.constant = sphere_lp_norm(omega, p_i);
  rep.evidence.emplace_back(p_i, rep.constant);
  rep.verdict = std::isfinite(rep.constant) ? Verdict::pass : Verdict::fail;
  rep.notes = "||Omega||_{p_i,Sigma}";
  return rep;
}

CheckReport check_h2_dini(const SphereFunction& omega, double p_i,
                          double t_min, const DiniOptions& opt) {
  if (!(t_min > 0.0 && t_min < 1.0))
    throw ConfigError("check_h2_dini: need 0 < t_min < 1");
  CheckReport rep;
  const int blocks = int(std::ceil(-std::log2(t_min)));
  const double dlog = std::log(2.0) / opt.nodes_per_block;
  std::vector<double> contrib;
  double total = 0.0;
  for (int k = 0; k < blocks; ++k) {
    // block [2^-(k+1), 2^-k], log-spaced midpoints
    double block = 0.0;
    for (int j = 0; j < opt.nodes_per_block; ++j) {
      const double t =
          std::pow(2.0, -(k + 1)) * std::exp((j + 0.5) * dlog);
      block += modulus_of_continuity(omega, p_i, t, opt.modulus) * dlog;
    }
    contrib.push_back(block);
    total += block;
    rep.evidence.emplace_back(std::pow(2.0, -k), block);
  }
  rep.constant = total;
  double peak = 0.0;
  for (double v : contrib) peak = std::max(peak, v);
  if (peak <= 1e-15) {
    rep.verdict = Verdict::pass;
    rep.notes = "modulus vanishes on the lattice";
    if (omega.dim == 1)
      rep.notes += " (two-point sphere: small shifts never cross)";
    return rep;
  }
  const size_t k = contrib.size();
  if (k < 4) {
    rep.verdict = Verdict::inconclusive;
    return rep;
  }
  bool geometric = true, nondecreasing = contrib[k - 1] > 0.0;
  for (size_t j = k - 3; j < k; ++j) {
    const double prev = contrib[j - 1];
    const double ratio =
        prev > 0.0 ? contrib[j] / prev : (contrib[j] > 0.0 ? kInf : 0.0);
    geometric = geometric && ratio <= opt.rho_tail;
    nondecreasing = nondecreasing && contrib[j] >= prev * (1.0 - 1e-12);
  }
  rep.verdict = geometric ? Verdict::pass
                          : (nondecreasing ? Verdict::fail
                                           : Verdict::inconclusive);
  rep.notes = "partial Dini integral on [t_min, 1]";
  return rep;
}

double s_from_p_list(const std::vector<double>& p_list) {
  double inv = 1.0;
  for (double p : p_list) inv -= 1.0 / p;
  if (!(inv > 0.0))
    throw ConfigError("s_from_p_list: 1/p_1 + ... + 1/p_m >= 1");
  return 1.0 / inv;
}

CheckReport validate_kernel(const KernelConfig& cfg) {
  CheckReport rep;
  std::ostringstream notes;
  bool ok = true;
  auto clause = [&](bool pass, const std::string& what) {
    if (!pass) {
      ok = false;
      notes << "violated: " << what << "; ";
    }
  };

  const int m = cfg.m();
  clause(cfg.n == 1 || cfg.n == 2, "n in {1,2}");
  clause(m >= 1, "m >= 1");
  clause(cfg.alpha >= 0.0 && cfg.alpha < cfg.n, "0 <= alpha < n");
  clause(!(cfg.alpha == 0.0 && m < 2), "m >= 2 when alpha = 0");
  clause(int(cfg.q_list.size()) == m && int(cfg.omegas.size()) == m &&
             int(cfg.p_list.size()) == m,
         "q_list, omegas, p_list sized m");
  if (int(cfg.q_list.size()) == m && int(cfg.p_list.size()) == m) {
    double budget = 0.0;
    for (int i = 0; i < m; ++i) {
      clause(cfg.q_list[i] > 1.0, "q_i > 1");
      clause(cfg.p_list[i] > cfg.q_list[i], "p_i > q_i (H1 witness)");
      budget += double(cfg.n) / cfg.q_list[i];
    }
    clause(std::abs(budget - (cfg.n - cfg.alpha)) <= 1e-12,
           "sum n/q_i = n - alpha");
    double inv_s = 1.0;
    for (double p : cfg.p_list) inv_s -= 1.0 / p;
    clause(cfg.s >= 1.0 && std::abs(1.0 / cfg.s - inv_s) <= 1e-12,
           "s >= 1 with 1/p_1+...+1/p_m+1/s = 1");
  }
  for (int i = 0; i < m; ++i) {
    clause(invertible(cfg.matrices[i], cfg.n), "A_i invertible");
    for (int j = i + 1; j < m; ++j) {
      Matrix diff = cfg.matrices[i] - cfg.matrices[j];
      if (cfg.n == 1) diff(1, 1) = 1.0;  // only the live block matters
      clause(invertible(diff, cfg.n), "A_i - A_j invertible for i != j");
    }
  }
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  rep.constant = ok ? 1.0 : 0.0;
  rep.evidence.emplace_back(double(m), ok ? 1.0 : 0.0);
  rep.notes = ok ? "all kernel hypotheses hold" : notes.str();
  return rep;
}

double kernel_eval(const KernelConfig& cfg, const Point& x, const Point& y,
                   double eps_sing) {
  double prod = 1.0;
  for (int i = 0; i < cfg.m(); ++i) {
    const Point u = x - apply_n(cfg.matrices[i], y, cfg.n);
    const double r = point_norm(u, cfg.n);
    if (r < eps_sing)
      throw OnSingularity("kernel_eval: x - A_i y at the singular point");
    prod *= eval_sphere(cfg.omegas[i], u) *
            std::pow(r, -double(cfg.n) / cfg.q_list[i]);
  }
  return prod;
}

namespace {

struct TAlphaQuad {
  const SampledFunction& f;
  const KernelConfig& cfg;
  int levels;
  double eps_sing;
  std::vector<Point> sing;  // y_i* = A_i^{-1} x for the current x
  double acc = 0.0;
  double acc_abs = 0.0;
  double dropped_est = 0.0;

  double sing_dist(const Point& y) const {
    double d = kInf;
    for (const Point& s : sing)
      d = std::min(d, point_norm(y - s, cfg.n));
    return d;
  }

  void contribute(const Point& x, const Point& yc, double fv, double vol) {
    const double v = kernel_eval(cfg, x, yc, 1e-300) * fv * vol;
    acc += v;
    acc_abs += std::abs(v);
  }

  // Graded dyadic refinement of one (sub)cell; hw = per-axis halfwidth.
  void refine(const Point& x, const Point& yc, Point hw, double fv, int depth) {
    const double wmax =
        cfg.n == 1 ? 2.0 * hw[0] : 2.0 * std::max(hw[0], hw[1]);
    const double d = sing_dist(yc);
    if (depth >= levels) {
      if (d < wmax) {
        // innermost shell: excluded; estimate its mass from the kernel one
        // shell out along the approach direction.
        Point dir{1.0, 0.0};
        double best = kInf;
        for (const Point& s : sing) {
          const double ds = point_norm(yc - s, cfg.n);
          if (ds < best) {
            best = ds;
            dir = ds > 1e-14 ? Point((yc - s) / ds) : Point{1.0, 0.0};
          }
        }
        Point nearest = yc - best * dir;  // ~ the singular point
        const Point edge = nearest + wmax * dir;
        const double vol =
            cfg.n == 1 ? 2.0 * hw[0] : 4.0 * hw[0] * hw[1];
        dropped_est +=
            std::abs(kernel_eval(cfg, x, edge, 1e-300) * fv) * vol;
        return;
      }
      const double vol = cfg.n == 1 ? 2.0 * hw[0] : 4.0 * hw[0] * hw[1];
      contribute(x, yc, fv, vol);
      return;
    }
    if (d > 6.0 * wmax) {
      const double vol = cfg.n == 1 ? 2.0 * hw[0] : 4.0 * hw[0] * hw[1];
      contribute(x, yc, fv, vol);
      return;
    }
    const Point child_hw = 0.5 * hw;
    if (cfg.n == 1) {
      for (double sx : {-1.0, 1.0})
        refine(x, Point{yc[0] + sx * child_hw[0], 0.0}, child_hw, fv,
               depth + 1);
    } else {
      for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0})
          refine(x,
                 Point{yc[0] + sx * child_hw[0], yc[1] + sy * child_hw[1]},
                 child_hw, fv, depth + 1);
    }
  }

  double evaluate(const Point& x) {
    acc = acc_abs = 0.0;
    sing.clear();
    for (int i = 0; i < cfg.m(); ++i)
      sing.push_back(apply_n(inverse_n(cfg.matrices[i], cfg.n), x, cfg.n));
    const GridSpec& g = f.grid;
    const double vol = g.cell_volume();
    const Point hw{0.5 * g.spacing(0), g.dim == 2 ? 0.5 * g.spacing(1) : 0.5};
    for (Index j = 0; j < g.cells(); ++j) {
      const double fv = f.values[j];
      if (fv == 0.0) continue;
      const Point yc = g.center(j);
      if (sing_dist(yc) > eps_sing)
        contribute(x, yc, fv, vol);
      else
        refine(x, yc, hw, fv, 0);
    }
    return acc;
  }
};

double default_eps_sing(const GridSpec& g) {
  const double hx = g.spacing(0);
  const double diam = g.dim == 2 ? std::hypot(hx, g.spacing(1)) : hx;
  return 1.5 * diam;
}

}  // namespace

double apply_T_alpha_at(const SampledFunction& f, const KernelConfig& cfg,
                        const Point& x, const QuadOptions& quad) {
  if (f.grid.dim != cfg.n)
    throw ConfigError("apply_T_alpha_at: grid dim != kernel n");
  TAlphaQuad q{f, cfg, quad.refine_levels,
               quad.eps_sing > 0.0 ? quad.eps_sing : default_eps_sing(f.grid)};
  return q.evaluate(x);
}

TAlphaResult apply_T_alpha(const SampledFunction& f, const KernelConfig& cfg,
                           const QuadOptions& quad) {
  if (f.grid.dim != cfg.n)
    throw ConfigError("apply_T_alpha: grid dim != kernel n");
  const CheckReport valid = validate_kernel(cfg);
  if (valid.verdict != Verdict::pass)
    throw ConfigError("apply_T_alpha: kernel hypotheses violated: " +
                      valid.notes);
  const GridSpec& g = f.grid;
  const double eps =
      quad.eps_sing > 0.0 ? quad.eps_sing : default_eps_sing(g);

  auto run_level = [&](int level, Eigen::ArrayXd& out, double& dropped_frac) {
    TAlphaQuad q{f, cfg, level, eps};
    double dropped = 0.0, total_abs = 0.0;
    for (Index i = 0; i < g.cells(); ++i) {
      out[i] = q.evaluate(g.center(i));
      dropped += q.dropped_est;
      total_abs += q.acc_abs;
      q.dropped_est = 0.0;
    }
    dropped_frac =
        total_abs + dropped > 0.0 ? dropped / (total_abs + dropped) : 0.0;
  };

  Eigen::ArrayXd fine(g.cells()), coarse(g.cells());
  double dropped_fine = 0.0, dropped_coarse = 0.0;
  run_level(std::max(1, quad.refine_levels - 1), coarse, dropped_coarse);
  run_level(quad.refine_levels, fine, dropped_fine);

  if (dropped_fine > quad.max_dropped_fraction)
    throw ConfigError(
        "apply_T_alpha: singular exclusion removes too much mass (" +
        std::to_string(dropped_fine) + ")");

  TAlphaResult res{SampledFunction(g, fine, "T_alpha " + f.desc),
                   (fine - coarse).abs(), dropped_fine};
  return res;
}

}  // namespace vex
