#include "vex/norms.hpp"

#include <cmath>
#include <limits>

#include "vex/maximal.hpp"

namespace vex {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Eigen::ArrayXd exponent_values(const ExponentField& p, const GridSpec& grid) {
  Eigen::ArrayXd pv(grid.cells());
  for (Index i = 0; i < grid.cells(); ++i)
    pv[i] = eval_exponent(p, grid.center(i));
  return pv;
}

double modular(const SampledFunction& f, const Eigen::ArrayXd& p_values) {
  const double vol = f.grid.cell_volume();
  double integral = 0.0;
  double sup = 0.0;
  bool has_inf_cells = false;
  for (Index i = 0; i < f.values.size(); ++i) {
    const double av = std::abs(f.values[i]);
    if (std::isinf(p_values[i])) {
      has_inf_cells = true;
      sup = std::max(sup, av);
    } else if (av > 0.0) {
      integral += std::pow(av, p_values[i]) * vol;
    }
  }
  return integral + (has_inf_cells ? sup : 0.0);
}

double modular(const SampledFunction& f, const ExponentField& p) {
  return modular(f, exponent_values(p, f.grid));
}

NormResult luxemburg_norm(const SampledFunction& f,
                          const Eigen::ArrayXd& p_values, double cell_volume,
                          double tol) {
  if (!(tol > 0.0)) throw ConfigError("luxemburg_norm: tol > 0 required");
  if (!f.values.isFinite().all())
    throw NonFinite("luxemburg_norm: non-finite samples");
  NormResult res;
  const double fmax = f.values.abs().maxCoeff();
  if (fmax == 0.0) return res;  // ||0|| = 0

  const double vol_total = cell_volume * double(f.values.size());
  auto rho = [&](double lambda) {
    double integral = 0.0, sup = 0.0;
    bool has_inf = false;
    for (Index i = 0; i < f.values.size(); ++i) {
      const double av = std::abs(f.values[i]);
      if (std::isinf(p_values[i])) {
        has_inf = true;
        sup = std::max(sup, av / lambda);
      } else if (av > 0.0) {
        integral += std::pow(av / lambda, p_values[i]) * cell_volume;
        if (integral > 1e12) return integral;  // early out, clearly > 1
      }
    }
    return integral + (has_inf ? sup : 0.0);
  };

  double hi = std::max(1.0, fmax) * (1.0 + vol_total);
  double lo = hi * std::pow(2.0, -60);
  int guard = 0;
  while (rho(hi) > 1.0 && guard++ < 200) {
    lo = hi;
    hi *= 2.0;
  }
  guard = 0;
  while (rho(lo) <= 1.0 && guard++ < 200) {
    hi = lo;
    lo *= 0.5;
  }
  // invariant: rho(lo) > 1 >= rho(hi)
  int it = 0;
  while ((hi - lo) / std::max(hi, 1e-300) > tol && it < 200) {
    const double mid = 0.5 * (lo + hi);
    if (rho(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
    ++it;
  }
  res.value = hi;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.modular_at_value = rho(hi);
  res.iterations = it;
  return res;
}

NormResult luxemburg_norm(const SampledFunction& f, const ExponentField& p,
                          double tol) {
  return luxemburg_norm(f, exponent_values(p, f.grid), f.grid.cell_volume(),
                        tol);
}

double holder_defect(const SampledFunction& f, const SampledFunction& g,
                     const ExponentField& p, double tol) {
  if (!f.grid.same_layout(g.grid))
    throw ConfigError("holder_defect: grids differ");
  const double num =
      (f.values * g.values).abs().sum() * f.grid.cell_volume();
  if (num == 0.0) return 0.0;
  const double nf = luxemburg_norm(f, p, tol).value;
  const double ng = luxemburg_norm(g, conjugate(p), tol).value;
  if (nf == 0.0 || ng == 0.0)
    throw ZeroNorm("holder_defect: vanishing norm with nonzero pairing");
  return num / (nf * ng);
}

Weight::Weight(SampledFunction s) : samples(std::move(s)) {
  if (!(samples.values > 0.0).all())
    throw ConfigError("Weight: samples must be strictly positive");
}

double a1_constant(const Weight& w, const BallFamily& balls) {
  const SampledFunction mw = hl_maximal(w.samples, balls);
  return (mw.values / w.samples.values).maxCoeff();
}

namespace {

double cube_average(const SampledFunction& f, const Ball& q, Shape shape,
                    const std::function<double(double)>& transform,
                    Index* count_out) {
  double s = 0.0;
  Index n = 0;
  for_each_member_span(f.grid, q, shape, [&](Index first, Index cnt) {
    for (Index i = first; i < first + cnt; ++i) s += transform(f.values[i]);
    n += cnt;
  });
  if (count_out) *count_out = n;
  return n > 0 ? s / double(n) : 0.0;
}

}  // namespace

double ap_constant(const Weight& w, double p, const BallFamily& cubes) {
  if (!(p > 1.0)) throw ConfigError("ap_constant: p > 1 required");
  const double e = -1.0 / (p - 1.0);
  double best = 0.0;
  for (const Ball& q : cubes.balls) {
    Index n = 0;
    const double a = cube_average(w.samples, q, cubes.shape,
                                  [](double v) { return v; }, &n);
    if (n == 0) continue;
    const double b = cube_average(w.samples, q, cubes.shape,
                                  [e](double v) { return std::pow(v, e); },
                                  nullptr);
    best = std::max(best, a * std::pow(b, p - 1.0));
  }
  if (best == 0.0) throw EmptyIntersection("ap_constant: no cube hits grid");
  return best;
}

double apq_constant(const Weight& w, double p, double q,
                    const BallFamily& cubes) {
  if (!(p >= 1.0) || !(q > 1.0))
    throw ConfigError("apq_constant: need p >= 1 and q > 1");
  double best = 0.0;
  for (const Ball& cube : cubes.balls) {
    Index n = 0;
    const double wq = cube_average(w.samples, cube, cubes.shape,
                                   [q](double v) { return std::pow(v, q); },
                                   &n);
    if (n == 0) continue;
    const double first = std::pow(wq, 1.0 / q);
    double second;
    if (p > 1.0) {
      const double pprime = p / (p - 1.0);
      const double wp =
          cube_average(w.samples, cube, cubes.shape,
                       [pprime](double v) { return std::pow(v, -pprime); },
                       nullptr);
      second = std::pow(wp, 1.0 / pprime);
    } else {
      double inv_max = 0.0;
      for_each_member_span(w.samples.grid, cube, cubes.shape,
                           [&](Index firsti, Index cnt) {
                             for (Index i = firsti; i < firsti + cnt; ++i)
                               inv_max = std::max(inv_max,
                                                  1.0 / w.samples.values[i]);
                           });
      second = inv_max;
    }
    best = std::max(best, first * second);
  }
  if (best == 0.0) throw EmptyIntersection("apq_constant: no cube hits grid");
  return best;
}

}  // namespace vex
