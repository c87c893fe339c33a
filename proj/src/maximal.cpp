#include "vex/maximal.hpp"

#include <cmath>
#include <limits>

#include "vex/norms.hpp"

namespace vex {

namespace {

// Per-ball scatter-max sweep. value_of(ball, avg_abs, count) produces the
// quantity assigned to every member cell of the ball.
template <class ValueFn>
SampledFunction sweep(const SampledFunction& f, const BallFamily& balls,
                      ValueFn&& value_of) {
  if (balls.balls.empty()) throw EmptyFamily("maximal sweep: empty family");
  const GridSpec& g = f.grid;
  Eigen::ArrayXd out = Eigen::ArrayXd::Constant(g.cells(), -1.0);
  for (const Ball& b : balls.balls) {
    double sum = 0.0;
    Index n = 0;
    for_each_member_span(g, b, balls.shape, [&](Index first, Index cnt) {
      sum += f.values.segment(first, cnt).abs().sum();
      n += cnt;
    });
    if (n == 0) continue;
    const double avg = sum / double(n);
    const double v = value_of(b, avg, n);
    for_each_member_span(g, b, balls.shape, [&](Index first, Index cnt) {
      for (Index i = first; i < first + cnt; ++i)
        out[i] = std::max(out[i], v);
    });
  }
  if ((out < 0.0).any())
    throw ConfigError(
        "maximal sweep: some cell is contained in no family ball");
  return SampledFunction(g, std::move(out), "maximal of " + f.desc);
}

}  // namespace

SampledFunction hl_maximal(const SampledFunction& f, const BallFamily& balls) {
  return sweep(f, balls,
               [](const Ball&, double avg, Index) { return avg; });
}

SampledFunction fractional_maximal(const SampledFunction& f, double alpha,
                                   const BallFamily& balls) {
  const int n = f.grid.dim;
  if (!(alpha > 0.0 && alpha < n))
    throw ConfigError("fractional_maximal: need 0 < alpha < n");
  const double vol = f.grid.cell_volume();
  const double e = alpha / n;
  return sweep(f, balls, [&](const Ball&, double avg, Index cnt) {
    return std::pow(double(cnt) * vol, e) * avg;
  });
}

SampledFunction fractional_maximal_s(const SampledFunction& f, double alpha,
                                     double s, const BallFamily& balls) {
  const int n = f.grid.dim;
  if (!(s >= 1.0)) throw ConfigError("fractional_maximal_s: s >= 1 required");
  if (!(alpha >= 0.0) || alpha * s >= n)
    throw ConfigError("fractional_maximal_s: need 0 <= alpha*s < n");
  SampledFunction fs = f;
  if (s != 1.0) {
    fs.values = f.values.abs().pow(s);
    fs.desc = "|" + f.desc + "|^s";
  } else {
    fs.values = f.values.abs();
  }
  SampledFunction inner = alpha == 0.0
                              ? hl_maximal(fs, balls)
                              : fractional_maximal(fs, alpha * s, balls);
  if (s != 1.0) inner.values = inner.values.pow(1.0 / s);
  inner.desc = "M_{alpha,s} of " + f.desc;
  return inner;
}

SampledFunction sharp_maximal(const SampledFunction& f, const BallFamily& balls,
                              bool classical_mean) {
  if (balls.balls.empty()) throw EmptyFamily("sharp_maximal: empty family");
  const GridSpec& g = f.grid;
  Eigen::ArrayXd out = Eigen::ArrayXd::Constant(g.cells(), -1.0);
  for (const Ball& b : balls.balls) {
    double abs_sum = 0.0, sum = 0.0;
    Index n = 0;
    for_each_member_span(g, b, balls.shape, [&](Index first, Index cnt) {
      abs_sum += f.values.segment(first, cnt).abs().sum();
      sum += f.values.segment(first, cnt).sum();
      n += cnt;
    });
    if (n == 0) continue;
    const double avg_abs = abs_sum / double(n);
    const double center = classical_mean ? sum / double(n) : avg_abs;
    double osc_sum = 0.0;
    for_each_member_span(g, b, balls.shape, [&](Index first, Index cnt) {
      for (Index i = first; i < first + cnt; ++i)
        osc_sum += std::abs(f.values[i] - center);
    });
    // |f - center| <= |f| + avg|f| holds exactly; clamp out the last-ulp
    // rounding so the pointwise bound M# <= 2M survives in floating point.
    const double osc = std::min(osc_sum / double(n), 2.0 * avg_abs);
    for_each_member_span(g, b, balls.shape, [&](Index first, Index cnt) {
      for (Index i = first; i < first + cnt; ++i)
        out[i] = std::max(out[i], osc);
    });
  }
  if ((out < 0.0).any())
    throw ConfigError("sharp_maximal: some cell is contained in no ball");
  return SampledFunction(g, std::move(out), "M# of " + f.desc);
}

SampledFunction apply_maximal(const SampledFunction& f,
                              const MaximalConfig& cfg) {
  switch (cfg.flavor) {
    case MaximalFlavor::hl:
      return hl_maximal(f, cfg.balls);
    case MaximalFlavor::fractional:
      return fractional_maximal(f, cfg.alpha, cfg.balls);
    case MaximalFlavor::fractional_s:
      return fractional_maximal_s(f, cfg.alpha, cfg.s, cfg.balls);
    case MaximalFlavor::sharp:
      return sharp_maximal(f, cfg.balls);
  }
  throw ConfigError("apply_maximal: bad flavor");
}

SampledFunction rubio_de_francia(const SampledFunction& h,
                                 double opnorm_estimate, int terms,
                                 const BallFamily& balls, double* tail_bound) {
  if (!(opnorm_estimate >= 1.0))
    throw ConfigError("rubio_de_francia: opnorm estimate >= 1 required");
  if (terms < 1) throw ConfigError("rubio_de_francia: terms >= 1 required");
  SampledFunction iterate = h;
  iterate.values = h.values.abs();
  Eigen::ArrayXd acc = iterate.values;  // k = 0 term, exactly |h|
  const double denom = 2.0 * opnorm_estimate;
  double scale = 1.0;
  for (int k = 1; k <= terms; ++k) {
    iterate = hl_maximal(iterate, balls);
    scale /= denom;
    acc += iterate.values * scale;
  }
  if (tail_bound)
    *tail_bound = opnorm_estimate * iterate.values.maxCoeff() * scale;
  return SampledFunction(h.grid, std::move(acc), "R(" + h.desc + ")");
}

double estimate_maximal_opnorm(const ExponentField& p,
                               const std::vector<SampledFunction>& probes,
                               const BallFamily& balls, double norm_tol) {
  if (probes.empty())
    throw ConfigError("estimate_maximal_opnorm: empty probe list");
  double best = 0.0;
  bool any = false;
  for (const SampledFunction& f : probes) {
    const double nf = luxemburg_norm(f, p, norm_tol).value;
    if (nf == 0.0) continue;
    const double nm = luxemburg_norm(hl_maximal(f, balls), p, norm_tol).value;
    best = std::max(best, nm / nf);
    any = true;
  }
  if (!any)
    throw ZeroNorm("estimate_maximal_opnorm: every probe had zero norm");
  return 2.0 * best;
}

std::vector<SampledFunction> default_opnorm_probes(const GridSpec& grid) {
  std::vector<SampledFunction> probes;
  const double w0 = (grid.hi[0] - grid.lo[0]) / 2.0;
  for (int k = 0; k < 3; ++k) {
    const double w = w0 * std::pow(2.0, -k);
    Ball b{Point{grid.lo[0] + w, grid.dim == 2 ? grid.lo[1] + w : 0.0}, w};
    probes.push_back(sample(
        grid,
        [&](const Point& x) {
          return cell_in_region(x, b, Shape::cube, grid.dim) ? 1.0 : 0.0;
        },
        "chi_dyadic_" + std::to_string(k)));
  }
  const double cx = 0.5 * (grid.lo[0] + grid.hi[0]);
  const double cy = grid.dim == 2 ? 0.5 * (grid.lo[1] + grid.hi[1]) : 0.0;
  const double r = 0.5 * w0;
  probes.push_back(sample(
      grid,
      [&](const Point& x) {
        const double dx = (x[0] - cx) / r;
        const double dy = grid.dim == 2 ? (x[1] - cy) / r : 0.0;
        const double u = 1.0 - dx * dx - dy * dy;
        return u > 0.0 ? u * u * u : 0.0;
      },
      "bump_center"));
  probes.push_back(sample(
      grid,
      [&](const Point& x) {
        const double dx = (x[0] - cx - 0.5 * r) / (0.5 * r);
        const double dy = grid.dim == 2 ? (x[1] - cy) / (0.5 * r) : 0.0;
        const double u = 1.0 - dx * dx - dy * dy;
        return u > 0.0 ? u * u : 0.0;
      },
      "bump_offcenter"));
  return probes;
}

}  // namespace vex
