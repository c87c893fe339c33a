#include "vex/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vex {

GridSpec make_grid(int dim, const std::vector<std::array<double, 2>>& bounds,
                   const std::vector<int>& resolution) {
  if (dim != 1 && dim != 2)
    throw InvalidDimension("make_grid: dim must be 1 or 2, got " +
                           std::to_string(dim));
  if (Index(bounds.size()) < dim || Index(resolution.size()) < dim)
    throw ConfigError("make_grid: need bounds and resolution per axis");
  GridSpec g;
  g.dim = dim;
  g.res = Eigen::Vector2i{1, 1};
  for (int a = 0; a < dim; ++a) {
    const double lo = bounds[a][0], hi = bounds[a][1];
    if (!(lo < hi))
      throw DegenerateBounds("make_grid: axis " + std::to_string(a) +
                             " has lo >= hi");
    if (resolution[a] < 2)
      throw ConfigError("make_grid: resolution must be >= 2 per axis");
    g.lo[a] = lo;
    g.hi[a] = hi;
    g.res[a] = resolution[a];
  }
  if (dim == 1) {
    g.lo[1] = 0.0;
    g.hi[1] = 1.0;
    g.res[1] = 1;
  }
  return g;
}

SampledFunction::SampledFunction(GridSpec g, Eigen::ArrayXd v, std::string d)
    : grid(std::move(g)), values(std::move(v)), desc(std::move(d)) {
  if (values.size() != grid.cells())
    throw ConfigError("SampledFunction: values length " +
                      std::to_string(values.size()) + " != cell count " +
                      std::to_string(grid.cells()));
  if (!values.isFinite().all())
    throw NonFinite("SampledFunction: non-finite sample value");
}

SampledFunction sample(const GridSpec& grid,
                       const std::function<double(const Point&)>& fn,
                       std::string desc) {
  Eigen::ArrayXd v(grid.cells());
  for (Index i = 0; i < grid.cells(); ++i) v[i] = fn(grid.center(i));
  return SampledFunction(grid, std::move(v), std::move(desc));
}

bool cell_in_region(const Point& c, const Ball& b, Shape shape, int dim) {
  const double dx = c[0] - b.center[0];
  const double dy = dim == 2 ? c[1] - b.center[1] : 0.0;
  if (shape == Shape::cube)
    return std::abs(dx) <= b.radius && std::abs(dy) <= b.radius;
  return dx * dx + dy * dy <= b.radius * b.radius;
}

namespace {

// Exact [ix0, ix1] run of member centers along x for a fixed row, found by
// an arithmetic guess corrected against the membership predicate.
bool x_run(const GridSpec& g, const Ball& b, Shape shape, Index iy, Index& ix0,
           Index& ix1) {
  const double h = g.spacing(0);
  double half = b.radius;
  if (shape == Shape::ball && g.dim == 2) {
    const double cy = g.lo[1] + (double(iy) + 0.5) * g.spacing(1);
    const double dy = cy - b.center[1];
    const double d2 = b.radius * b.radius - dy * dy;
    if (d2 < 0.0) return false;
    half = std::sqrt(d2);
  }
  auto member = [&](Index ix) {
    if (ix < 0 || ix >= g.res[0]) return false;
    return cell_in_region(g.center(g.index(ix, iy)), b, shape, g.dim);
  };
  ix0 = Index(std::ceil((b.center[0] - half - g.lo[0]) / h - 0.5));
  ix1 = Index(std::floor((b.center[0] + half - g.lo[0]) / h - 0.5));
  while (member(ix0 - 1)) --ix0;
  while (ix0 <= ix1 && !member(ix0)) ++ix0;
  while (member(ix1 + 1)) ++ix1;
  while (ix1 >= ix0 && !member(ix1)) --ix1;
  ix0 = std::max<Index>(ix0, 0);
  ix1 = std::min<Index>(ix1, g.res[0] - 1);
  return ix0 <= ix1;
}

}  // namespace

void for_each_member_span(const GridSpec& grid, const Ball& b, Shape shape,
                          const std::function<void(Index, Index)>& fn) {
  const double hy = grid.dim == 2 ? grid.spacing(1) : 0.0;
  Index iy0 = 0, iy1 = 0;
  if (grid.dim == 2) {
    iy0 = Index(std::ceil((b.center[1] - b.radius - grid.lo[1]) / hy - 0.5)) - 1;
    iy1 = Index(std::floor((b.center[1] + b.radius - grid.lo[1]) / hy - 0.5)) + 1;
    iy0 = std::max<Index>(iy0, 0);
    iy1 = std::min<Index>(iy1, grid.res[1] - 1);
  }
  for (Index iy = iy0; iy <= iy1; ++iy) {
    Index ix0, ix1;
    if (x_run(grid, b, shape, iy, ix0, ix1))
      fn(grid.index(ix0, iy), ix1 - ix0 + 1);
  }
}

Index member_count(const GridSpec& grid, const Ball& b, Shape shape) {
  Index n = 0;
  for_each_member_span(grid, b, shape, [&](Index, Index cnt) { n += cnt; });
  return n;
}

BallFamily ball_family(const GridSpec& grid, const RadiiPolicy& policy,
                       int center_stride, Shape shape) {
  if (policy.levels < 1 || policy.r_min <= 0.0)
    throw ConfigError("ball_family: levels >= 1 and r_min > 0 required");
  if (policy.r_min > policy.r_max)
    throw ConfigError("ball_family: r_min > r_max");
  if (center_stride < 1) throw ConfigError("ball_family: stride >= 1 required");

  std::vector<double> radii;
  for (int k = 0; k < policy.levels; ++k) {
    const double r = policy.r_min * std::pow(2.0, k);
    if (r <= policy.r_max * (1.0 + 1e-12)) radii.push_back(r);
  }

  BallFamily fam;
  fam.shape = shape;
  // every stride-th center per axis, 1-based: indices stride-1, 2*stride-1, ...
  for (Index iy = (grid.dim == 2 ? center_stride - 1 : 0); iy < grid.res[1];
       iy += (grid.dim == 2 ? center_stride : grid.res[1] + 1)) {
    for (Index ix = center_stride - 1; ix < grid.res[0]; ix += center_stride) {
      const Point c = grid.center(grid.index(ix, iy));
      for (double r : radii) fam.balls.push_back(Ball{c, r});
    }
  }
  if (fam.balls.empty()) throw EmptyFamily("ball_family: empty family");
  std::sort(fam.balls.begin(), fam.balls.end(),
            [](const Ball& a, const Ball& b) {
              if (a.center[0] != b.center[0]) return a.center[0] < b.center[0];
              if (a.center[1] != b.center[1]) return a.center[1] < b.center[1];
              return a.radius < b.radius;
            });
  return fam;
}

double integrate(const SampledFunction& f) {
  return f.values.sum() * f.grid.cell_volume();
}

double integrate(const SampledFunction& f, const Ball& region, Shape shape,
                 bool* empty) {
  double s = 0.0;
  Index n = 0;
  for_each_member_span(f.grid, region, shape, [&](Index first, Index cnt) {
    s += f.values.segment(first, cnt).sum();
    n += cnt;
  });
  if (empty) *empty = (n == 0);
  return s * f.grid.cell_volume();
}

double average_over_ball(const SampledFunction& f, const Ball& b, Shape shape) {
  double s = 0.0;
  Index n = 0;
  for_each_member_span(f.grid, b, shape, [&](Index first, Index cnt) {
    s += f.values.segment(first, cnt).abs().sum();
    n += cnt;
  });
  if (n == 0)
    throw EmptyIntersection("average_over_ball: region misses every cell");
  return s / double(n);
}

void write_samples(const SampledFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_samples: cannot open " + path);
  out.precision(17);
  const GridSpec& g = f.grid;
  out << "grid " << g.dim << " " << g.res[0];
  if (g.dim == 2) out << " " << g.res[1];
  out << " " << g.lo[0] << " " << g.hi[0];
  if (g.dim == 2) out << " " << g.lo[1] << " " << g.hi[1];
  out << "\n";
  for (Index i = 0; i < g.cells(); ++i) {
    const Point c = g.center(i);
    out << c[0];
    if (g.dim == 2) out << " " << c[1];
    out << " " << f.values[i] << "\n";
  }
  if (!out) throw IoError("write_samples: write failed for " + path);
}

SampledFunction read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_samples: cannot open " + path);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto pos = line.find_first_not_of(" \t");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(path + ": missing header line");
  std::istringstream hs(line);
  std::string tag;
  int dim = 0;
  hs >> tag >> dim;
  if (tag != "grid" || (dim != 1 && dim != 2))
    throw ParseError(path + ":" + std::to_string(lineno) +
                     ": header must be 'grid <dim> ...'");
  std::vector<int> res(dim);
  for (int a = 0; a < dim; ++a) hs >> res[a];
  std::vector<std::array<double, 2>> bounds(dim);
  for (int a = 0; a < dim; ++a) hs >> bounds[a][0] >> bounds[a][1];
  if (!hs)
    throw ParseError(path + ":" + std::to_string(lineno) + ": bad header");
  GridSpec g = make_grid(dim, bounds, res);
  Eigen::ArrayXd v(g.cells());
  for (Index i = 0; i < g.cells(); ++i) {
    if (!next_line())
      throw ParseError(path + ": expected " + std::to_string(g.cells()) +
                       " sample lines, got " + std::to_string(i));
    std::istringstream ls(line);
    Point c{0.0, 0.0};
    double val = 0.0;
    ls >> c[0];
    if (dim == 2) ls >> c[1];
    ls >> val;
    if (!ls)
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad sample line");
    const Point want = g.center(i);
    for (int a = 0; a < dim; ++a)
      if (std::abs(c[a] - want[a]) > 0.25 * g.spacing(a))
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": coordinates do not match cell center order");
    v[i] = val;
  }
  return SampledFunction(g, std::move(v));
}

}  // namespace vex
