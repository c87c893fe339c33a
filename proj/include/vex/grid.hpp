#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vex/errors.hpp"

namespace vex {

using Point = Eigen::Vector2d;
using Index = Eigen::Index;

/// Uniform truncated grid on a box in R^1 or R^2. Cells are indexed
/// row-major with x fastest: i = iy * res[0] + ix. Cell centers sit at
/// lo + (k + 1/2) * h per axis (midpoint rule).
struct GridSpec {
  int dim = 1;
  Eigen::Vector2d lo{0.0, 0.0};
  Eigen::Vector2d hi{1.0, 1.0};
  Eigen::Vector2i res{2, 1};  // res[1] == 1 when dim == 1

  Index cells() const { return Index(res[0]) * Index(res[1]); }

  double spacing(int axis) const { return (hi[axis] - lo[axis]) / res[axis]; }

  double cell_volume() const {
    double v = spacing(0);
    if (dim == 2) v *= spacing(1);
    return v;
  }

  Point center(Index i) const {
    const Index ix = i % res[0];
    const Index iy = i / res[0];
    Point c{lo[0] + (double(ix) + 0.5) * spacing(0), 0.0};
    if (dim == 2) c[1] = lo[1] + (double(iy) + 0.5) * spacing(1);
    return c;
  }

  Index index(Index ix, Index iy) const { return iy * res[0] + ix; }

  bool contains(const Point& x) const {
    if (x[0] < lo[0] || x[0] > hi[0]) return false;
    if (dim == 2 && (x[1] < lo[1] || x[1] > hi[1])) return false;
    return true;
  }

  bool same_layout(const GridSpec& o) const {
    return dim == o.dim && res == o.res && lo == o.lo && hi == o.hi;
  }
};

GridSpec make_grid(int dim, const std::vector<std::array<double, 2>>& bounds,
                   const std::vector<int>& resolution);

/// Real-valued function sampled at cell centers. Immutable by convention.
struct SampledFunction {
  GridSpec grid;
  Eigen::ArrayXd values;
  std::string desc;

  SampledFunction() = default;
  SampledFunction(GridSpec g, Eigen::ArrayXd v, std::string d = {});
};

/// Samples a callable (Point -> double) at every cell center.
SampledFunction sample(const GridSpec& grid,
                       const std::function<double(const Point&)>& fn,
                       std::string desc = {});

enum class Shape { ball, cube };

struct Ball {
  Point center{0.0, 0.0};
  double radius = 0.0;
};

/// Discretized family of balls (or axis-aligned cubes with side 2r) over
/// which suprema and weight constants are taken. Sorted by (center, radius).
struct BallFamily {
  std::vector<Ball> balls;
  Shape shape = Shape::ball;
};

struct RadiiPolicy {
  int levels = 1;     // dyadic radii r_min * 2^k, k = 0..levels-1
  double r_min = 0.0;
  double r_max = 0.0;
};

BallFamily ball_family(const GridSpec& grid, const RadiiPolicy& policy,
                       int center_stride, Shape shape = Shape::ball);

/// Membership predicate used everywhere: the cell center lies in the region.
bool cell_in_region(const Point& c, const Ball& b, Shape shape, int dim);

/// Calls fn(first_cell_index, count) for each contiguous run of member
/// cells (one run per grid row intersecting the region).
void for_each_member_span(const GridSpec& grid, const Ball& b, Shape shape,
                          const std::function<void(Index, Index)>& fn);

Index member_count(const GridSpec& grid, const Ball& b, Shape shape);

/// Midpoint quadrature of f over the whole grid.
double integrate(const SampledFunction& f);

/// Midpoint quadrature of f over region ∩ domain; returns 0 and sets
/// *empty when no cell center lies in the region.
double integrate(const SampledFunction& f, const Ball& region, Shape shape,
                 bool* empty = nullptr);

/// (1/|B ∩ domain|) ∫_B |f|, with the measure discretized as
/// member-cell count times cell volume. Throws EmptyIntersection.
double average_over_ball(const SampledFunction& f, const Ball& b,
                         Shape shape = Shape::ball);

/// Columnar text I/O: one line per cell "x [y] value" in cell order,
/// preceded by a header line "grid <dim> <nx> [ny] <xlo> <xhi> [ylo yhi]".
void write_samples(const SampledFunction& f, const std::string& path);
SampledFunction read_samples(const std::string& path);

}  // namespace vex
