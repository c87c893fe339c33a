#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "vex/errors.hpp"
#include "vex/grid.hpp"

namespace vex {

/// Matrices act on R^dim; for dim == 1 only the (0,0) entry is live and the
/// storage is still a 2x2 for uniformity.
using Matrix = Eigen::Matrix2d;

inline Matrix identity_matrix() { return Matrix::Identity(); }

inline Matrix scalar_matrix(double a) {
  Matrix m = Matrix::Identity();
  m(0, 0) = a;
  m(1, 1) = a;
  return m;
}

inline double det_n(const Matrix& a, int dim) {
  return dim == 1 ? a(0, 0) : a.determinant();
}

/// |det| after scaling each row to unit norm; scale-free singularity test.
inline double scaled_det(const Matrix& a, int dim) {
  if (dim == 1) {
    const double r = std::abs(a(0, 0));
    return r > 0.0 ? 1.0 : 0.0;
  }
  const double r0 = a.row(0).norm(), r1 = a.row(1).norm();
  if (r0 == 0.0 || r1 == 0.0) return 0.0;
  return std::abs(a.determinant()) / (r0 * r1);
}

inline bool invertible(const Matrix& a, int dim, double tol = 1e-12) {
  return scaled_det(a, dim) > tol;
}

inline Matrix inverse_n(const Matrix& a, int dim) {
  if (!invertible(a, dim)) throw SingularMatrix("matrix is singular");
  if (dim == 1) {
    Matrix inv = Matrix::Identity();
    inv(0, 0) = 1.0 / a(0, 0);
    return inv;
  }
  return a.inverse();
}

inline Point apply_n(const Matrix& a, const Point& x, int dim) {
  if (dim == 1) return Point{a(0, 0) * x[0], 0.0};
  return a * x;
}

}  // namespace vex
