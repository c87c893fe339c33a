#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vex/exponents.hpp"
#include "vex/grid.hpp"
#include "vex/linalg.hpp"

namespace vex {

/// Degree-zero homogeneous function on the unit sphere. In dimension 1 the
/// sphere is the two-point set {+1, -1}; in dimension 2 a 2pi-periodic
/// angle table (>= 16 samples, linear interpolation) with an optional
/// closed form that takes precedence.
struct SphereFunction {
  int dim = 1;
  double at_plus = 1.0;
  double at_minus = 1.0;
  std::vector<double> table;
  std::function<double(double)> closed_form;  // angle -> value
  std::string desc;
};

SphereFunction sphere_constant(int dim, double c = 1.0);
/// Named forms: "constant", "cos" (first coordinate of x'), "coordinate"
/// (alias of "cos"; sign(x) in dimension 1).
SphereFunction sphere_from_name(int dim, const std::string& name);
SphereFunction sphere_from_table(std::vector<double> table,
                                 std::string desc = {});

/// Homogeneous extension: value at x' = x/|x|. Throws on the zero vector.
double eval_sphere(const SphereFunction& omega, const Point& x);

/// Discretized L^p(Sigma) norm of omega.
double sphere_lp_norm(const SphereFunction& omega, double p);

struct ModulusOptions {
  int directions = 32;     // shift directions (dim 2)
  int radii = 8;           // shift radii per t
  int sphere_samples = 512;  // angle quadrature (dim 2)
};

/// L^p modulus of continuity: sup over lattice shifts |y| <= t of
/// ||omega((.+y)') - omega(.)||_{p,Sigma}, using the renormalized
/// homogeneous extension for the shifted argument.
double modulus_of_continuity(const SphereFunction& omega, double p, double t,
                             const ModulusOptions& opt = {});

/// Size hypothesis: omega in L^{p_i}(Sigma) with p_i > q_i.
CheckReport check_h1(const SphereFunction& omega, double q_i, double p_i);

struct DiniOptions {
  double rho_tail = 0.9;
  int nodes_per_block = 8;
  ModulusOptions modulus;
};

/// Dini hypothesis: integral over [t_min, 1] of modulus(t)/t dt, by
/// log-spaced quadrature over dyadic blocks; pass needs geometric block
/// decay.
CheckReport check_h2_dini(const SphereFunction& omega, double p_i,
                          double t_min, const DiniOptions& opt = {});

/// The tuple defining T_alpha and its hypotheses.
struct KernelConfig {
  int n = 1;
  double alpha = 0.0;
  std::vector<Matrix> matrices;
  std::vector<double> q_list;
  std::vector<SphereFunction> omegas;
  std::vector<double> p_list;  // H1 witnesses, p_i > q_i
  double s = 1.0;              // 1/p_1 + ... + 1/p_m + 1/s = 1

  int m() const { return int(matrices.size()); }
};

/// Convenience: fills s from p_list via the defining identity.
double s_from_p_list(const std::vector<double>& p_list);

/// Hypothesis audit for the kernel tuple; violations are reported clauses,
/// not exceptions.
CheckReport validate_kernel(const KernelConfig& cfg);

/// K(x,y) = prod_i omega_i(x - A_i y) |x - A_i y|^{-n/q_i}.
double kernel_eval(const KernelConfig& cfg, const Point& x, const Point& y,
                   double eps_sing = 1e-12);

struct QuadOptions {
  int refine_levels = 6;   // dyadic refinement depth near singular points
  double eps_sing = -1.0;  // flag radius; < 0 means 1.5 cell diameters
  double max_dropped_fraction = 0.10;
};

struct TAlphaResult {
  SampledFunction result;
  Eigen::ArrayXd error_indicator;  // |level L - level L-1| per cell
  double dropped_fraction = 0.0;   // estimated excluded-mass fraction
};

/// T_alpha f by midpoint quadrature with graded dyadic refinement around the
/// singular points y_i* = A_i^{-1} x and the innermost shell dropped.
TAlphaResult apply_T_alpha(const SampledFunction& f, const KernelConfig& cfg,
                           const QuadOptions& quad = {});

/// Point evaluation of T_alpha f(x) at a fixed refinement level.
double apply_T_alpha_at(const SampledFunction& f, const KernelConfig& cfg,
                        const Point& x, const QuadOptions& quad = {});

}  // namespace vex
