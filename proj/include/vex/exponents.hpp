#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vex/grid.hpp"
#include "vex/linalg.hpp"

namespace vex {

/// An exponent function p(.) on R^dim with values in [1, +inf]. Backed by a
/// closed form so asymptotic checkers can probe arbitrarily far outside any
/// grid. p_minus/p_plus are essential inf/sup approximations over the probe
/// box recorded at construction.
struct ExponentField {
  int dim = 1;
  std::function<double(const Point&)> fn;
  double p_minus = 1.0;
  double p_plus = 1.0;
  std::optional<double> p_infinity;
  std::string desc;
};

/// Probe box for bound estimation: [-half, half]^dim sampled at
/// `samples` points per axis (default is 4x a 512-cell working grid).
struct ProbeBox {
  double half = 8.0;
  int samples = 2048;
};

ExponentField make_exponent(int dim, std::function<double(const Point&)> fn,
                            std::string desc = {}, ProbeBox probe = {},
                            std::optional<double> p_infinity = std::nullopt);
ExponentField constant_exponent(int dim, double p0);
ExponentField exponent_from_expr(int dim, const std::string& src,
                                 ProbeBox probe = {});

double eval_exponent(const ExponentField& p, const Point& x);
bool exponent_infinite_at(const ExponentField& p, const Point& x);

/// Pointwise conjugate: 1/p + 1/p' = 1, with p = 1 <-> p' = inf.
ExponentField conjugate(const ExponentField& p);

/// q(.) with 1/q = 1/p - alpha/n. Requires p_plus < n/alpha for alpha > 0.
ExponentField sobolev_shift(const ExponentField& p, double alpha, int n);

/// Pointwise scaling beta * p(.) (beta >= 1 keeps values in [1, inf]).
ExponentField scale_exponent(const ExponentField& p, double beta);

enum class Verdict { pass, fail, inconclusive };

const char* verdict_name(Verdict v);

struct CheckReport {
  Verdict verdict = Verdict::inconclusive;
  double constant = 0.0;
  std::vector<std::pair<double, double>> evidence;  // (scale, measured value)
  std::string notes;
};

struct Lh0Options {
  double box_half = 2.0;
  int base_points = 33;  // per axis
  int levels = 16;       // pair distances 2^-1 .. 2^-levels
};

/// Local log-Holder check: constant = sup |p(x)-p(y)| * (-log|x-y|) over
/// probe pairs; pass iff finite and stable as smaller distances are added.
CheckReport check_lh0(const ExponentField& p, const Lh0Options& opt = {});

struct LhInfOptions {
  double r0 = 1.0;
  int levels = 12;          // annuli [R_k, 2 R_k], R_k = r0 * 2^k
  int radii_per_annulus = 64;
  int directions = 16;      // dim 2 only
};

/// Log-Holder decay at infinity: constant = sup |p(x)-p_inf| * log(e+|x|).
CheckReport check_lh_inf(const ExponentField& p, double p_inf,
                         const LhInfOptions& opt = {});

struct NInfOptions {
  double r0 = 1.0;
  int levels = 11;  // doubling annuli out to r0 * 2^levels
  double rho_tail = 0.9;
  // prime count so midpoint samples cannot resonate with unit-periodic
  // exponent features across the doubling annuli
  int radial_samples = 509;
  int angular_samples = 64;  // dim 2 only
  double deviation_tol = 1e-14;
};

///// N_infinity integrability: quadrature of exp(-Lambda |1/p - 1/p_inf|^-1)
/// over Omega_+ intersected with doubling annuli. Pass needs geometric decay
/// of the last three annulus contributions; non-decaying contributions fail.
CheckReport check_n_inf(const ExponentField& p, double lambda_inf,
                        double p_inf, const NInfOptions& opt = {});

/// Coarse lattice search for witnesses (Lambda_inf, p_inf); returns the
/// first passing pair in lattice order, if any.
std::optional<std::pair<double, double>> search_n_inf(
    const ExponentField& p, const std::vector<double>& lambdas,
    const std::vector<double>& p_infs, const NInfOptions& opt = {});

/// K_0 condition: constant = max over cubes of
/// ||chi_Q||_{p} ||chi_Q||_{p'} / |Q| with the discretized cube measure.
CheckReport check_k0(const ExponentField& p, const GridSpec& grid,
                     const BallFamily& cubes, double norm_tol = 1e-8);

enum class CompatMode { le, eq };

struct CompatOptions {
  double box_half = 4.0;
  int samples = 1024;  // per axis, ~4x a working grid
  double slack = 1e-9;
};

/// Pointwise matrix-compatibility audit: mode le checks p(Ax) <= p(x) + eps
/// on a dense probe grid, mode eq checks |p(Ax) - p(x)| <= eps.
CheckReport check_matrix_compat(const ExponentField& p, const Matrix& a,
                                CompatMode mode, const CompatOptions& opt = {});

}  // namespace vex
