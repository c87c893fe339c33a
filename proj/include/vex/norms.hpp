#pragma once

#include "vex/exponents.hpp"
#include "vex/grid.hpp"

namespace vex {

/// Result of the Luxemburg-norm bisection.
struct NormResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double modular_at_value = 0.0;
  int iterations = 0;
};

/// The modular: sum over cells with finite p of |f|^p(x) * cellvol, plus the
/// discrete essential sup of |f| over the cells where p = infinity.
double modular(const SampledFunction& f, const ExponentField& p);

/// Same, with the exponent values at cell centers precomputed.
double modular(const SampledFunction& f, const Eigen::ArrayXd& p_values);

/// Exponent values at every cell center of the grid.
Eigen::ArrayXd exponent_values(const ExponentField& p, const GridSpec& grid);

/// Luxemburg norm inf{lambda > 0 : modular(f/lambda) <= 1} by monotone
/// bisection. The returned value is the upper bracket end, so
/// modular_at_value <= 1 always holds.
NormResult luxemburg_norm(const SampledFunction& f, const ExponentField& p,
                          double tol = 1e-8);
NormResult luxemburg_norm(const SampledFunction& f,
                          const Eigen::ArrayXd& p_values, double cell_volume,
                          double tol = 1e-8);

/// integral |fg| / (||f||_p ||g||_p'). Returns 0 when the numerator is 0;
/// throws ZeroNorm when a norm vanishes but the numerator does not.
double holder_defect(const SampledFunction& f, const SampledFunction& g,
                     const ExponentField& p, double tol = 1e-8);

/// Strictly positive locally integrable weight, as samples.
struct Weight {
  SampledFunction samples;
  explicit Weight(SampledFunction s);
};

/// Discretized [w]_{A_1}: max over cells of M w(x) / w(x) with the
/// Hardy-Littlewood maximal over the given ball family.
double a1_constant(const Weight& w, const BallFamily& balls);

///// Discretized [w]_{A_p}: max over cubes of (avg w)(avg w^{-1/(p-1)})^{p-1}.
double ap_constant(const Weight& w, double p, const BallFamily& cubes);

/// Muckenhoupt-Wheeden A(p,q) constant. p > 1 uses
/// (avg w^q)^{1/q} (avg w^{-p'})^{1/p'}; p = 1 uses (max_Q 1/w)(avg w^q)^{1/q}.
double apq_constant(const Weight& w, double p, double q,
                    const BallFamily& cubes);

}  // namespace vex
