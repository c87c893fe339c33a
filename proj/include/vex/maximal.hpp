#pragma once

#include "vex/exponents.hpp"
#include "vex/grid.hpp"

namespace vex {

enum class MaximalFlavor { hl, fractional, fractional_s, sharp };

struct MaximalConfig {
  double alpha = 0.0;
  double s = 1.0;
  BallFamily balls;
  MaximalFlavor flavor = MaximalFlavor::hl;
};

/// Hardy-Littlewood maximal function: per cell, the max of average_over_ball
/// of |f| over the family balls containing that cell. Throws ConfigError if
/// some cell is contained in no ball.
SampledFunction hl_maximal(const SampledFunction& f, const BallFamily& balls);

/// Fractional maximal M_alpha: per cell the max of |B|^{alpha/n} * avg_B |f|
/// with the discretized ball measure.
SampledFunction fractional_maximal(const SampledFunction& f, double alpha,
                                   const BallFamily& balls);

/// M_{alpha,s} f = (M_{alpha s} |f|^s)^{1/s}; alpha = 0 uses the
/// Hardy-Littlewood operator inside.
SampledFunction fractional_maximal_s(const SampledFunction& f, double alpha,
                                     double s, const BallFamily& balls);

/// Sharp maximal function: per cell the max over containing balls of the
/// mean oscillation of f around the ball mean of |f|.
/// classical_mean = true subtracts the ball mean of f instead.
SampledFunction sharp_maximal(const SampledFunction& f, const BallFamily& balls,
                              bool classical_mean = false);

/// Dispatch on MaximalConfig.
SampledFunction apply_maximal(const SampledFunction& f, const MaximalConfig& cfg);

/// Rubio de Francia iteration: partial sum over k = 0..terms of
/// M^k h / (2 ||M||)^k with M^0 h = |h|. tail_bound, when given, receives
/// the truncation proxy ||M|| * sup(M^K h) / (2^K ||M||^K).
SampledFunction rubio_de_francia(const SampledFunction& h,
                                 double opnorm_estimate, int terms,
                                 const BallFamily& balls,
                                 double* tail_bound = nullptr);

/// Empirical ||M||_{p(.)} estimate: 2 * max over probes of ||Mf||/||f||.
/// Zero-norm probes are skipped; throws ZeroNorm if all are.
double estimate_maximal_opnorm(const ExponentField& p,
                               const std::vector<SampledFunction>& probes,
                               const BallFamily& balls, double norm_tol = 1e-8);

/// The deterministic probe set used by default for opnorm estimation:
/// characteristic functions of dyadic intervals/cubes plus two smooth bumps.
std::vector<SampledFunction> default_opnorm_probes(const GridSpec& grid);

}  // namespace vex
