#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vex/exponents.hpp"
#include "vex/grid.hpp"
#include "vex/maximal.hpp"
#include "vex/norms.hpp"
#include "vex/rough.hpp"
#include "vex/suite.hpp"

namespace vex {

enum class BoundVerdict { bounded_stable, growing, inconclusive };
const char* bound_verdict_name(BoundVerdict v);

struct CaseRow {
  std::string id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool valid = true;
  std::string note;
};

/// One verified inequality: constant = max of the per-case ratios at the
/// finest resolution; trend = that constant at successive resolutions
/// (coarse to fine).
struct InequalityReport {
  std::string check;
  double constant = 0.0;
  std::vector<CaseRow> cases;
  std::vector<double> trend;
  BoundVerdict verdict = BoundVerdict::inconclusive;
  std::string notes;
  uint64_t config_hash = 0;
};

/// Ball/cube family recipe; zero radii mean "derive from the grid"
/// (r_max = domain diameter so every cell is covered, r_min = 4 cells,
/// levels to span dyadically).
struct FamilyPolicy {
  int levels = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  int center_stride = 8;
  Shape shape = Shape::ball;
};

BallFamily make_family(const GridSpec& grid, const FamilyPolicy& policy);

struct ExperimentConfig {
  GridSpec grid;
  int n = 1;
  double alpha = 0.0;
  ExponentField p;
  std::optional<KernelConfig> kernel;
  FamilyPolicy family;
  std::string suite_id = "standard";
  double suite_scale = 1.0;
  std::vector<std::string> checks;
  double tol = 1e-8;
  int refine_levels = 2;
  double stability_threshold = 0.2;
  QuadOptions quad;
  double lambda_inf = 32.0;  // N_inf witness used by the audit
  std::optional<Matrix> comp_matrix;
  CompatMode compat_mode = CompatMode::eq;
  bool waive_hypotheses = false;
  // norm/apply payloads
  std::string function_expr;
  std::string function_file;
  std::string op_name = "hl";
  double op_s = 1.0;
  uint64_t hash = 0;  // FNV-1a of the canonical config text
};

/// Parses the JSON config (field names mirror ExperimentConfig; format
/// documented in the README). Throws ConfigError / ParseError.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

uint64_t fnv1a(const std::string& bytes);

/// Multilinear interpolation of a sampled field at an arbitrary point,
/// clamped to the grid (values outside decay to the boundary cells).
double interpolate(const SampledFunction& f, const Point& x);

/// Builds the operator under test for a given grid and family.
using OpBuilder = std::function<std::function<SampledFunction(
    const SampledFunction&)>(const GridSpec&, const BallFamily&)>;

InequalityReport verify_strong_bound(
    const std::string& check_id, const OpBuilder& op, const ExponentField& p,
    const ExponentField& q, const std::vector<SuiteCase>& suite,
    const std::vector<GridSpec>& grids, const FamilyPolicy& fam, double tol,
    double stability = 0.2);

InequalityReport verify_weak_bound(
    const std::string& check_id, const OpBuilder& op, const ExponentField& p,
    const ExponentField& q, const std::vector<SuiteCase>& suite,
    const std::vector<GridSpec>& grids, const FamilyPolicy& fam, double tol,
    double stability = 0.2, int lambda_levels = 32);

InequalityReport verify_msharp_pointwise(
    const KernelConfig& cfg, const std::vector<SuiteCase>& suite,
    const std::vector<GridSpec>& grids, const FamilyPolicy& fam,
    const QuadOptions& quad, double stability = 0.2);

/// Composition with a matrix dilation. mode eq asserts the explicit bound
/// max(1, D^{1/p_minus}) with D = |det A^-1| (slack 1e-6); mode le only
/// reports the empirical constant.
InequalityReport verify_composition(const ExponentField& p, const Matrix& a,
                                    CompatMode mode,
                                    const std::vector<SuiteCase>& suite,
                                    const std::vector<GridSpec>& grids,
                                    double tol, double slack = 1e-6);

/// Aggregated hypothesis audit: kernel clauses, H1/H2 per sphere function,
/// exponent range 1 <= s <= p- <= p+ (< n/alpha), matrix compatibility, and
/// N_inf / K_0 on q(.)/s.
CheckReport audit_hypotheses(const ExperimentConfig& config);

std::vector<InequalityReport> run_experiment(const ExperimentConfig& config);

std::string report_json(const std::vector<InequalityReport>& reports,
                        uint64_t config_hash);
std::string report_csv(const std::vector<InequalityReport>& reports,
                       uint64_t config_hash);
void emit_report(const std::vector<InequalityReport>& reports,
                 const std::string& format, const std::string& path,
                 uint64_t config_hash);

}  // namespace vex
