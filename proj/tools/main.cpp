// Command-line front end: hypothesis audits, inequality verification runs,
// Luxemburg norms, and operator application on sampled functions.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vex/expr.hpp"
#include "vex/verify.hpp"

namespace {

using namespace vex;

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  int refine = 0;
  bool waive = false;
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool needs_config = true) {
  auto* c = cmd->add_option("--config", opts->config_path, "config file (JSON)");
  if (needs_config) c->required();
  cmd->add_option("--out", opts->out_path, "output file (default: stdout)");
  cmd->add_option("--format", opts->format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--refine", opts->refine,
                  "override refinement levels (verify: resolutions in the "
                  "trend; apply: quadrature depth)");
  cmd->add_flag("--waive-hypotheses", opts->waive,
                "run checks even if the hypothesis audit fails (recorded)");
}

void write_out(const std::string& body, const std::string& path) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path);
  out << body;
}

int exit_code(const std::vector<InequalityReport>& reports) {
  for (const InequalityReport& r : reports)
    if (r.verdict != BoundVerdict::bounded_stable) return 1;
  return 0;
}

SampledFunction load_function(const ExperimentConfig& cfg) {
  if (!cfg.function_file.empty()) return read_samples(cfg.function_file);
  if (!cfg.function_expr.empty())
    return sample(cfg.grid, parse_expr(cfg.function_expr), cfg.function_expr);
  throw ConfigError("config needs a function (expr or file)");
}

int run_audit(const CommonOpts& opts) {
  ExperimentConfig cfg = load_config(opts.config_path);
  cfg.waive_hypotheses = cfg.waive_hypotheses || opts.waive;
  const CheckReport a = audit_hypotheses(cfg);
  InequalityReport rep;
  rep.check = "conditions_audit";
  rep.constant = a.constant;
  rep.trend = {a.constant, a.constant};
  rep.notes = a.notes;
  rep.verdict = a.verdict == Verdict::pass ? BoundVerdict::bounded_stable
                : a.verdict == Verdict::fail ? BoundVerdict::growing
                                             : BoundVerdict::inconclusive;
  for (const auto& [clause, ok] : a.evidence) {
    CaseRow row;
    row.id = "clause " + std::to_string(int(clause));
    row.lhs = ok;
    row.rhs = 1.0;
    row.ratio = ok;
    rep.cases.push_back(std::move(row));
  }
  rep.config_hash = cfg.hash;
  const std::vector<InequalityReport> reports{rep};
  write_out(opts.format == "csv" ? report_csv(reports, cfg.hash)
                                 : report_json(reports, cfg.hash),
            opts.out_path);
  return cfg.waive_hypotheses ? 0 : exit_code(reports);
}

int run_verify(const CommonOpts& opts) {
  ExperimentConfig cfg = load_config(opts.config_path);
  cfg.waive_hypotheses = cfg.waive_hypotheses || opts.waive;
  if (opts.refine > 0) cfg.refine_levels = opts.refine;
  const std::vector<InequalityReport> reports = run_experiment(cfg);
  write_out(opts.format == "csv" ? report_csv(reports, cfg.hash)
                                 : report_json(reports, cfg.hash),
            opts.out_path);
  return exit_code(reports);
}

int run_norm(const CommonOpts& opts) {
  const ExperimentConfig cfg = load_config(opts.config_path);
  const SampledFunction f = load_function(cfg);
  const NormResult r = luxemburg_norm(f, cfg.p, cfg.tol);
  nlohmann::json doc;
  doc["value"] = r.value;
  doc["bracket_lo"] = r.bracket_lo;
  doc["bracket_hi"] = r.bracket_hi;
  doc["modular_at_value"] = r.modular_at_value;
  doc["iterations"] = r.iterations;
  write_out(doc.dump(2) + "\n", opts.out_path);
  return 0;
}

int run_apply(const CommonOpts& opts) {
  ExperimentConfig cfg = load_config(opts.config_path);
  if (opts.refine > 0) cfg.quad.refine_levels = opts.refine;
  const SampledFunction f = load_function(cfg);
  SampledFunction out;
  if (cfg.op_name == "t_alpha") {
    if (!cfg.kernel) throw ConfigError("apply t_alpha needs a kernel config");
    out = apply_T_alpha(f, *cfg.kernel, cfg.quad).result;
  } else {
    const BallFamily balls = make_family(cfg.grid, cfg.family);
    if (cfg.op_name == "hl")
      out = hl_maximal(f, balls);
    else if (cfg.op_name == "fractional")
      out = fractional_maximal(f, cfg.alpha, balls);
    else if (cfg.op_name == "fractional_s")
      out = fractional_maximal_s(f, cfg.alpha, cfg.op_s, balls);
    else if (cfg.op_name == "sharp")
      out = sharp_maximal(f, balls);
    else
      throw ConfigError("unknown operator '" + cfg.op_name + "'");
  }
  if (opts.out_path.empty()) throw ConfigError("apply requires --out");
  write_samples(out, opts.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"variable-exponent norm and operator verification"};
  app.require_subcommand(1);

  CommonOpts audit_opts, verify_opts, norm_opts, apply_opts;
  add_common(app.add_subcommand("audit", "run the hypothesis audit"),
             &audit_opts);
  add_common(app.add_subcommand("verify", "run the configured checks"),
             &verify_opts);
  add_common(app.add_subcommand("norm", "Luxemburg norm of a function"),
             &norm_opts);
  add_common(app.add_subcommand("apply", "apply an operator to a function"),
             &apply_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("audit")) return run_audit(audit_opts);
    if (app.got_subcommand("verify")) return run_verify(verify_opts);
    if (app.got_subcommand("norm")) return run_norm(norm_opts);
    if (app.got_subcommand("apply")) return run_apply(apply_opts);
  } catch (const vex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const vex::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const vex::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const vex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
