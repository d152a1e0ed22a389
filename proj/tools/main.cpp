// corrint — integral-indicator toolkit for enterprise cash-flow panels.
//
// Machine-readable results go to the primary stream (stdout or --output),
// diagnostics to stderr. Exit codes: 0 success, 1 validation/infeasibility,
// 2 usage error, 3 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corrint/compare.hpp"
#include "corrint/error.hpp"
#include "corrint/indicator.hpp"
#include "corrint/panel_io.hpp"
#include "corrint/paper_table.hpp"
#include "corrint/series_io.hpp"
#include "corrint/strategy_io.hpp"
#include "corrint/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string read_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw corrint::Error(corrint::ErrorKind::Io, "cannot open input file: " + path);
    buffer << in.rdbuf();
  }
  return buffer.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path == "-") {
    std::cout << bytes;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw corrint::Error(corrint::ErrorKind::Io, "cannot open output file: " + path);
  out << bytes;
  if (!out) throw corrint::Error(corrint::ErrorKind::Io, "failed writing output file: " + path);
}

corrint::Panel load_panel_with_meta(const std::string& input, const std::string& meta_path) {
  std::istringstream in(read_input(input));
  corrint::Panel p = corrint::load_panel(in);
  if (!meta_path.empty()) corrint::apply_param_meta_file(p, meta_path);
  return p;
}

struct EngineFlags {
  std::size_t k = 6;
  std::string aggregate = "sum";
  std::size_t block = 256;
  std::size_t threads = 0;
  bool no_trailing_point = false;

  corrint::EngineConfig config() const {
    corrint::EngineConfig cfg;
    cfg.block = block;
    cfg.threads = threads;
    cfg.aggregate = aggregate == "mean" ? corrint::Aggregate::Mean : corrint::Aggregate::Sum;
    cfg.trailing_point = !no_trailing_point;
    return cfg;
  }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& flags) {
  cmd->add_option("--k", flags.k, "Window length in periods")->default_val(6)->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--aggregate", flags.aggregate, "Per-time reduction of G_i(t)")
      ->default_val("sum")
      ->check(CLI::IsMember({"sum", "mean"}));
  cmd->add_option("--block", flags.block, "Tile edge length in columns")->default_val(256);
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = all cores)")
      ->default_val(0)
      ->envname("CORRINT_THREADS");
  cmd->add_flag("--no-trailing-point", flags.no_trailing_point,
                "Skip the evaluation point just past the panel end");
}

// --- indicator ---------------------------------------------------------

int run_indicator(const std::string& input, const std::string& meta, const std::string& output,
                  const EngineFlags& flags, const std::string& format, bool per_param,
                  const std::string& label) {
  const corrint::Panel p = load_panel_with_meta(input, meta);
  const corrint::WindowSpec w{flags.k};
  const auto series = corrint::indicator_series(p, w, flags.config(), label);

  std::ostringstream out;
  if (format == "json") {
    corrint::write_series_json(series, out, per_param);
  } else {
    corrint::write_series_csv(series, out,
                              per_param ? std::span<const corrint::ParamMeta>(p.params)
                                        : std::span<const corrint::ParamMeta>());
  }
  write_output(output, out.str());
  return kExitOk;
}

// --- compare ------------------------------------------------------------

bool looks_like_panel(const std::string& bytes) {
  return bytes.rfind("period", 0) == 0;
}

corrint::IndicatorSeries load_comparison_side(const std::string& path, const EngineFlags& flags,
                                              const std::string& label) {
  const std::string bytes = read_input(path);
  std::istringstream in(bytes);
  if (looks_like_panel(bytes)) {
    const corrint::Panel p = corrint::load_panel(in);
    return corrint::indicator_series(p, corrint::WindowSpec{flags.k}, flags.config(), label);
  }
  if (!bytes.empty() && bytes[0] == '{') {
    auto s = corrint::read_series_json(in);
    s.mode_label = label;
    return s;
  }
  return corrint::read_series_csv(in, label);
}

int run_compare(const std::string& base_path, const std::string& ctrl_path,
                const std::string& output, const EngineFlags& flags, const std::string& format,
                const std::string& svg_path) {
  const auto base = load_comparison_side(base_path, flags, "basic_mode");
  const auto ctrl = load_comparison_side(ctrl_path, flags, "strat_plan");
  const auto cmp = corrint::compare_modes(base, ctrl);
  write_output(output, corrint::render_report(cmp, corrint::parse_report_format(format)));
  if (!svg_path.empty()) {
    write_output(svg_path, corrint::render_report(cmp, corrint::ReportFormat::Svg));
  }
  return kExitOk;
}

// --- strategy -----------------------------------------------------------

nlohmann::json plan_json(const corrint::StrategyModel& mdl) {
  auto assignments = nlohmann::json::array();
  const std::size_t p = mdl.process_count();
  for (std::size_t i = 0; i < mdl.strategy_count(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (mdl.assign[i * p + j]) {
        assignments.push_back({{"strategy", mdl.strategies[i]},
                               {"process", mdl.processes[j]},
                               {"cost", mdl.costs[i * p + j]}});
      }
    }
  }
  return assignments;
}

int run_strategy(const std::string& model_path, const std::string& config_path,
                 const std::string& output, bool optimize, double base_cost_flag,
                 bool base_cost_given) {
  corrint::StrategyModel mdl = corrint::load_strategy_model_file(model_path);
  corrint::StrategyConfig cfg;
  if (!config_path.empty()) cfg = corrint::load_strategy_config_file(config_path);
  if (base_cost_given) cfg.base_cost = base_cost_flag;
  mdl.budget = cfg.budget;

  nlohmann::json doc;
  doc["rule"] = corrint::coverage_rule_name(cfg.rule);
  if (cfg.budget) doc["budget"] = *cfg.budget;
  bool feasible = true;

  if (optimize) {
    const auto res = corrint::optimize_assignment(mdl, cfg.rule, cfg.budget);
    doc["objective"] = res.objective;
    doc["feasible"] = res.feasible;
    doc["unconstrained_min"] = res.unconstrained_min;
    doc["assignments"] = plan_json(res.model);
    feasible = res.feasible;
    mdl = res.model;
  } else {
    doc["objective"] = corrint::evaluate_plan(mdl);
    doc["assignments"] = plan_json(mdl);
  }

  if (cfg.budget) {
    const auto report = corrint::check_budget(mdl, cfg.base_cost);
    doc["budget_check"] = {{"base_cost", cfg.base_cost},
                           {"plan_cost", report.plan_cost},
                           {"total_cost", report.total_cost},
                           {"slack", report.slack},
                           {"feasible", report.feasible}};
    feasible = feasible && report.feasible;
  }

  write_output(output, doc.dump(2) + "\n");
  return feasible ? kExitOk : kExitData;
}

// --- synth --------------------------------------------------------------

int run_synth(const std::string& spec_path, const std::string& output, std::uint64_t seed,
              bool seed_given) {
  std::istringstream in(read_input(spec_path));
  corrint::SynthSpec spec = corrint::load_synth_spec(in);
  if (seed_given) spec.seed = seed;
  const corrint::Panel p = corrint::generate_panel(spec);
  std::ostringstream out;
  corrint::save_panel(p, out);
  write_output(output, out.str());
  return kExitOk;
}

// --- verify-paper -------------------------------------------------------

std::string check_line(const corrint::PaperCheck& c) {
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(4);
  line << (c.pass ? "pass" : "FAIL") << "  " << c.name << ": computed " << c.computed
       << ", expected " << c.expected << " (tolerance " << c.tolerance << ")";
  return line.str();
}

int run_verify_paper(const std::string& output, const std::string& format) {
  const auto report = corrint::verify_paper_table();
  std::ostringstream out;
  if (format == "json") {
    nlohmann::json doc;
    auto dump_checks = [](const std::vector<corrint::PaperCheck>& checks) {
      auto arr = nlohmann::json::array();
      for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"computed", c.computed},
                       {"expected", c.expected},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
      }
      return arr;
    };
    doc["rows"] = dump_checks(report.row_checks);
    doc["totals"] = dump_checks(report.total_checks);
    doc["all_pass"] = report.all_pass;
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& c : report.row_checks) out << check_line(c) << '\n';
    for (const auto& c : report.total_checks) out << check_line(c) << '\n';
    out << (report.all_pass ? "all checks passed" : "CHECKS FAILED") << " ("
        << report.row_checks.size() << " row checks, " << report.total_checks.size()
        << " total checks)\n";
  }
  write_output(output, out.str());
  return report.all_pass ? kExitOk : kExitData;
}

// --- validate -----------------------------------------------------------

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (const char ch : field) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

int run_validate(const std::string& input, const std::string& meta, const std::string& output) {
  const corrint::Panel p = load_panel_with_meta(input, meta);
  const auto report = corrint::validate_panel(p);
  std::ostringstream out;
  out << "severity,location,message\n";
  for (const auto& f : report.findings) {
    out << (f.severity == corrint::Severity::Error ? "error" : "warning") << ','
        << csv_escape(f.location) << ',' << csv_escape(f.message) << '\n';
  }
  write_output(output, out.str());
  return report.ok() ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integral-indicator toolkit for enterprise cash-flow panels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "corrint 1.0.0");

  // indicator
  auto* cmd_ind = app.add_subcommand("indicator", "Compute the indicator series of a panel");
  std::string ind_input = "-";
  std::string ind_meta;
  std::string ind_output = "-";
  std::string ind_format = "csv";
  std::string ind_label = "indicator";
  bool ind_per_param = false;
  EngineFlags ind_flags;
  cmd_ind->add_option("--input,-i", ind_input, "Panel CSV (default: stdin)");
  cmd_ind->add_option("--meta", ind_meta, "Sidecar metadata CSV (param_id,process_id,kind)");
  cmd_ind->add_option("--output,-o", ind_output, "Output path (default: stdout)");
  cmd_ind->add_option("--format", ind_format, "Output format")->default_val("csv")->check(CLI::IsMember({"csv", "json"}));
  cmd_ind->add_option("--label", ind_label, "Mode label recorded in the series");
  cmd_ind->add_flag("--per-param", ind_per_param, "Emit per-parameter G_i columns");
  add_engine_flags(cmd_ind, ind_flags);

  // compare
  auto* cmd_cmp = app.add_subcommand("compare", "Compare two regimes (panels or indicator series)");
  std::string cmp_base;
  std::string cmp_ctrl;
  std::string cmp_output = "-";
  std::string cmp_format = "csv";
  std::string cmp_svg;
  EngineFlags cmp_flags;
  cmd_cmp->add_option("--base", cmp_base, "Basic-mode panel or series")->required();
  cmd_cmp->add_option("--ctrl", cmp_ctrl, "Controlled-mode panel or series")->required();
  cmd_cmp->add_option("--output,-o", cmp_output, "Output path (default: stdout)");
  cmd_cmp->add_option("--format", cmp_format, "Report format")->default_val("csv")->check(CLI::IsMember({"csv", "json", "svg"}));
  cmd_cmp->add_option("--svg", cmp_svg, "Also write the chart to this file");
  add_engine_flags(cmd_cmp, cmp_flags);

  // strategy
  auto* cmd_str = app.add_subcommand("strategy", "Evaluate or optimize a strategy-to-process plan");
  std::string str_model;
  std::string str_config;
  std::string str_output = "-";
  bool str_optimize = false;
  double str_base_cost = 0.0;
  cmd_str->add_option("--model", str_model, "Strategy model CSV (strategy,process,cost[,assigned])")->required();
  cmd_str->add_option("--config", str_config, "JSON config with budget/rule/base_cost");
  cmd_str->add_option("--output,-o", str_output, "Output path (default: stdout)");
  cmd_str->add_flag("--optimize", str_optimize, "Minimize plan cost under the coverage rule");
  auto* base_cost_opt = cmd_str->add_option("--base-cost", str_base_cost,
                                            "Enterprise base cost for the budget check");

  // synth
  auto* cmd_syn = app.add_subcommand("synth", "Generate a synthetic panel from a spec");
  std::string syn_spec;
  std::string syn_output = "-";
  std::uint64_t syn_seed = 0;
  cmd_syn->add_option("--spec", syn_spec, "SynthSpec JSON")->required();
  cmd_syn->add_option("--output,-o", syn_output, "Output path (default: stdout)");
  auto* seed_opt = cmd_syn->add_option("--seed", syn_seed, "Override the spec's seed");

  // verify-paper
  auto* cmd_ver = app.add_subcommand("verify-paper", "Check the built-in published reference table");
  std::string ver_output = "-";
  std::string ver_format = "text";
  cmd_ver->add_option("--output,-o", ver_output, "Output path (default: stdout)");
  cmd_ver->add_option("--format", ver_format, "Report format")->default_val("text")->check(CLI::IsMember({"text", "json"}));

  // validate
  auto* cmd_val = app.add_subcommand("validate", "Validate a panel and report findings");
  std::string val_input = "-";
  std::string val_meta;
  std::string val_output = "-";
  cmd_val->add_option("--input,-i", val_input, "Panel CSV (default: stdin)");
  cmd_val->add_option("--meta", val_meta, "Sidecar metadata CSV");
  cmd_val->add_option("--output,-o", val_output, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    std::cout << app.version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (cmd_ind->parsed()) {
      return run_indicator(ind_input, ind_meta, ind_output, ind_flags, ind_format, ind_per_param,
                           ind_label);
    }
    if (cmd_cmp->parsed()) {
      return run_compare(cmp_base, cmp_ctrl, cmp_output, cmp_flags, cmp_format, cmp_svg);
    }
    if (cmd_str->parsed()) {
      return run_strategy(str_model, str_config, str_output, str_optimize, str_base_cost,
                          base_cost_opt->count() > 0);
    }
    if (cmd_syn->parsed()) {
      return run_synth(syn_spec, syn_output, syn_seed, seed_opt->count() > 0);
    }
    if (cmd_ver->parsed()) {
      return run_verify_paper(ver_output, ver_format);
    }
    if (cmd_val->parsed()) {
      return run_validate(val_input, val_meta, val_output);
    }
  } catch (const corrint::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == corrint::ErrorKind::Io ? kExitIo : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
