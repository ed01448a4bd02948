#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "geophase/error.hpp"
#include "geophase/harness/config.hpp"
#include "geophase/harness/report.hpp"
#include "geophase/harness/scenario.hpp"
#include "geophase/harness/verify.hpp"

namespace fs = std::filesystem;
using namespace geophase;
using namespace geophase::harness;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::validation: return 1;
    case ErrorCode::io: return 3;
    default: return 2;
  }
}

struct Common {
  std::string config;
  std::string scenario;
  std::string out;
  std::string format;
  int threads = 1;
};

json read_document(const Common& c) {
  if (!c.scenario.empty()) return builtin_scenario(c.scenario);
  std::ifstream in(c.config);
  if (!in) fail(ErrorCode::io, "cannot open config file: " + c.config);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::validation, std::string("invalid configuration:\n  (document): ") + e.what());
  }
}

std::vector<std::string> formats_for(const Common& c, const std::vector<std::string>& fallback) {
  if (c.format.empty()) return fallback;
  return {c.format};
}

fs::path out_dir(const Common& c, const std::string& fallback) {
  return c.out.empty() ? fs::path(fallback) : fs::path(c.out);
}

void print_errors(const RunReport& r) {
  for (const auto& e : r.errors)
    std::cerr << fmt::format("{}: [{}] {}\n", r.name, error_code_name(e.code), e.message);
}

int cmd_run(const Common& c) {
  const ScenarioConfig cfg = parse_config(read_document(c));
  const ScenarioResult result = run_scenario(cfg);
  print_errors(result.report);
  for (const auto& path :
       write_outputs(result, cfg, out_dir(c, cfg.outputs.dir), formats_for(c, cfg.outputs.formats)))
    std::cout << "wrote " << path.string() << "\n";
  return result.report.exit_code();
}

int cmd_sweep(const Common& c) {
  const json doc = read_document(c);
  const ScenarioConfig cfg = parse_config(doc);
  const std::vector<RunReport> rows = run_sweep(doc, c.threads);
  int code = 0;
  for (const auto& row : rows) {
    print_errors(row);
    if (code == 0) code = row.exit_code();
  }
  for (const auto& path : write_sweep_outputs(rows, cfg.name, out_dir(c, cfg.outputs.dir),
                                              formats_for(c, cfg.outputs.formats)))
    std::cout << "wrote " << path.string() << "\n";
  return code;
}

int cmd_emit_plot(const Common& c) {
  ScenarioConfig cfg = parse_config(read_document(c));
  const ScenarioResult result = run_scenario(cfg);
  print_errors(result.report);
  if (!result.trajectory) return result.report.exit_code();
  const fs::path path = out_dir(c, cfg.outputs.dir) / (cfg.name + "_plot.csv");
  write_text_file(path, plot_data_csv(result, cfg));
  std::cout << "wrote " << path.string() << "\n";
  return result.report.exit_code();
}

int cmd_verify(const Common& c, std::optional<double> kappa) {
  VerifyOptions opt;
  opt.threads = c.threads;
  if (kappa) opt.constants.kappa = *kappa;
  const VerifySummary summary = verify(opt);
  std::cout << verify_text(summary);
  if (!c.out.empty()) {
    const fs::path dir(c.out);
    for (const auto& format : formats_for(c, {"json", "csv"})) {
      if (format == "json") write_text_file(dir / "verify.json", verify_to_json(summary).dump(2) + "\n");
      if (format == "csv") write_text_file(dir / "verify.csv", verify_to_csv(summary));
    }
  }
  return summary.all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geophase: adiabatic geometric-phase and thermodynamic toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GEOPHASE_VERSION);

  Common common;
  std::optional<double> kappa;
  auto add_common = [&common](CLI::App* sub, bool needs_config) {
    auto* group = sub->add_option_group("source");
    auto* cfg = group->add_option("--config", common.config, "JSON config file");
    auto* sc = group->add_option("--scenario", common.scenario, "bundled scenario name");
    if (needs_config) group->require_option(1);
    cfg->excludes(sc);
    sub->add_option("--out", common.out, "output directory");
    sub->add_option("--format", common.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "run one scenario");
  add_common(run, true);
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  add_common(sweep, true);
  auto* plot = app.add_subcommand("emit-plot-data", "write long-format plot data (series,x,y)");
  add_common(plot, true);
  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  ver->add_option("--out", common.out, "directory for verify.json / verify.csv");
  ver->add_option("--format", common.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  ver->add_option("--threads", common.threads, "worker threads")->check(CLI::PositiveNumber);
  ver->add_option("--kappa", kappa, "override kappa (forces the constants check)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(common);
    if (sweep->parsed()) return cmd_sweep(common);
    if (plot->parsed()) return cmd_emit_plot(common);
    if (ver->parsed()) return cmd_verify(common, kappa);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
