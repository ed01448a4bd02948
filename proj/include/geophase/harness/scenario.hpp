#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geophase/harness/config.hpp"
#include "geophase/harness/report.hpp"
#include "geophase/propagator.hpp"

namespace geophase::harness {

struct ScenarioResult {
  RunReport report;
  std::optional<Trajectory> trajectory;
  std::vector<double> fidelity;
};

/// propagate -> decompose -> thermo -> gravity (-> reduction). Stage
/// failures are captured into report.errors; nothing is thrown for them.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// One report per sweep value, in the given order. Rows run on up to
/// `threads` workers; a failing row does not stop the others.
std::vector<RunReport> run_sweep(const json& doc, int threads = 1);

/// Writes <name>.json / <name>.csv (and <name>_trajectory.csv when asked).
/// Returns the written paths.
std::vector<std::filesystem::path> write_outputs(const ScenarioResult& result,
                                                 const ScenarioConfig& cfg,
                                                 const std::filesystem::path& dir,
                                                 const std::vector<std::string>& formats);

std::vector<std::filesystem::path> write_sweep_outputs(
    const std::vector<RunReport>& rows, const std::string& name,
    const std::filesystem::path& dir, const std::vector<std::string>& formats);

/// Trajectory table: t, Re/Im of each amplitude, norm, F(t), eps(t).
std::string trajectory_csv(const ScenarioResult& result);

/// Tidy long-format (series, x, y) rows for plotting.
std::string plot_data_csv(const ScenarioResult& result, const ScenarioConfig& cfg);

/// Bundled example scenarios as (name, config document).
const std::vector<std::pair<std::string, json>>& builtin_scenarios();
const json& builtin_scenario(const std::string& name);

/// Parallel map over [0, count) with at most `threads` workers.
template <class F>
void parallel_for(std::size_t count, int threads, F&& body);

}  // namespace geophase::harness

#include <algorithm>
#include <thread>

template <class F>
void geophase::harness::parallel_for(std::size_t count, int threads, F&& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  for (auto& th : pool) th.join();
}
