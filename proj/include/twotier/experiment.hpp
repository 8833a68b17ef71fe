#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twotier/analytic.hpp"
#include "twotier/model.hpp"
#include "twotier/optimize.hpp"
#include "twotier/scene.hpp"

namespace twotier {

struct ExperimentConfig {
  std::optional<std::string> preset;
  std::optional<std::filesystem::path> config_file;
  Mode mode = Mode::unconstrained;
  OptimOptions opts;
  std::size_t resolution = 100;
  std::optional<double> beta;  // overrides the scenario's beta
  std::vector<double> beta_list;
  std::filesystem::path out_dir = "out";

  void validate(bool sweep) const;
};

/// The scenario named by the config, with the beta override applied.
Scenario resolve_scenario(const ExperimentConfig& cfg);

struct RunStats {
  std::size_t best = 0;
  double best_power = 0.0;
  double mean_power = 0.0;
  double worst_power = 0.0;
  double best_coverage = 0.0;
  double best_power_fine = 0.0;  // best deployment re-evaluated at twice the resolution
};

struct ExperimentResult {
  Scenario scenario;
  DensityGrid grid;
  std::vector<RunTrace> runs;
  RunStats stats;
};

/// Runs every restart and writes summary.csv, stats.csv, trace_<k>.csv,
/// best_deployment.json, best_partition.csv and best.svg into cfg.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Trade-off sweep over cfg.beta_list; writes tradeoff.csv and tradeoff.svg.
TradeoffCurve sweep_command(const ExperimentConfig& cfg);

/// "lo:hi:log:n", "lo:hi:lin:n" or a comma separated list.
std::vector<double> parse_beta_list(std::string_view text);

RunStats summarize(const std::vector<RunTrace>& runs, const Scenario& sc, const DensityGrid& fine);

}  // namespace twotier
