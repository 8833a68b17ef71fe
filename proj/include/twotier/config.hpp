#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "twotier/model.hpp"

namespace twotier {

/// Built-in scenarios "WSN1-uniform", "WSN1-gaussian", "WSN2-uniform",
/// "WSN2-gaussian" (case-insensitive). `limited` adds the range budgets.
Scenario preset(std::string_view name, bool limited = false);

/// Flat `key = value` text. Values are numbers, bare words or JSON arrays;
/// arrays may span lines and `#` starts a comment.
///
///   n_aps = 2
///   n_fcs = 1
///   a = [1, 2]
///   b = [[1], [2]]
///   beta = 0.25
///   region = [0, 1]            # or [xmin, xmax, ymin, ymax]
///   density = uniform          # gaussian | empirical
///   gm_weights = [1]
///   gm_means = [[0.5, 0]]
///   gm_variances = [[0.1, 0.1]]
///   empirical_file = grid.csv  # relative to the config file
///   sensor_budget = 4
///   ap_budgets = [25, 9]
Scenario parse_scenario(std::istream& in, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

void write_scenario(std::ostream& out, const Scenario& sc);
void save_scenario(const std::filesystem::path& path, const Scenario& sc);

}  // namespace twotier
