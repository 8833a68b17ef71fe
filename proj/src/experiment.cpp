#include "twotier/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "twotier/config.hpp"
#include "twotier/errors.hpp"
#include "twotier/io.hpp"
#include "twotier/partition.hpp"

namespace twotier {

void ExperimentConfig::validate(bool sweep) const {
  if (preset.has_value() == config_file.has_value())
    throw UsageError("give exactly one of a preset or a config file");
  if (sweep && beta_list.empty()) throw UsageError("beta list is empty");
  if (!sweep && !beta_list.empty()) throw UsageError("a beta list is only valid for the sweep command");
  if (resolution < 2) throw ConfigError("resolution must be at least 2");
  if (beta && !(*beta >= 0.0)) throw ConfigError("beta must be non-negative");
  opts.validate();
}

Scenario resolve_scenario(const ExperimentConfig& cfg) {
  Scenario sc = cfg.preset ? preset(*cfg.preset, cfg.mode == Mode::limited) : load_scenario(*cfg.config_file);
  if (cfg.beta) sc.beta = *cfg.beta;
  sc.validate();
  if (cfg.mode == Mode::limited && !sc.has_budgets())
    throw ConfigError("limited mode needs sensor_budget and ap_budgets in the scenario");
  return sc;
}

namespace {

void ensure_writable(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  const auto probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory is not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

}  // namespace

RunStats summarize(const std::vector<RunTrace>& runs, const Scenario& sc, const DensityGrid& fine) {
  RunStats st;
  st.best = best_restart(runs);
  st.best_power = runs[st.best].final().report.two_tier_power;
  st.best_coverage = runs[st.best].final().report.coverage;
  st.worst_power = st.best_power;
  double sum = 0.0;
  for (const auto& r : runs) {
    const double p = r.final().report.two_tier_power;
    sum += p;
    st.worst_power = std::max(st.worst_power, p);
  }
  st.mean_power = sum / static_cast<double>(runs.size());

  const Deployment& dep = runs[st.best].final().deployment;
  const Partition part = assign_cells(dep.p, dep.q, dep.t, fine, sc);
  st.best_power_fine = two_tier_power(dep, part, fine, sc).two_tier_power;
  return st;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate(false);
  const Scenario sc = resolve_scenario(cfg);
  ensure_writable(cfg.out_dir);

  ExperimentResult res{sc, discretize(sc.region, sc.density, cfg.resolution), {}, {}};
  res.runs = run_restarts(sc, res.grid, cfg.mode, cfg.opts);
  const DensityGrid fine = discretize(sc.region, sc.density, 2 * cfg.resolution);
  res.stats = summarize(res.runs, sc, fine);

  const auto& dir = cfg.out_dir;
  write_file(dir / "summary.csv", [&](std::ostream& out) {
    out << "restart,seed,iters,sensor_power,ap_power,two_tier_power,coverage,converged\n";
    for (std::size_t k = 0; k < res.runs.size(); ++k) {
      const auto& r = res.runs[k];
      const auto& rep = r.final().report;
      out << k << ',' << cfg.opts.seed + k << ',' << r.iterations << ',' << format_double(rep.sensor_power) << ','
          << format_double(rep.ap_power) << ',' << format_double(rep.two_tier_power) << ','
          << format_double(rep.coverage) << ',' << (r.converged ? 1 : 0) << '\n';
    }
  });
  write_file(dir / "stats.csv", [&](std::ostream& out) {
    const auto& s = res.stats;
    out << "best_restart,best_power,mean_power,worst_power,best_coverage,resolution,best_power_double_resolution\n";
    out << s.best << ',' << format_double(s.best_power) << ',' << format_double(s.mean_power) << ','
        << format_double(s.worst_power) << ',' << format_double(s.best_coverage) << ',' << cfg.resolution << ','
        << format_double(s.best_power_fine) << '\n';
  });
  for (std::size_t k = 0; k < res.runs.size(); ++k)
    write_file(dir / ("trace_" + std::to_string(k) + ".csv"),
               [&](std::ostream& out) { write_trace_csv(out, res.runs[k]); });

  const RunTrace& best = res.runs[res.stats.best];
  write_text_file(dir / "best_deployment.json", deployment_json(best.final().deployment).dump(2) + "\n");
  write_file(dir / "best_partition.csv",
             [&](std::ostream& out) { write_partition_csv(out, res.grid, best.final_partition); });
  write_file(dir / "best.svg", [&](std::ostream& out) {
    write_figure_svg(out, best.final().deployment, best.final_partition, res.grid, sc);
  });
  return res;
}

TradeoffCurve sweep_command(const ExperimentConfig& cfg) {
  cfg.validate(true);
  if (cfg.mode == Mode::limited) throw UsageError("the sweep runs in unconstrained mode only");
  const Scenario sc = resolve_scenario(cfg);
  ensure_writable(cfg.out_dir);

  const DensityGrid grid = discretize(sc.region, sc.density, cfg.resolution);
  TradeoffCurve curve = tradeoff_sweep(sc, grid, cfg.beta_list, cfg.opts);
  write_file(cfg.out_dir / "tradeoff.csv", [&](std::ostream& out) { write_tradeoff_csv(out, curve); });
  write_file(cfg.out_dir / "tradeoff.svg", [&](std::ostream& out) { write_curve_svg(out, curve); });
  return curve;
}

namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw UsageError("bad number '" + std::string(s) + "' in beta list");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<double> parse_beta_list(std::string_view text) {
  if (text.empty()) throw UsageError("beta list is empty");
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 4 || (parts[2] != "log" && parts[2] != "lin"))
      throw UsageError("range must look like lo:hi:log:n or lo:hi:lin:n");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const double nd = parse_number(parts[3]);
    if (nd < 1 || nd != std::floor(nd)) throw UsageError("range count must be a positive integer");
    const auto n = static_cast<std::size_t>(nd);
    const bool log = parts[2] == "log";
    if (log && !(lo > 0.0 && hi > 0.0)) throw UsageError("log range needs positive bounds");
    for (std::size_t k = 0; k < n; ++k) {
      const double f = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
      out.push_back(log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo));
    }
  } else {
    for (auto part : split(text, ',')) out.push_back(parse_number(part));
  }
  for (double b : out)
    if (!(b >= 0.0)) throw UsageError("beta values must be non-negative");
  return out;
}

}  // namespace twotier
