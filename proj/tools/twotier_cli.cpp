#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twotier/analytic.hpp"
#include "twotier/errors.hpp"
#include "twotier/experiment.hpp"
#include "twotier/io.hpp"

using namespace twotier;

namespace {

void add_common(CLI::App* cmd, ExperimentConfig& cfg, std::string& preset_name, std::string& config_path) {
  auto* p = cmd->add_option("--preset", preset_name, "WSN1-uniform, WSN1-gaussian, WSN2-uniform, WSN2-gaussian");
  auto* c = cmd->add_option("--config", config_path, "scenario file")->check(CLI::ExistingFile);
  p->excludes(c);
  cmd->add_option("--restarts", cfg.opts.restarts, "random restarts")->capture_default_str();
  cmd->add_option("--seed", cfg.opts.seed, "base seed")->capture_default_str();
  cmd->add_option("--iters", cfg.opts.max_iters, "iteration cap")->capture_default_str();
  cmd->add_option("--eps", cfg.opts.epsilon, "relative improvement stop threshold")->capture_default_str();
  cmd->add_option("--res", cfg.resolution, "grid cells per axis")->capture_default_str();
  cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
}

void finish_source(ExperimentConfig& cfg, const std::string& preset_name, const std::string& config_path) {
  if (!preset_name.empty()) cfg.preset = preset_name;
  if (!config_path.empty()) cfg.config_file = config_path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-tier sensor network deployment optimizer"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string preset_name, config_path, mode = "unconstrained", betas;
  double beta = 0.0;

  auto* run = app.add_subcommand("run", "optimize a deployment with random restarts");
  add_common(run, cfg, preset_name, config_path);
  run->add_option("--mode", mode, "unconstrained or limited")
      ->check(CLI::IsMember({"unconstrained", "limited"}))
      ->capture_default_str();
  auto* beta_opt = run->add_option("--beta", beta, "AP power multiplier (default: scenario value)");

  auto* sweep = app.add_subcommand("sweep", "trace the AP/sensor power trade-off over beta");
  add_common(sweep, cfg, preset_name, config_path);
  sweep->add_option("--betas", betas, "lo:hi:log:n, lo:hi:lin:n or a comma list")->required();

  auto* oracle = app.add_subcommand("oracle", "closed-form reference values");
  oracle->require_subcommand(1);
  auto* two_ap = oracle->add_subcommand("two-ap", "two APs and one FC on the unit interval");
  double a1 = 1.0, a2 = 1.0, kappa = 1.0, obeta = 1.0;
  two_ap->add_option("--a1", a1)->capture_default_str();
  two_ap->add_option("--a2", a2)->capture_default_str();
  two_ap->add_option("--kappa", kappa)->capture_default_str();
  two_ap->add_option("--beta", obeta)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      finish_source(cfg, preset_name, config_path);
      cfg.mode = mode == "limited" ? Mode::limited : Mode::unconstrained;
      if (*beta_opt) cfg.beta = beta;
      const auto res = run_experiment(cfg);
      const auto& s = res.stats;
      std::cout << "restarts " << res.runs.size() << "\n"
                << "best restart " << s.best << "\n"
                << "best power " << format_double(s.best_power) << "\n"
                << "mean power " << format_double(s.mean_power) << "\n"
                << "worst power " << format_double(s.worst_power) << "\n"
                << "best coverage " << format_double(s.best_coverage) << "\n"
                << "best power at resolution " << 2 * cfg.resolution << " " << format_double(s.best_power_fine)
                << "\n"
                << "outputs in " << cfg.out_dir.string() << "\n";
    } else if (*sweep) {
      finish_source(cfg, preset_name, config_path);
      cfg.beta_list = parse_beta_list(betas);
      const auto curve = sweep_command(cfg);
      std::cout << "beta,sensor_power,ap_power,on_envelope\n";
      for (const auto& p : curve.points)
        std::cout << format_double(p.beta) << ',' << format_double(p.sensor_power) << ','
                  << format_double(p.ap_power) << ',' << (p.on_envelope ? 1 : 0) << "\n";
    } else if (*two_ap) {
      const auto sol = two_ap_optimum(a1, a2, kappa, obeta);
      std::cout << "useful " << (sol.useful ? "true" : "false") << "\n"
                << "beta_prime " << format_double(sol.beta_prime) << "\n"
                << "r_star " << format_double(sol.r_star) << "\n"
                << "q_star " << format_double(sol.q_star) << "\n"
                << "p1 " << format_double(sol.p1) << "\n"
                << "p2 " << format_double(sol.p2) << "\n"
                << "power " << format_double(sol.power) << "\n";
      for (std::size_t i = 0; i < sol.stationary_pairs.size(); ++i) {
        const auto& sp = sol.stationary_pairs[i];
        std::cout << "pair " << i + 1 << " r " << format_double(sp.r) << " q " << format_double(sp.q);
        if (sp.feasible)
          std::cout << " power " << format_double(sp.power) << "\n";
        else
          std::cout << " infeasible\n";
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
