#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "twotier/geometry.hpp"
#include "twotier/model.hpp"
#include "twotier/scene.hpp"

namespace twotier {

enum class Mode { unconstrained, limited };

struct OptimOptions {
  double epsilon = 1e-6;
  std::size_t max_iters = 100;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;

  void validate() const;
};

struct TraceStep {
  std::size_t iter = 0;
  Deployment deployment;
  PowerReport report;
  // A random relocation (idle FC, or unassigned AP in limited mode) happened
  // during this iteration.
  bool relocated = false;
};

struct RunTrace {
  std::vector<TraceStep> steps;
  Partition final_partition;
  bool converged = false;
  std::size_t iterations = 0;

  const TraceStep& final() const { return steps.back(); }
};

using Rng = std::mt19937_64;

/// (a_n c_n + beta b q) / (a_n + beta b); an empty cell uses the AP's current
/// position in place of its centroid.
Vec2 ap_update(const Scenario& sc, std::size_t n, std::size_t m, const std::optional<Vec2>& centroid,
               Vec2 current, Vec2 fc);

/// Weighted mean of attached AP positions with weights b_{n,m} v_n; nullopt
/// when that weight is zero (idle FC).
std::optional<Vec2> fc_update(const Scenario& sc, std::span<const Vec2> p,
                              std::span<const double> volumes, std::span<const Index> t,
                              std::size_t m);

/// P(m') proportional to the number of APs attached to m'.
std::vector<double> donor_probabilities(std::span<const Index> t, std::size_t n_fcs);

struct Relocation {
  Vec2 point;
  Index donor = kUnassigned;  // kUnassigned when the uniform fallback was used
};

/// Picks a donor FC by donor_probabilities, then a cell of the donor's APs
/// with probability proportional to mass, and returns that cell's center.
/// Falls back to a uniform point in the region when no donor has mass.
Relocation relocate_idle_fc(std::span<const Index> t, const Partition& part, const DensityGrid& grid,
                            std::size_t n_fcs, Rng& rng);

Vec2 random_point(const Region& region, Rng& rng);

/// Uniform AP and FC positions; the index map is filled by the caller's mode.
Deployment random_deployment(const Scenario& sc, Rng& rng);

RunTrace run_httl(const Scenario& sc, const DensityGrid& grid, Deployment init,
                  const OptimOptions& opts);

RunTrace run_limited_httl(const Scenario& sc, const DensityGrid& grid, Deployment init,
                          const OptimOptions& opts);

/// One seeded restart: the initial deployment and the relocation stream are
/// both derived from `seed`.
RunTrace run_seeded(const Scenario& sc, const DensityGrid& grid, Mode mode, const OptimOptions& opts,
                    std::uint64_t seed);

/// opts.restarts independent runs with seeds opts.seed + k, executed
/// concurrently; results are returned in restart order.
std::vector<RunTrace> run_restarts(const Scenario& sc, const DensityGrid& grid, Mode mode,
                                   const OptimOptions& opts);

std::size_t best_restart(std::span<const RunTrace> runs);

}  // namespace twotier
