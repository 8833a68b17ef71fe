#include "twotier/optimize.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "twotier/errors.hpp"
#include "twotier/partition.hpp"
#include "twotier/projection.hpp"

namespace twotier {

void OptimOptions::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
}

Vec2 ap_update(const Scenario& sc, std::size_t n, std::size_t m, const std::optional<Vec2>& centroid,
               Vec2 current, Vec2 fc) {
  const double wa = sc.a[n];
  const double wb = sc.beta * sc.b[n][m];
  const Vec2 c = centroid.value_or(current);
  if (wb == 0.0) return c;
  return (wa * c + wb * fc) / (wa + wb);
}

std::optional<Vec2> fc_update(const Scenario& sc, std::span<const Vec2> p,
                              std::span<const double> volumes, std::span<const Index> t,
                              std::size_t m) {
  Vec2 num;
  double den = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (t[n] != static_cast<Index>(m)) continue;
    const double w = sc.b[n][m] * volumes[n];
    num += w * p[n];
    den += w;
  }
  if (!(den > 0.0)) return std::nullopt;
  return num / den;
}

std::vector<double> donor_probabilities(std::span<const Index> t, std::size_t n_fcs) {
  std::vector<double> count(n_fcs, 0.0);
  double total = 0.0;
  for (Index m : t) {
    if (m == kUnassigned) continue;
    count[m] += 1.0;
    total += 1.0;
  }
  if (total > 0.0)
    for (double& c : count) c /= total;
  return count;
}

Vec2 random_point(const Region& region, Rng& rng) {
  std::uniform_real_distribution<double> ux(region.lower.x, region.upper.x);
  const double x = ux(rng);
  if (region.dimension == 1) return {x, 0.0};
  std::uniform_real_distribution<double> uy(region.lower.y, region.upper.y);
  return {x, uy(rng)};
}

Relocation relocate_idle_fc(std::span<const Index> t, const Partition& part, const DensityGrid& grid,
                            std::size_t n_fcs, Rng& rng) {
  const auto prob = donor_probabilities(t, n_fcs);
  if (std::all_of(prob.begin(), prob.end(), [](double v) { return v == 0.0; }))
    return {random_point(grid.region, rng), kUnassigned};

  std::discrete_distribution<Index> pick_donor(prob.begin(), prob.end());
  const Index donor = pick_donor(rng);

  std::vector<double> weight(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index n = part.assign[i];
    if (n != kUncovered && t[n] == donor) weight[i] = grid.masses[i];
  }
  if (std::all_of(weight.begin(), weight.end(), [](double v) { return v == 0.0; }))
    return {random_point(grid.region, rng), donor};

  std::discrete_distribution<std::size_t> pick_cell(weight.begin(), weight.end());
  return {grid.centers[pick_cell(rng)], donor};
}

Deployment random_deployment(const Scenario& sc, Rng& rng) {
  Deployment dep;
  dep.p.reserve(sc.n_aps);
  dep.q.reserve(sc.n_fcs);
  for (std::size_t n = 0; n < sc.n_aps; ++n) dep.p.push_back(random_point(sc.region, rng));
  for (std::size_t m = 0; m < sc.n_fcs; ++m) dep.q.push_back(random_point(sc.region, rng));
  dep.t.assign(sc.n_aps, kUnassigned);
  return dep;
}

namespace {

Rng make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

std::vector<Index> index_map(const Deployment& dep, const Scenario& sc, Mode mode) {
  return mode == Mode::limited ? limited_index_map(dep.p, dep.q, sc)
                               : optimal_index_map(dep.p, dep.q, sc);
}

RunTrace descend(const Scenario& sc, const DensityGrid& grid, Deployment dep, const OptimOptions& opts,
                 Mode mode) {
  sc.validate();
  opts.validate();
  if (mode == Mode::limited && !sc.has_budgets())
    throw ModeError("limited-range optimization requires sensor and AP budgets");
  if (dep.p.size() != sc.n_aps || dep.q.size() != sc.n_fcs)
    throw ConsistencyError("initial deployment does not match the scenario");
  for (Vec2 x : dep.p)
    if (!sc.region.contains(x)) throw DomainError("initial AP outside the region");
  for (Vec2 x : dep.q)
    if (!sc.region.contains(x)) throw DomainError("initial FC outside the region");

  Rng rng = make_rng(opts.seed, 1);

  dep.t = index_map(dep, sc, mode);
  Partition part = assign_cells(dep.p, dep.q, dep.t, grid, sc);

  RunTrace trace;
  trace.steps.push_back({0, dep, two_tier_power(dep, part, grid, sc), false});

  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    bool relocated = false;

    // FC step, using the partition and index map of the previous evaluation.
    for (std::size_t m = 0; m < sc.n_fcs; ++m) {
      const auto target = fc_update(sc, dep.p, part.volumes, dep.t, m);
      if (!target) {
        dep.q[m] = relocate_idle_fc(dep.t, part, grid, sc.n_fcs, rng).point;
        relocated = true;
        continue;
      }
      if (mode == Mode::unconstrained) {
        dep.q[m] = *target;
        continue;
      }
      std::vector<Disk> attached;
      for (std::size_t n = 0; n < sc.n_aps; ++n)
        if (dep.t[n] == static_cast<Index>(m)) attached.push_back({dep.p[n], sc.link_radius(n, m)});
      // The current position is feasible, so a failed projection keeps it.
      if (const auto proj = project_fc(*target, attached, sc.region)) dep.q[m] = *proj;
    }

    // AP step.
    for (std::size_t n = 0; n < sc.n_aps; ++n) {
      const Index m = dep.t[n];
      if (m == kUnassigned) {
        dep.p[n] = random_point(sc.region, rng);
        relocated = true;
        continue;
      }
      const Vec2 target = ap_update(sc, n, m, part.centroids[n], dep.p[n], dep.q[m]);
      dep.p[n] = mode == Mode::limited
                     ? project_ap(target, dep.q[m], sc.link_radius(n, m), sc.region)
                     : sc.region.clamp(target);
    }

    // Index map and partition for the moved nodes, then evaluate.
    dep.t = index_map(dep, sc, mode);
    part = assign_cells(dep.p, dep.q, dep.t, grid, sc);
    const PowerReport report = two_tier_power(dep, part, grid, sc);

    const double old_power = trace.steps.back().report.two_tier_power;
    trace.steps.push_back({it, dep, report, relocated});

    const double improvement =
        old_power > 0.0 ? (old_power - report.two_tier_power) / old_power : 0.0;
    if (!relocated && improvement < opts.epsilon) {
      trace.converged = true;
      break;
    }
  }

  trace.iterations = trace.steps.size() - 1;
  trace.final_partition = std::move(part);
  return trace;
}

}  // namespace

RunTrace run_httl(const Scenario& sc, const DensityGrid& grid, Deployment init,
                  const OptimOptions& opts) {
  return descend(sc, grid, std::move(init), opts, Mode::unconstrained);
}

RunTrace run_limited_httl(const Scenario& sc, const DensityGrid& grid, Deployment init,
                          const OptimOptions& opts) {
  return descend(sc, grid, std::move(init), opts, Mode::limited);
}

RunTrace run_seeded(const Scenario& sc, const DensityGrid& grid, Mode mode, const OptimOptions& opts,
                    std::uint64_t seed) {
  Rng init_rng = make_rng(seed, 0);
  Deployment init = random_deployment(sc, init_rng);
  OptimOptions run_opts = opts;
  run_opts.seed = seed;
  return mode == Mode::limited ? run_limited_httl(sc, grid, std::move(init), run_opts)
                               : run_httl(sc, grid, std::move(init), run_opts);
}

std::vector<RunTrace> run_restarts(const Scenario& sc, const DensityGrid& grid, Mode mode,
                                   const OptimOptions& opts) {
  opts.validate();
  std::vector<std::future<RunTrace>> pending;
  pending.reserve(opts.restarts);
  for (std::size_t k = 0; k < opts.restarts; ++k)
    pending.push_back(std::async(std::launch::async, [&, k] {
      return run_seeded(sc, grid, mode, opts, opts.seed + k);
    }));
  std::vector<RunTrace> runs;
  runs.reserve(pending.size());
  for (auto& f : pending) runs.push_back(f.get());
  return runs;
}

std::size_t best_restart(std::span<const RunTrace> runs) {
  if (runs.empty()) throw UsageError("no runs to choose from");
  std::size_t best = 0;
  for (std::size_t k = 1; k < runs.size(); ++k)
    if (runs[k].final().report.two_tier_power < runs[best].final().report.two_tier_power) best = k;
  return best;
}

}  // namespace twotier
