#include "twotier/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "twotier/errors.hpp"

namespace twotier {

void Scenario::validate() const {
  if (n_fcs < 1) throw ConfigError("n_fcs must be at least 1");
  if (n_aps < n_fcs) throw ConfigError("n_aps must be >= n_fcs (N >= M)");
  if (a.size() != n_aps) throw ConfigError("a must have n_aps entries");
  for (std::size_t n = 0; n < a.size(); ++n)
    if (!(a[n] > 0.0)) throw ConfigError("a[" + std::to_string(n) + "] must be positive");
  if (b.size() != n_aps) throw ConfigError("b must have n_aps rows");
  for (std::size_t n = 0; n < b.size(); ++n) {
    if (b[n].size() != n_fcs) throw ConfigError("b row " + std::to_string(n) + " must have n_fcs entries");
    for (std::size_t m = 0; m < n_fcs; ++m)
      if (!(b[n][m] > 0.0))
        throw ConfigError("b[" + std::to_string(n) + "][" + std::to_string(m) + "] must be positive");
  }
  if (!(beta >= 0.0)) throw ConfigError("beta must be non-negative");
  if (sensor_budget && !(*sensor_budget > 0.0)) throw ConfigError("sensor_budget must be positive");
  if (ap_budgets) {
    if (ap_budgets->size() != n_aps) throw ConfigError("ap_budgets must have n_aps entries");
    for (std::size_t n = 0; n < n_aps; ++n)
      if (!((*ap_budgets)[n] > 0.0))
        throw ConfigError("ap_budgets[" + std::to_string(n) + "] must be positive");
  }
  region.validate();
  validate_density(density, region);
}

double Scenario::sensing_radius(std::size_t n) const {
  if (!sensor_budget) throw ModeError("sensing radius requires a sensor budget");
  return std::sqrt(*sensor_budget / a[n]);
}

double Scenario::link_radius(std::size_t n, std::size_t m) const {
  if (!ap_budgets) throw ModeError("link radius requires AP budgets");
  return std::sqrt((*ap_budgets)[n] / b[n][m]);
}

double Partition::assigned_mass() const { return std::accumulate(volumes.begin(), volumes.end(), 0.0); }

namespace {

void check_shapes(const Deployment& dep, const Partition& part, const DensityGrid& grid,
                  const Scenario& sc) {
  if (part.assign.size() != grid.size()) throw ConsistencyError("partition does not match the grid");
  if (dep.p.size() != sc.n_aps || dep.t.size() != sc.n_aps || dep.q.size() != sc.n_fcs)
    throw ConsistencyError("deployment does not match the scenario");
}

}  // namespace

double sensor_power(const Deployment& dep, const Partition& part, const DensityGrid& grid,
                    const Scenario& sc) {
  check_shapes(dep, part, grid, sc);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index n = part.assign[i];
    if (n == kUncovered) continue;
    if (n < 0 || static_cast<std::size_t>(n) >= sc.n_aps)
      throw ConsistencyError("partition references AP " + std::to_string(n));
    total += sc.a[n] * dist2(dep.p[n], grid.centers[i]) * grid.masses[i];
  }
  return total;
}

double ap_power(const Deployment& dep, const Partition& part, const DensityGrid& grid,
                const Scenario& sc) {
  check_shapes(dep, part, grid, sc);
  if (part.volumes.size() != sc.n_aps) throw ConsistencyError("partition volumes do not match N");
  double total = 0.0;
  for (std::size_t n = 0; n < sc.n_aps; ++n) {
    if (part.volumes[n] == 0.0) continue;
    const Index m = dep.t[n];
    if (m == kUnassigned)
      throw ConsistencyError("AP " + std::to_string(n) + " owns sensors but has no FC");
    total += sc.b[n][m] * dist2(dep.p[n], dep.q[m]) * part.volumes[n];
  }
  return total;
}

double coverage(const Deployment& dep, const DensityGrid& grid, const Scenario& sc) {
  if (!sc.sensor_budget) throw ModeError("coverage requires a sensor budget");
  std::vector<double> r2(sc.n_aps, -1.0);
  for (std::size_t n = 0; n < sc.n_aps; ++n)
    if (dep.active(n)) r2[n] = *sc.sensor_budget / sc.a[n];

  double covered = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t n = 0; n < sc.n_aps; ++n) {
      if (r2[n] >= 0.0 && dist2(dep.p[n], grid.centers[i]) <= r2[n]) {
        covered += grid.masses[i];
        break;
      }
    }
  }
  return std::min(1.0, covered / grid.total_mass());
}

PowerReport two_tier_power(const Deployment& dep, const Partition& part, const DensityGrid& grid,
                           const Scenario& sc) {
  PowerReport r;
  r.sensor_power = sensor_power(dep, part, grid, sc);
  r.ap_power = ap_power(dep, part, grid, sc);
  r.two_tier_power = r.sensor_power + sc.beta * r.ap_power;
  r.coverage = sc.sensor_budget ? coverage(dep, grid, sc) : std::min(1.0, part.assigned_mass() / grid.total_mass());
  return r;
}

}  // namespace twotier
