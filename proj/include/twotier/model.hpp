#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "twotier/geometry.hpp"
#include "twotier/scene.hpp"

namespace twotier {

/// Index-map entry. Values are 0-based FC (or AP) indices; -1 is the sentinel.
using Index = int;
inline constexpr Index kUnassigned = -1;
inline constexpr Index kUncovered = -1;

/// Range tests accept points this far (relative plus absolute) outside a
/// disk so that points projected onto the boundary stay in range.
inline constexpr double kRangeTol = 1e-12;

inline bool within_range(double distance, double radius) {
  return distance <= radius * (1.0 + kRangeTol) + kRangeTol;
}

/// Problem constants. Budgets are stored squared (sigma^2, sigma_n^2) and
/// are only consulted in limited-range mode.
struct Scenario {
  std::size_t n_aps = 0;
  std::size_t n_fcs = 0;
  std::vector<double> a;               // a_n, size N
  std::vector<std::vector<double>> b;  // b_{n,m}, N rows of M
  double beta = 0.0;
  std::optional<double> sensor_budget;
  std::optional<std::vector<double>> ap_budgets;
  Region region;
  DensityModel density;

  void validate() const;
  bool has_budgets() const { return sensor_budget.has_value() && ap_budgets.has_value(); }

  /// sigma / sqrt(a_n)
  double sensing_radius(std::size_t n) const;
  /// sigma_n / sqrt(b_{n,m})
  double link_radius(std::size_t n, std::size_t m) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct Deployment {
  std::vector<Vec2> p;
  std::vector<Vec2> q;
  std::vector<Index> t;

  bool active(std::size_t n) const { return t[n] != kUnassigned; }

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct Partition {
  std::vector<Index> assign;  // per grid cell
  std::vector<double> volumes;
  std::vector<std::optional<Vec2>> centroids;

  double assigned_mass() const;
};

struct PowerReport {
  double sensor_power = 0.0;
  double ap_power = 0.0;
  double two_tier_power = 0.0;
  double coverage = 0.0;
};

double sensor_power(const Deployment& dep, const Partition& part, const DensityGrid& grid,
                    const Scenario& sc);

double ap_power(const Deployment& dep, const Partition& part, const DensityGrid& grid,
                const Scenario& sc);

/// Mass fraction of grid cells within sensing range of an active AP.
double coverage(const Deployment& dep, const DensityGrid& grid, const Scenario& sc);

/// Sensor power plus beta times AP power. Coverage follows the range
/// definition when the scenario carries a sensor budget, otherwise it is the
/// assigned fraction of the mass.
PowerReport two_tier_power(const Deployment& dep, const Partition& part, const DensityGrid& grid,
                           const Scenario& sc);

}  // namespace twotier
