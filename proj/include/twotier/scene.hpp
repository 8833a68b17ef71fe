#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "twotier/geometry.hpp"

namespace twotier {

/// Axis-aligned target area. One-dimensional regions keep y pinned to 0 so
/// every point type stays a Vec2.
struct Region {
  int dimension = 2;
  Vec2 lower;
  Vec2 upper;

  static Region interval(double lo, double hi);
  static Region rectangle(double xmin, double xmax, double ymin, double ymax);

  double measure() const;
  bool contains(Vec2 w, double tol = 0.0) const;
  Vec2 clamp(Vec2 w) const;
  void validate() const;

  friend bool operator==(const Region&, const Region&) = default;
};

struct UniformDensity {
  friend bool operator==(const UniformDensity&, const UniformDensity&) = default;
};

/// Axis-aligned normal component. For 1-D regions only the x fields are used.
struct GaussianComponent {
  double weight = 0.0;
  Vec2 mean;
  Vec2 variance;

  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

struct GaussianMixture {
  std::vector<GaussianComponent> components;

  friend bool operator==(const GaussianMixture&, const GaussianMixture&) = default;
};

/// Piecewise-constant density over its own extent, normalized to unit
/// integral. Row 0 is the row touching ymin; values are row-major.
struct EmpiricalGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  std::vector<double> values;

  friend bool operator==(const EmpiricalGrid&, const EmpiricalGrid&) = default;
};

using DensityModel = std::variant<UniformDensity, GaussianMixture, EmpiricalGrid>;

void validate_density(const DensityModel& model, const Region& region);

double density_eval(const DensityModel& model, const Region& region, Vec2 w);

/// Reads `rows,cols,xmin,xmax,ymin,ymax` followed by rows*cols values.
/// A leading non-numeric header line is skipped.
EmpiricalGrid load_empirical_csv(const std::filesystem::path& path);

/// Midpoint quadrature substrate. Cell i (row-major, x fastest) has center
/// centers[i] and mass f(centers[i]) * cell_measure.
struct DensityGrid {
  Region region;
  std::size_t resolution = 0;
  double cell_measure = 0.0;
  std::vector<Vec2> centers;
  std::vector<double> masses;

  std::size_t size() const { return masses.size(); }
  double total_mass() const;
};

DensityGrid discretize(const Region& region, const DensityModel& model, std::size_t resolution);

template <class Weight>
double grid_moment(const DensityGrid& grid, Weight&& weight) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += weight(grid.centers[i]) * grid.masses[i];
  return sum;
}

}  // namespace twotier
