#include "twotier/scene.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "twotier/errors.hpp"

namespace twotier {

Region Region::interval(double lo, double hi) {
  Region r{1, {lo, 0.0}, {hi, 0.0}};
  r.validate();
  return r;
}

Region Region::rectangle(double xmin, double xmax, double ymin, double ymax) {
  Region r{2, {xmin, ymin}, {xmax, ymax}};
  r.validate();
  return r;
}

double Region::measure() const {
  const double w = upper.x - lower.x;
  return dimension == 1 ? w : w * (upper.y - lower.y);
}

bool Region::contains(Vec2 w, double tol) const {
  if (w.x < lower.x - tol || w.x > upper.x + tol) return false;
  if (dimension == 1) return std::abs(w.y) <= tol;
  return w.y >= lower.y - tol && w.y <= upper.y + tol;
}

Vec2 Region::clamp(Vec2 w) const {
  return {std::clamp(w.x, lower.x, upper.x),
          dimension == 1 ? 0.0 : std::clamp(w.y, lower.y, upper.y)};
}

void Region::validate() const {
  if (dimension != 1 && dimension != 2) throw ConfigError("region dimension must be 1 or 2");
  if (!(lower.x < upper.x)) throw ConfigError("region requires xmin < xmax");
  if (dimension == 2 && !(lower.y < upper.y)) throw ConfigError("region requires ymin < ymax");
  if (dimension == 1 && (lower.y != 0.0 || upper.y != 0.0))
    throw ConfigError("1-D region must have y pinned to 0");
}

namespace {

double empirical_total(const EmpiricalGrid& g) {
  return std::accumulate(g.values.begin(), g.values.end(), 0.0);
}

double normal_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-d * d / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

struct Evaluator {
  const Region& region;
  Vec2 w;

  double operator()(const UniformDensity&) const { return 1.0 / region.measure(); }

  double operator()(const GaussianMixture& gm) const {
    double f = 0.0;
    for (const auto& c : gm.components) {
      double pdf = normal_pdf(w.x, c.mean.x, c.variance.x);
      if (region.dimension == 2) pdf *= normal_pdf(w.y, c.mean.y, c.variance.y);
      f += c.weight * pdf;
    }
    return f;
  }

  double operator()(const EmpiricalGrid& g) const {
    if (w.x < g.xmin || w.x > g.xmax || w.y < g.ymin || w.y > g.ymax) return 0.0;
    const double dx = (g.xmax - g.xmin) / static_cast<double>(g.cols);
    const double dy = (g.ymax - g.ymin) / static_cast<double>(g.rows);
    const auto col = std::min(g.cols - 1, static_cast<std::size_t>((w.x - g.xmin) / dx));
    const auto row = std::min(g.rows - 1, static_cast<std::size_t>((w.y - g.ymin) / dy));
    return g.values[row * g.cols + col] / (empirical_total(g) * dx * dy);
  }
};

}  // namespace

void validate_density(const DensityModel& model, const Region& region) {
  if (const auto* gm = std::get_if<GaussianMixture>(&model)) {
    if (gm->components.empty()) throw ConfigError("gaussian mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : gm->components) {
      if (!(c.weight > 0.0)) throw ConfigError("gaussian mixture weights must be positive");
      if (!(c.variance.x > 0.0) || (region.dimension == 2 && !(c.variance.y > 0.0)))
        throw ConfigError("gaussian mixture variances must be positive");
      total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError("gaussian mixture weights must sum to 1");
  } else if (const auto* g = std::get_if<EmpiricalGrid>(&model)) {
    if (region.dimension != 2) throw ConfigError("empirical densities require a 2-D region");
    if (g->rows == 0 || g->cols == 0 || g->values.size() != g->rows * g->cols)
      throw ConfigError("empirical grid shape does not match its value count");
    if (!(g->xmin < g->xmax) || !(g->ymin < g->ymax))
      throw ConfigError("empirical grid extent is empty");
    for (double v : g->values)
      if (!(v >= 0.0)) throw ConfigError("empirical grid values must be non-negative");
    if (!(empirical_total(*g) > 0.0)) throw ConfigError("empirical grid needs a positive value");
  }
}

double density_eval(const DensityModel& model, const Region& region, Vec2 w) {
  if (!region.contains(w, 1e-12)) throw DomainError("density evaluated outside the region");
  return std::visit(Evaluator{region, w}, model);
}

EmpiricalGrid load_empirical_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open empirical density file " + path.string());

  std::vector<double> numbers;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        numbers.push_back(v);
      } catch (const std::exception&) {
        if (first && numbers.empty()) break;  // named header line
        throw ConfigError("non-numeric entry '" + tok + "' in " + path.string());
      }
    }
    first = false;
  }
  if (numbers.size() < 6) throw ConfigError("empirical density file lacks its header line");

  EmpiricalGrid g;
  g.rows = static_cast<std::size_t>(numbers[0]);
  g.cols = static_cast<std::size_t>(numbers[1]);
  g.xmin = numbers[2];
  g.xmax = numbers[3];
  g.ymin = numbers[4];
  g.ymax = numbers[5];
  g.values.assign(numbers.begin() + 6, numbers.end());
  validate_density(g, Region::rectangle(g.xmin, g.xmax, g.ymin, g.ymax));
  return g;
}

double DensityGrid::total_mass() const { return std::accumulate(masses.begin(), masses.end(), 0.0); }

DensityGrid discretize(const Region& region, const DensityModel& model, std::size_t resolution) {
  if (resolution < 2) throw ConfigError("grid resolution must be at least 2");
  region.validate();
  validate_density(model, region);

  DensityGrid grid;
  grid.region = region;
  grid.resolution = resolution;
  const double dx = (region.upper.x - region.lower.x) / static_cast<double>(resolution);
  const std::size_t ny = region.dimension == 2 ? resolution : 1;
  const double dy = region.dimension == 2
                        ? (region.upper.y - region.lower.y) / static_cast<double>(resolution)
                        : 1.0;
  grid.cell_measure = region.dimension == 2 ? dx * dy : dx;
  grid.centers.reserve(resolution * ny);
  grid.masses.reserve(resolution * ny);

  for (std::size_t iy = 0; iy < ny; ++iy) {
    const double y = region.dimension == 2 ? region.lower.y + (static_cast<double>(iy) + 0.5) * dy : 0.0;
    for (std::size_t ix = 0; ix < resolution; ++ix) {
      const Vec2 c{region.lower.x + (static_cast<double>(ix) + 0.5) * dx, y};
      grid.centers.push_back(c);
      grid.masses.push_back(std::visit(Evaluator{region, c}, model) * grid.cell_measure);
    }
  }
  if (!(grid.total_mass() > 0.0)) throw ConfigError("density has no mass inside the region");
  return grid;
}

}  // namespace twotier
