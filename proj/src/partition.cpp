#include "twotier/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twotier/errors.hpp"

namespace twotier {

std::vector<Index> optimal_index_map(std::span<const Vec2> p, std::span<const Vec2> q,
                                     const Scenario& sc) {
  std::vector<Index> t(p.size(), 0);
  for (std::size_t n = 0; n < p.size(); ++n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < q.size(); ++m) {
      const double d = sc.b[n][m] * dist2(p[n], q[m]);
      if (d < best) {
        best = d;
        t[n] = static_cast<Index>(m);
      }
    }
  }
  return t;
}

std::vector<Index> limited_index_map(std::span<const Vec2> p, std::span<const Vec2> q,
                                     const Scenario& sc) {
  if (!sc.ap_budgets) throw ModeError("limited index map requires AP budgets");
  std::vector<Index> t(p.size(), kUnassigned);
  for (std::size_t n = 0; n < p.size(); ++n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < q.size(); ++m) {
      const double d = sc.b[n][m] * dist2(p[n], q[m]);
      if (within_range(dist(p[n], q[m]), sc.link_radius(n, m)) && d < best) {
        best = d;
        t[n] = static_cast<Index>(m);
      }
    }
  }
  return t;
}

double link_offset(std::span<const Vec2> p, std::span<const Vec2> q, std::span<const Index> t,
                   std::size_t n, const Scenario& sc) {
  const Index m = t[n];
  if (m == kUnassigned) throw ConsistencyError("link offset of an unassigned AP");
  return sc.beta * sc.b[n][m] * dist2(p[n], q[m]);
}

double cell_cost(std::span<const Vec2> p, std::span<const Vec2> q, std::span<const Index> t,
                 std::size_t n, Vec2 w, const Scenario& sc) {
  return sc.a[n] * dist2(p[n], w) + link_offset(p, q, t, n, sc);
}

void cell_stats(Partition& part, const DensityGrid& grid, std::size_t n_aps) {
  std::vector<double> volume(n_aps, 0.0);
  std::vector<Vec2> moment(n_aps);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index n = part.assign[i];
    if (n == kUncovered) continue;
    volume[n] += grid.masses[i];
    moment[n] += grid.masses[i] * grid.centers[i];
  }
  part.volumes = volume;
  part.centroids.assign(n_aps, std::nullopt);
  for (std::size_t n = 0; n < n_aps; ++n)
    if (volume[n] > 0.0) part.centroids[n] = moment[n] / volume[n];
}

Partition assign_cells(std::span<const Vec2> p, std::span<const Vec2> q, std::span<const Index> t,
                       const DensityGrid& grid, const Scenario& sc) {
  std::vector<std::size_t> active;
  std::vector<double> offset;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (t[n] == kUnassigned) continue;
    active.push_back(n);
    offset.push_back(link_offset(p, q, t, n, sc));
  }

  Partition part;
  part.assign.assign(grid.size(), kUncovered);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec2 w = grid.centers[i];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::size_t n = active[k];
      const double c = sc.a[n] * dist2(p[n], w) + offset[k];
      if (c < best) {
        best = c;
        part.assign[i] = static_cast<Index>(n);
      }
    }
  }
  cell_stats(part, grid, p.size());
  return part;
}

PairwiseCell pairwise_cell(std::size_t i, std::size_t j, std::span<const Vec2> p,
                           std::span<const Vec2> q, std::span<const Index> t, const Scenario& sc) {
  if (i == j) throw UsageError("pairwise cell needs two distinct APs");
  const double ai = sc.a[i];
  const double aj = sc.a[j];
  const double ki = link_offset(p, q, t, i, sc);
  const double kj = link_offset(p, q, t, j, sc);

  PairwiseCell cell;
  if (ai == aj) {
    cell.kind = PairwiseCell::Kind::half_space;
    cell.normal = aj * p[j] - ai * p[i];
    cell.offset = (ai * norm2(p[i]) - aj * norm2(p[j]) + ki - kj) / 2.0;
    return cell;
  }

  const double da = ai - aj;
  cell.center = (ai * p[i] - aj * p[j]) / da;
  cell.l = ai * aj * dist2(p[i], p[j]) / (da * da) - (ki - kj) / da;
  cell.radius = std::sqrt(std::max(cell.l, 0.0));
  using Kind = PairwiseCell::Kind;
  if (ai > aj)
    cell.kind = cell.l >= 0.0 ? Kind::disk : Kind::empty;
  else
    cell.kind = cell.l >= 0.0 ? Kind::disk_complement : Kind::full;
  return cell;
}

bool contains(const PairwiseCell& cell, Vec2 w) {
  switch (cell.kind) {
    case PairwiseCell::Kind::half_space:
      return dot(cell.normal, w) + cell.offset <= 0.0;
    case PairwiseCell::Kind::disk:
      return dist2(w, cell.center) <= cell.radius * cell.radius;
    case PairwiseCell::Kind::disk_complement:
      return dist2(w, cell.center) > cell.radius * cell.radius;
    case PairwiseCell::Kind::empty:
      return false;
    case PairwiseCell::Kind::full:
      return true;
  }
  return false;
}

}  // namespace twotier
