#include "twotier/projection.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

#include "twotier/errors.hpp"
#include "twotier/model.hpp"

namespace twotier {

namespace {

constexpr double kFeasTol = 1e-12;

bool feasible(Vec2 x, std::span<const Disk> disks, const Region& region) {
  if (!region.contains(x, kFeasTol)) return false;
  for (const auto& d : disks)
    if (!within_range(dist(x, d.center), d.radius)) return false;
  return true;
}

void circle_circle(const Disk& c0, const Disk& c1, std::vector<Vec2>& out) {
  const Vec2 delta = c1.center - c0.center;
  const double d = norm(delta);
  if (d == 0.0 || d > c0.radius + c1.radius || d < std::abs(c0.radius - c1.radius)) return;
  const double along = (d * d + c0.radius * c0.radius - c1.radius * c1.radius) / (2.0 * d);
  const double h = std::sqrt(std::max(c0.radius * c0.radius - along * along, 0.0));
  const Vec2 u = delta / d;
  const Vec2 mid = c0.center + along * u;
  const Vec2 perp{-u.y, u.x};
  out.push_back(mid + h * perp);
  out.push_back(mid - h * perp);
}

// Intersections of a circle with the vertical line x = c or horizontal y = c.
void circle_line(const Disk& disk, bool vertical, double c, std::vector<Vec2>& out) {
  const double off = vertical ? c - disk.center.x : c - disk.center.y;
  const double rem = disk.radius * disk.radius - off * off;
  if (rem < 0.0) return;
  const double h = std::sqrt(rem);
  if (vertical) {
    out.push_back({c, disk.center.y + h});
    out.push_back({c, disk.center.y - h});
  } else {
    out.push_back({disk.center.x + h, c});
    out.push_back({disk.center.x - h, c});
  }
}

}  // namespace

std::optional<Vec2> closest_feasible_point(Vec2 target, std::span<const Disk> disks,
                                           const Region& region) {
  if (feasible(target, disks, region)) return target;

  const double xs[2] = {region.lower.x, region.upper.x};
  const double ys[2] = {region.lower.y, region.upper.y};

  std::vector<Vec2> cand;
  cand.push_back(region.clamp(target));
  for (double x : xs) cand.push_back({x, target.y});
  for (double y : ys) cand.push_back({target.x, y});
  for (double x : xs)
    for (double y : ys) cand.push_back({x, y});

  for (std::size_t k = 0; k < disks.size(); ++k) {
    const Disk& d = disks[k];
    const Vec2 off = target - d.center;
    const double len = norm(off);
    cand.push_back(len > 0.0 ? d.center + (d.radius / len) * off : d.center);
    for (double x : xs) circle_line(d, true, x, cand);
    for (double y : ys) circle_line(d, false, y, cand);
    for (std::size_t l = k + 1; l < disks.size(); ++l) circle_circle(d, disks[l], cand);
  }

  std::optional<Vec2> best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (Vec2 c : cand) {
    if (!feasible(c, disks, region)) continue;
    c = region.clamp(c);
    const double d2 = dist2(c, target);
    if (d2 < best_d2 || (d2 == best_d2 && c < *best)) {
      best_d2 = d2;
      best = c;
    }
  }
  return best;
}

Vec2 project_ap(Vec2 target, Vec2 fc, double link_radius, const Region& region) {
  const std::array<Disk, 1> disk{Disk{fc, link_radius}};
  const auto x = closest_feasible_point(target, disk, region);
  if (!x) throw DomainError("AP desired region is empty (FC outside the region)");
  return *x;
}

std::optional<Vec2> project_fc(Vec2 target, std::span<const Disk> attached, const Region& region) {
  return closest_feasible_point(target, attached, region);
}

}  // namespace twotier
