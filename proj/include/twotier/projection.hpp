#pragma once

#include <optional>
#include <span>

#include "twotier/geometry.hpp"
#include "twotier/scene.hpp"

namespace twotier {

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

/// Euclidean-closest point to `target` inside the intersection of `disks`
/// and the region. The feasible set is convex, so the minimizer is either
/// the target, a projection onto one constraint, or a pairwise boundary
/// intersection; all of those are enumerated. Exact distance ties resolve to
/// the lexicographically smallest point. Returns nullopt if nothing is
/// feasible.
std::optional<Vec2> closest_feasible_point(Vec2 target, std::span<const Disk> disks,
                                           const Region& region);

/// Desired region of an AP: disk of `link_radius` around its FC, within the
/// region. Throws DomainError if that set is empty.
Vec2 project_ap(Vec2 target, Vec2 fc, double link_radius, const Region& region);

/// Desired region of an FC: every attached AP's link disk, within the region.
std::optional<Vec2> project_fc(Vec2 target, std::span<const Disk> attached, const Region& region);

}  // namespace twotier
