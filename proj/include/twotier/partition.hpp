#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "twotier/geometry.hpp"
#include "twotier/model.hpp"
#include "twotier/scene.hpp"

namespace twotier {

/// T(n) = argmin_m b_{n,m} |p_n - q_m|^2, ties to the smaller m.
std::vector<Index> optimal_index_map(std::span<const Vec2> p, std::span<const Vec2> q,
                                     const Scenario& sc);

/// Same argmin restricted to FCs within sigma_n / sqrt(b_{n,m}); APs with no
/// reachable FC get kUnassigned.
std::vector<Index> limited_index_map(std::span<const Vec2> p, std::span<const Vec2> q,
                                     const Scenario& sc);

/// Constant part of AP n's cell criterion: beta * b_{n,T(n)} * |p_n - q_T(n)|^2.
double link_offset(std::span<const Vec2> p, std::span<const Vec2> q, std::span<const Index> t,
                   std::size_t n, const Scenario& sc);

/// a_n |p_n - w|^2 + link_offset(n)
double cell_cost(std::span<const Vec2> p, std::span<const Vec2> q, std::span<const Index> t,
                 std::size_t n, Vec2 w, const Scenario& sc);

/// Volumes and mass-weighted centroids of each AP's cells.
void cell_stats(Partition& part, const DensityGrid& grid, std::size_t n_aps);

/// Generalized Voronoi partition over the active APs; ties go to the smaller
/// AP index. With no active AP every cell is kUncovered.
Partition assign_cells(std::span<const Vec2> p, std::span<const Vec2> q, std::span<const Index> t,
                       const DensityGrid& grid, const Scenario& sc);

/// Region where AP i's criterion does not exceed AP j's, as a closed-form
/// shape. Used to cross-check assign_cells.
struct PairwiseCell {
  enum class Kind { half_space, disk, disk_complement, empty, full };

  Kind kind = Kind::full;
  Vec2 normal;          // half space: normal . w + offset <= 0
  double offset = 0.0;
  Vec2 center;          // disk kinds
  double radius = 0.0;  // sqrt(max(L, 0))
  double l = 0.0;       // signed squared radius L_ij
};

PairwiseCell pairwise_cell(std::size_t i, std::size_t j, std::span<const Vec2> p,
                           std::span<const Vec2> q, std::span<const Index> t, const Scenario& sc);

bool contains(const PairwiseCell& cell, Vec2 w);

}  // namespace twotier
