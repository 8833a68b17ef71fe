#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twotier/model.hpp"
#include "twotier/optimize.hpp"
#include "twotier/scene.hpp"

namespace twotier {

// ---------------------------------------------------------------------------
// Two APs and one FC on the unit interval with uniform density and
// b_{n,1} = kappa * a_n. All closed forms below are for that instance.
// ---------------------------------------------------------------------------

/// Both APs carry sensors at the optimum iff this holds (beta' = beta*kappa).
bool usefulness_condition(double a1, double a2, double beta_prime);

/// Two-tier power when AP 1 owns [0, r], AP 2 owns [r, 1], the FC sits at q
/// and both APs satisfy the centroid/FC balance condition.
double two_ap_power(double a1, double a2, double beta_prime, double r, double q);

struct StationaryPair {
  double r = 0.0;
  double q = 0.0;
  double power = 0.0;
  bool feasible = false;  // finite with r, q in [0, 1]
};

struct TwoApSolution {
  bool useful = false;
  double beta_prime = 0.0;
  double r_star = 0.0;  // boundary between the two cells
  double q_star = 0.0;  // FC location
  double p1 = 0.0;
  double p2 = 0.0;
  double power = 0.0;
  std::array<StationaryPair, 4> stationary_pairs{};
};

TwoApSolution two_ap_optimum(double a1, double a2, double kappa, double beta);

/// Closed-form AP-Sensor power function A(s). Raises DomainError below
/// (1/12) (sqrt(a1 a2) / (sqrt a1 + sqrt a2))^2. When `beta_prime` is given
/// and the usefulness condition fails for it, A(s) is identically zero.
double a_s_closed_form(double a1, double a2, double kappa, double s,
                       std::optional<double> beta_prime = std::nullopt);

// ---------------------------------------------------------------------------
// Fixed-partition quantities (single FC, b_{i,1} = kappa * a_i).
// ---------------------------------------------------------------------------

/// Minimum one-tier power of the partition: every AP at its own centroid.
double partition_h(const DensityGrid& grid, const Partition& part, std::span<const double> a);

/// One-tier power of the partition with every AP at the a*v weighted grand centroid.
double partition_j(const DensityGrid& grid, const Partition& part, std::span<const double> a);

/// kappa [sqrt(J - H) - sqrt(s - H)]^2 on [H, J], zero beyond J.
double a_s_fixed_partition(const DensityGrid& grid, const Partition& part, std::span<const double> a,
                           double kappa, double s);

/// Minimum weighted K-level one-tier distortion, estimated by multi-start
/// weighted Lloyd iterations. Self-contained so it can serve as an oracle
/// for the optimizer.
double brute_force_dk(const DensityGrid& grid, std::span<const double> a, std::size_t restarts = 64,
                      std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// AP-Sensor trade-off traced by a beta sweep.
// ---------------------------------------------------------------------------

struct TradeoffPoint {
  double beta = 0.0;
  double sensor_power = 0.0;
  double ap_power = 0.0;
  bool on_envelope = false;
};

struct TradeoffCurve {
  std::vector<TradeoffPoint> points;  // sorted by sensor power

  std::vector<TradeoffPoint> envelope() const;
};

/// Marks the lower convex envelope of the points, truncated where it stops
/// decreasing. Sorts `points` by sensor power first.
void mark_envelope(std::vector<TradeoffPoint>& points);

/// Best-of-restarts HTTL per distinct beta; duplicates are dropped.
TradeoffCurve tradeoff_sweep(const Scenario& sc, const DensityGrid& grid, std::vector<double> betas,
                             const OptimOptions& opts);

}  // namespace twotier
