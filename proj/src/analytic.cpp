#include "twotier/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "twotier/errors.hpp"

namespace twotier {

namespace {

double ratio_bound(double beta_prime) {
  return std::sqrt((4.0 * beta_prime + 1.0) / (beta_prime + 1.0)) - 1.0;
}

double two_level_d(double a1, double a2) {
  return std::sqrt(a1 * a2) / (std::sqrt(a1) + std::sqrt(a2));
}

void check_weights(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw ConfigError("AP weights must be positive");
}

StationaryPair make_pair(double a1, double a2, double bp, double r, double q) {
  StationaryPair s;
  s.r = r;
  s.q = q;
  s.feasible = std::isfinite(r) && std::isfinite(q) && r >= 0.0 && r <= 1.0 && q >= 0.0 && q <= 1.0;
  s.power = s.feasible ? two_ap_power(a1, a2, bp, r, q) : std::numeric_limits<double>::infinity();
  return s;
}

}  // namespace

bool usefulness_condition(double a1, double a2, double beta_prime) {
  const double lo = ratio_bound(beta_prime);
  const double ratio = std::sqrt(a1 / a2);
  if (lo <= 0.0) return true;
  return lo <= ratio && ratio <= 1.0 / lo;
}

double two_ap_power(double a1, double a2, double bp, double r, double q) {
  const double scale = 4.0 * (1.0 + bp) * (1.0 + bp);

  const double x = r + 2.0 * bp * q;
  const double y = 2.0 * bp * (q - r) - r;
  const double p1 = a1 * r / scale * (bp * (r - 2.0 * q) * (r - 2.0 * q) + (x * x + x * y + y * y) / 3.0);

  const double u = (1.0 - r) + 2.0 * bp * (q - r);
  const double v = (r - 1.0) + 2.0 * bp * (q - 1.0);
  const double e = 1.0 + r - 2.0 * q;
  const double p2 = a2 * (1.0 - r) / scale * (bp * e * e + (u * u + u * v + v * v) / 3.0);

  return p1 + p2;
}

TwoApSolution two_ap_optimum(double a1, double a2, double kappa, double beta) {
  check_weights(a1, a2);
  if (!(kappa > 0.0) || beta < 0.0) throw ConfigError("kappa must be positive and beta non-negative");

  TwoApSolution sol;
  const double bp = beta * kappa;
  sol.beta_prime = bp;

  const double s = std::sqrt(a1 / a2);
  const double g = std::sqrt(bp / (bp + 1.0));
  const double h = bp > 0.0 ? (g + 1.0 / g) / 2.0 : std::numeric_limits<double>::infinity();
  const double den = 1.0 - a1 / a2;
  sol.stationary_pairs = {
      make_pair(a1, a2, bp, 1.0 / (1.0 + s), 1.0 / (1.0 + s)),
      make_pair(a1, a2, bp, 1.0 / (1.0 - s), 1.0 / (1.0 - s)),
      make_pair(a1, a2, bp, (1.0 - g * s) / den, (1.0 - h * s) / den),
      make_pair(a1, a2, bp, (1.0 + g * s) / den, (1.0 + h * s) / den),
  };

  sol.useful = usefulness_condition(a1, a2, bp);
  if (sol.useful) {
    sol.r_star = sol.q_star = 1.0 / (1.0 + s);
    const double d = two_level_d(a1, a2);
    sol.power = (4.0 * bp + 1.0) / (12.0 * (bp + 1.0)) * d * d;
    sol.p1 = (sol.r_star + 2.0 * bp * sol.q_star) / (2.0 * (1.0 + bp));
    sol.p2 = (1.0 + sol.r_star + 2.0 * bp * sol.q_star) / (2.0 * (1.0 + bp));
  } else {
    // Everything goes to the stronger AP; the weaker one sits idle with it.
    sol.r_star = a1 <= a2 ? 1.0 : 0.0;
    sol.q_star = 0.5;
    sol.p1 = sol.p2 = 0.5;
    sol.power = std::min(a1, a2) / 12.0;
  }
  return sol;
}

double a_s_closed_form(double a1, double a2, double kappa, double s, std::optional<double> beta_prime) {
  check_weights(a1, a2);
  const double d = two_level_d(a1, a2);
  const double lo = d * d / 12.0;
  if (s < lo) throw DomainError("sensor power below the two-level minimum distortion");
  if (beta_prime && !usefulness_condition(a1, a2, *beta_prime)) return 0.0;
  if (s >= std::min(a1, a2) / 12.0) return 0.0;
  const double bracket = d / 2.0 - std::sqrt(s - lo);
  return kappa * bracket * bracket;
}

double partition_h(const DensityGrid& grid, const Partition& part, std::span<const double> a) {
  double h = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index n = part.assign[i];
    if (n == kUncovered) continue;
    h += a[n] * dist2(grid.centers[i], *part.centroids[n]) * grid.masses[i];
  }
  return h;
}

double partition_j(const DensityGrid& grid, const Partition& part, std::span<const double> a) {
  Vec2 num;
  double den = 0.0;
  for (std::size_t n = 0; n < part.volumes.size(); ++n) {
    if (!part.centroids[n]) continue;
    num += a[n] * part.volumes[n] * *part.centroids[n];
    den += a[n] * part.volumes[n];
  }
  if (!(den > 0.0)) throw ConsistencyError("partition has no mass");
  const Vec2 grand = num / den;

  double j = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Index n = part.assign[i];
    if (n == kUncovered) continue;
    j += a[n] * dist2(grid.centers[i], grand) * grid.masses[i];
  }
  return j;
}

double a_s_fixed_partition(const DensityGrid& grid, const Partition& part, std::span<const double> a,
                           double kappa, double s) {
  const double h = partition_h(grid, part, a);
  const double j = partition_j(grid, part, a);
  if (s < h) throw DomainError("sensor power below the partition's minimum");
  if (s >= j) return 0.0;
  const double bracket = std::sqrt(j - h) - std::sqrt(s - h);
  return kappa * bracket * bracket;
}

double brute_force_dk(const DensityGrid& grid, std::span<const double> a, std::size_t restarts,
                      std::uint64_t seed) {
  const std::size_t k = a.size();
  if (k == 0 || restarts == 0) throw UsageError("need at least one level and one restart");

  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> by_mass(grid.masses.begin(), grid.masses.end());

  std::vector<std::size_t> owner(grid.size());
  std::vector<Vec2> sums(k);
  std::vector<double> mass(k);
  double best = std::numeric_limits<double>::infinity();

  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<Vec2> x(k);
    for (auto& xi : x) xi = grid.centers[by_mass(rng)];

    double cost = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 500; ++it) {
      double next = 0.0;
      std::fill(sums.begin(), sums.end(), Vec2{});
      std::fill(mass.begin(), mass.end(), 0.0);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t arg = 0;
        double c = a[0] * dist2(x[0], grid.centers[i]);
        for (std::size_t l = 1; l < k; ++l) {
          const double cl = a[l] * dist2(x[l], grid.centers[i]);
          if (cl < c) {
            c = cl;
            arg = l;
          }
        }
        owner[i] = arg;
        next += c * grid.masses[i];
        sums[arg] += grid.masses[i] * grid.centers[i];
        mass[arg] += grid.masses[i];
      }
      for (std::size_t l = 0; l < k; ++l)
        if (mass[l] > 0.0) x[l] = sums[l] / mass[l];
      const bool stalled = cost - next <= 1e-13 * std::max(cost, 1e-300);
      cost = next;
      if (stalled) break;
    }

    // Cost at the final centroids.
    double final_cost = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double c = std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l < k; ++l) c = std::min(c, a[l] * dist2(x[l], grid.centers[i]));
      final_cost += c * grid.masses[i];
    }
    best = std::min(best, final_cost);
  }
  return best;
}

std::vector<TradeoffPoint> TradeoffCurve::envelope() const {
  std::vector<TradeoffPoint> out;
  for (const auto& p : points)
    if (p.on_envelope) out.push_back(p);
  return out;
}

void mark_envelope(std::vector<TradeoffPoint>& points) {
  std::sort(points.begin(), points.end(), [](const TradeoffPoint& l, const TradeoffPoint& r) {
    if (l.sensor_power != r.sensor_power) return l.sensor_power < r.sensor_power;
    if (l.ap_power != r.ap_power) return l.ap_power < r.ap_power;
    return l.beta < r.beta;
  });
  for (auto& p : points) p.on_envelope = false;
  if (points.empty()) return;

  auto cross = [&](std::size_t o, std::size_t u, std::size_t v) {
    const double ux = points[u].sensor_power - points[o].sensor_power;
    const double uy = points[u].ap_power - points[o].ap_power;
    const double vx = points[v].sensor_power - points[o].sensor_power;
    const double vy = points[v].ap_power - points[o].ap_power;
    return ux * vy - uy * vx;
  };

  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!hull.empty() && points[hull.back()].sensor_power == points[i].sensor_power) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) <= 0.0) hull.pop_back();
    hull.push_back(i);
  }

  points[hull[0]].on_envelope = true;
  for (std::size_t h = 1; h < hull.size(); ++h) {
    if (points[hull[h]].ap_power > points[hull[h - 1]].ap_power) break;
    points[hull[h]].on_envelope = true;
  }
}

TradeoffCurve tradeoff_sweep(const Scenario& sc, const DensityGrid& grid, std::vector<double> betas,
                             const OptimOptions& opts) {
  if (betas.empty()) throw UsageError("beta list is empty");
  for (double b : betas)
    if (!(b >= 0.0) || !std::isfinite(b)) throw UsageError("beta values must be finite and non-negative");
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

  TradeoffCurve curve;
  for (double b : betas) {
    Scenario s = sc;
    s.beta = b;
    const auto runs = run_restarts(s, grid, Mode::unconstrained, opts);
    const auto& best = runs[best_restart(runs)].final().report;
    curve.points.push_back({b, best.sensor_power, best.ap_power, false});
  }
  mark_envelope(curve.points);
  return curve;
}

}  // namespace twotier
