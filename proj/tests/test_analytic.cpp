#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "twotier/analytic.hpp"
#include "twotier/errors.hpp"
#include "twotier/partition.hpp"

using namespace twotier;

namespace {

// Two-tier power on [0,1] by brute quadrature, with APs placed by the
// balance rule for a fixed boundary r and FC q.
double integrated_power(double a1, double a2, double bp, double r, double q) {
  const double p1 = (r / 2 + bp * q) / (1 + bp);
  const double p2 = ((1 + r) / 2 + bp * q) / (1 + bp);
  const int n = 200000;
  double s = 0;
  for (int i = 0; i < n; ++i) {
    const double w = (i + 0.5) / n;
    s += w < r ? a1 * (w - p1) * (w - p1) : a2 * (w - p2) * (w - p2);
  }
  s /= n;
  return s + bp * (a1 * r * (p1 - q) * (p1 - q) + a2 * (1 - r) * (p2 - q) * (p2 - q));
}

Scenario line_pair(double a1, double a2, double kappa, double beta) {
  Scenario sc;
  sc.n_aps = 2;
  sc.n_fcs = 1;
  sc.a = {a1, a2};
  sc.b = {{kappa * a1}, {kappa * a2}};
  sc.beta = beta;
  sc.region = Region::interval(0, 1);
  return sc;
}

}  // namespace

TEST_CASE("usefulness condition") {
  CHECK(usefulness_condition(1, 1, 0.3));
  CHECK(usefulness_condition(1, 1, 1000));
  CHECK_FALSE(usefulness_condition(1, 100, 1));
  CHECK_FALSE(usefulness_condition(100, 1, 1));
  CHECK(usefulness_condition(1, 1e6, 0));
  // sqrt(a1/a2) = 0.6 sits just above sqrt(5/2) - 1 = 0.5811.
  CHECK(usefulness_condition(0.36, 1, 1));
  CHECK_FALSE(usefulness_condition(0.33, 1, 1));
}

TEST_CASE("two-AP power closed form against quadrature") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0, 1), w(0.2, 5);
  for (int k = 0; k < 20; ++k) {
    const double a1 = w(rng), a2 = w(rng), bp = 2 * u(rng), r = u(rng), q = u(rng);
    CHECK(two_ap_power(a1, a2, bp, r, q) == doctest::Approx(integrated_power(a1, a2, bp, r, q)).epsilon(1e-4));
  }
}

TEST_CASE("two-AP optimum examples") {
  const auto s = two_ap_optimum(1, 1, 1, 1);
  CHECK(s.useful);
  CHECK(s.beta_prime == 1.0);
  CHECK(s.power == doctest::Approx(5.0 / 96.0));
  CHECK(s.r_star == doctest::Approx(0.5));
  CHECK(s.q_star == doctest::Approx(0.5));
  CHECK(s.p1 == doctest::Approx(0.375));
  CHECK(s.p2 == doctest::Approx(0.625));

  const auto z = two_ap_optimum(1, 1, 1, 0);
  CHECK(z.power == doctest::Approx(1.0 / 48.0));
  CHECK(z.p1 == doctest::Approx(0.25));
  CHECK(z.p2 == doctest::Approx(0.75));

  const auto n = two_ap_optimum(1, 100, 1, 1);
  CHECK_FALSE(n.useful);
  CHECK(n.power == doctest::Approx(1.0 / 12.0));
  CHECK(n.r_star == 1.0);
  CHECK(n.q_star == 0.5);
  CHECK(n.p1 == 0.5);

  const auto m = two_ap_optimum(100, 1, 1, 1);
  CHECK_FALSE(m.useful);
  CHECK(m.r_star == 0.0);
  CHECK(m.power == doctest::Approx(1.0 / 12.0));

  CHECK(two_ap_optimum(2, 8, 0.5, 2).beta_prime == doctest::Approx(1.0));
  CHECK_THROWS_AS(two_ap_optimum(0, 1, 1, 1), ConfigError);
}

TEST_CASE("property: optimum is the best stationary or boundary power") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> la(std::log(0.05), std::log(20)), lb(std::log(1e-3), std::log(50));
  for (int k = 0; k < 200; ++k) {
    const double a1 = std::exp(la(rng)), a2 = std::exp(la(rng)), bp = std::exp(lb(rng));
    const auto sol = two_ap_optimum(a1, a2, 1, bp);
    double best = std::min(a1, a2) / 12;
    for (const auto& sp : sol.stationary_pairs)
      if (sp.feasible) best = std::min(best, sp.power);
    CHECK(sol.power == doctest::Approx(best).epsilon(1e-10));
    CHECK(sol.useful == (two_ap_power(a1, a2, bp, sol.stationary_pairs[0].r, sol.stationary_pairs[0].q) <=
                         std::min(a1, a2) / 12));
    if (sol.useful) {
      CHECK(sol.r_star == doctest::Approx(1 / (1 + std::sqrt(a1 / a2))));
      CHECK(sol.power == doctest::Approx(two_ap_power(a1, a2, bp, sol.r_star, sol.q_star)).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form AP-sensor power function") {
  CHECK(a_s_closed_form(1, 1, 1, 1.0 / 48) == doctest::Approx(1.0 / 16));
  CHECK(a_s_closed_form(1, 1, 1, 1.0 / 12) == doctest::Approx(0.0));
  CHECK(a_s_closed_form(1, 1, 3, 1.0 / 48) == doctest::Approx(3.0 / 16));
  CHECK(a_s_closed_form(1, 1, 1, 0.5) == 0.0);
  CHECK_THROWS_AS(a_s_closed_form(1, 1, 1, 0.02), DomainError);
  CHECK(a_s_closed_form(1, 100, 1, 0.075, 1.0) == 0.0);
  CHECK(a_s_closed_form(1, 100, 1, 0.075) > 0.0);
  CHECK(a_s_closed_form(1, 2, 1, 0.05, 0.5) > 0.0);

  // Equal weights: continuous at 1/12. Unequal: a jump at min(a)/12.
  const double e = 1e-9;
  CHECK(a_s_closed_form(1, 1, 1, 1.0 / 12 - e) == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(a_s_closed_form(1, 2, 1, 1.0 / 12 - e) > 1e-3);
  CHECK(a_s_closed_form(1, 2, 1, 1.0 / 12) == 0.0);
}

TEST_CASE("property: closed form is non-increasing") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> w(0.3, 3);
  for (int k = 0; k < 50; ++k) {
    const double a1 = w(rng), a2 = w(rng);
    const double d = std::sqrt(a1 * a2) / (std::sqrt(a1) + std::sqrt(a2));
    const double lo = d * d / 12, hi = std::min(a1, a2) / 12 * 1.2;
    double prev = a_s_closed_form(a1, a2, 1, lo);
    for (int i = 1; i <= 100; ++i) {
      const double v = a_s_closed_form(a1, a2, 1, lo + (hi - lo) * i / 100);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("fixed-partition power function") {
  const auto g = discretize(Region::interval(0, 1), UniformDensity{}, 4000);
  Partition part;
  part.assign.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) part.assign[i] = g.centers[i].x < 0.5 ? 0 : 1;
  cell_stats(part, g, 2);
  const std::vector<double> a{1, 1};
  const double h = partition_h(g, part, a);
  const double j = partition_j(g, part, a);
  CHECK(h == doctest::Approx(1.0 / 48).epsilon(1e-6));
  CHECK(j == doctest::Approx(1.0 / 12).epsilon(1e-6));

  const double want = std::pow(std::sqrt(j - h) - std::sqrt(1.0 / 24 - h), 2);
  CHECK(a_s_fixed_partition(g, part, a, 1, 1.0 / 24) == doctest::Approx(want));
  CHECK(a_s_fixed_partition(g, part, a, 1, 1.0 / 24) == doctest::Approx(0.0111645497).epsilon(1e-5));
  CHECK(a_s_fixed_partition(g, part, a, 2, h) == doctest::Approx(2 * (j - h)));
  CHECK(a_s_fixed_partition(g, part, a, 1, j) == 0.0);
  CHECK_THROWS_AS(a_s_fixed_partition(g, part, a, 1, h * 0.9), DomainError);

  // Swapping labels together with weights changes nothing.
  Partition swapped = part;
  for (auto& v : swapped.assign) v = 1 - v;
  cell_stats(swapped, g, 2);
  const std::vector<double> b{3, 1}, b_sw{1, 3};
  CHECK(partition_h(g, swapped, b_sw) == doctest::Approx(partition_h(g, part, b)));
  CHECK(partition_j(g, swapped, b_sw) == doctest::Approx(partition_j(g, part, b)));
  CHECK(a_s_fixed_partition(g, swapped, b_sw, 1, 0.08) == doctest::Approx(a_s_fixed_partition(g, part, b, 1, 0.08)));
}

TEST_CASE("fixed-partition function matches a direct minimization") {
  // For a fixed split, minimize A subject to S <= s over AP/FC positions by
  // sweeping beta and compare with the closed form at the resulting S.
  const auto g = discretize(Region::interval(0, 1), UniformDensity{}, 2000);
  const std::vector<double> a{1, 2};
  const double r = 0.4, kappa = 1;
  Partition part;
  part.assign.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) part.assign[i] = g.centers[i].x < r ? 0 : 1;
  cell_stats(part, g, 2);
  const double c1 = part.centroids[0]->x, c2 = part.centroids[1]->x;
  const double v1 = part.volumes[0], v2 = part.volumes[1];
  for (double beta : {0.05, 0.3, 1.0, 4.0}) {
    // With the partition fixed the optimal FC is the weighted mean of the APs
    // and each AP sits between its centroid and the FC.
    const double t = beta * kappa / (1 + beta * kappa);
    const double q = (a[0] * v1 * c1 + a[1] * v2 * c2) / (a[0] * v1 + a[1] * v2);
    const double p1 = (1 - t) * c1 + t * q, p2 = (1 - t) * c2 + t * q;
    double s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double w = g.centers[i].x;
      s += (part.assign[i] == 0 ? a[0] * (w - p1) * (w - p1) : a[1] * (w - p2) * (w - p2)) * g.masses[i];
    }
    const double ap = kappa * (a[0] * v1 * (p1 - q) * (p1 - q) + a[1] * v2 * (p2 - q) * (p2 - q));
    CHECK(a_s_fixed_partition(g, part, a, kappa, s) == doctest::Approx(ap).epsilon(1e-9));
  }
}

TEST_CASE("brute-force minimum distortion") {
  const auto line = discretize(Region::interval(0, 1), UniformDensity{}, 2000);
  CHECK(brute_force_dk(line, std::vector<double>{1}) == doctest::Approx(1.0 / 12).epsilon(1e-5));
  CHECK(brute_force_dk(line, std::vector<double>{1, 1}) == doctest::Approx(1.0 / 48).epsilon(1e-5));
  const double d = std::sqrt(2.0) / (1 + std::sqrt(2.0));
  CHECK(brute_force_dk(line, std::vector<double>{1, 2}) == doctest::Approx(d * d / 12).epsilon(1e-4));

  const auto sq = discretize(Region::rectangle(0, 10, 0, 10), UniformDensity{}, 100);
  CHECK(brute_force_dk(sq, std::vector<double>{1}, 4) == doctest::Approx(100.0 / 6).epsilon(1e-3));
  CHECK_THROWS_AS(brute_force_dk(sq, std::vector<double>{}), UsageError);
}

TEST_CASE("envelope extraction") {
  std::vector<TradeoffPoint> pts{
      {0.0, 1.0, 5.0}, {0.1, 2.0, 2.8}, {0.2, 2.5, 2.9}, {0.3, 3.0, 1.0}, {0.4, 4.0, 1.5}, {0.5, 3.5, 0.5}};
  mark_envelope(pts);
  for (std::size_t k = 1; k < pts.size(); ++k) CHECK(pts[k - 1].sensor_power <= pts[k].sensor_power);
  std::vector<double> env_s;
  for (const auto& p : pts)
    if (p.on_envelope) env_s.push_back(p.sensor_power);
  CHECK(env_s == std::vector<double>{1.0, 2.0, 3.0, 3.5});

  TradeoffCurve c{pts};
  const auto env = c.envelope();
  for (std::size_t k = 1; k < env.size(); ++k) CHECK(env[k].ap_power <= env[k - 1].ap_power);
}

TEST_CASE("trade-off sweep on two APs") {
  const auto sc = line_pair(1, 2, 1, 1);
  const auto g = discretize(sc.region, sc.density, 1000);
  OptimOptions opts;
  opts.restarts = 4;
  const auto curve = tradeoff_sweep(sc, g, {0.0, 0.5, 0.5, 2.0}, opts);
  REQUIRE(curve.points.size() == 3);
  const auto zero = std::find_if(curve.points.begin(), curve.points.end(), [](auto& p) { return p.beta == 0.0; });
  REQUIRE(zero != curve.points.end());
  const double dn = brute_force_dk(g, std::vector<double>{1, 2}, 16);
  CHECK(zero->sensor_power == doctest::Approx(dn).epsilon(1e-3));
  for (const auto& p : curve.points) CHECK(p.ap_power <= zero->ap_power + 1e-12);
  CHECK_THROWS_AS(tradeoff_sweep(sc, g, {}, opts), UsageError);
  CHECK_THROWS_AS(tradeoff_sweep(sc, g, {-1.0}, opts), UsageError);
}
