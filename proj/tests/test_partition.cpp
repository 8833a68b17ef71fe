#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "twotier/errors.hpp"
#include "twotier/partition.hpp"

using namespace twotier;

namespace {

Scenario base(std::size_t n, std::size_t m, double beta) {
  Scenario sc;
  sc.n_aps = n;
  sc.n_fcs = m;
  sc.a.assign(n, 1.0);
  sc.b.assign(n, std::vector<double>(m, 1.0));
  sc.beta = beta;
  sc.region = Region::rectangle(0, 10, 0, 10);
  return sc;
}

}  // namespace

TEST_CASE("optimal index map") {
  auto sc = base(1, 2, 1);
  std::vector<Vec2> p{{0, 0}}, q{{1, 0}, {2, 0}};
  sc.b = {{8, 1}};
  CHECK(optimal_index_map(p, q, sc) == std::vector<Index>{1});

  sc.b = {{4, 1}};  // 4*1 == 1*4
  CHECK(optimal_index_map(p, q, sc) == std::vector<Index>{0});

  auto one = base(3, 1, 1);
  std::vector<Vec2> p3{{1, 1}, {5, 5}, {9, 2}}, q1{{3, 3}};
  CHECK(optimal_index_map(p3, q1, one) == std::vector<Index>{0, 0, 0});
}

TEST_CASE("limited index map") {
  auto sc = base(1, 1, 1);
  std::vector<Vec2> p{{0, 0}}, q{{0, 3}};
  CHECK_THROWS_AS(limited_index_map(p, q, sc), ModeError);

  sc.ap_budgets = std::vector<double>{4.0};
  CHECK(limited_index_map(p, q, sc) == std::vector<Index>{kUnassigned});
  sc.ap_budgets = std::vector<double>{16.0};
  CHECK(limited_index_map(p, q, sc) == std::vector<Index>{0});
  sc.ap_budgets = std::vector<double>{9.0};  // exactly on the boundary
  CHECK(limited_index_map(p, q, sc) == std::vector<Index>{0});

  // The weighted-closer FC is out of range, so the other one wins.
  auto two = base(1, 2, 1);
  two.b = {{1, 1}};
  two.ap_budgets = std::vector<double>{4.0};
  std::vector<Vec2> q2{{0, 1.5}, {0, -3}};
  CHECK(limited_index_map(p, q2, two) == std::vector<Index>{0});
  two.b = {{4, 0.25}};  // weighted distances 9 and 2.25
  CHECK(limited_index_map(p, q2, two) == std::vector<Index>{1});
}

TEST_CASE("assign cells basics") {
  auto sc = base(2, 1, 1);
  sc.region = Region::rectangle(0, 1, 0, 1);
  const auto g = discretize(sc.region, UniformDensity{}, 10);
  std::vector<Vec2> p{{0, 0}, {1, 0}}, q{{0.5, 0}};
  std::vector<Index> t{0, 0};
  const auto part = assign_cells(p, q, t, g, sc);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(part.assign[i] == (g.centers[i].x < 0.5 ? 0 : 1));
  CHECK(part.volumes[0] == doctest::Approx(0.5));
  CHECK(part.centroids[0]->x == doctest::Approx(0.25));
  CHECK(part.centroids[1]->x == doctest::Approx(0.75));

  std::vector<Index> none{kUnassigned, kUnassigned};
  const auto empty = assign_cells(p, q, none, g, sc);
  for (auto v : empty.assign) CHECK(v == kUncovered);
  CHECK(empty.assigned_mass() == 0.0);
  CHECK_FALSE(empty.centroids[0].has_value());

  std::vector<Index> only_second{kUnassigned, 0};
  const auto solo = assign_cells(p, q, only_second, g, sc);
  CHECK(solo.volumes[1] == doctest::Approx(1.0));
  CHECK(solo.centroids[1]->x == doctest::Approx(0.5));
  CHECK(solo.centroids[1]->y == doctest::Approx(0.5));
}

TEST_CASE("ties go to the smaller AP index") {
  Scenario sc = base(2, 1, 0);
  sc.region = Region::interval(0, 3);
  const auto g = discretize(sc.region, UniformDensity{}, 3);  // centers 0.5, 1.5, 2.5
  std::vector<Vec2> p{{2, 0}, {1, 0}}, q{{0, 0}};
  std::vector<Index> t{0, 0};
  const auto part = assign_cells(p, q, t, g, sc);
  CHECK(part.assign == std::vector<Index>{1, 0, 0});
}

TEST_CASE("pairwise cell kinds") {
  auto sc = base(2, 1, 1);
  std::vector<Vec2> q{{5, 5}};
  std::vector<Index> t{0, 0};

  std::vector<Vec2> p{{0, 0}, {1, 0}};
  sc.b = {{1}, {1}};
  // Equal link terms need equal distances to the FC.
  std::vector<Vec2> sym{{4.5, 5}, {5.5, 5}};
  auto hs = pairwise_cell(0, 1, sym, q, t, sc);
  CHECK(hs.kind == PairwiseCell::Kind::half_space);
  CHECK(contains(hs, {4.9, 1}));
  CHECK_FALSE(contains(hs, {5.1, 9}));
  CHECK(contains(hs, {5.0, 3}));  // bisector itself belongs to both

  sc.a = {2, 1};
  std::vector<Vec2> same{{5, 6}, {5, 6}};
  auto d = pairwise_cell(0, 1, same, q, t, sc);
  CHECK(d.kind == PairwiseCell::Kind::disk);
  CHECK(d.radius == doctest::Approx(0.0));
  CHECK(d.l == doctest::Approx(0.0));

  auto dc = pairwise_cell(1, 0, p, q, t, sc);
  CHECK((dc.kind == PairwiseCell::Kind::disk_complement || dc.kind == PairwiseCell::Kind::full));

  CHECK_THROWS_AS(pairwise_cell(1, 1, p, q, t, sc), UsageError);
  std::vector<Index> bad{0, kUnassigned};
  CHECK_THROWS_AS(pairwise_cell(0, 1, p, q, bad, sc), ConsistencyError);
}

TEST_CASE("pairwise cell formulas") {
  // Two APs far from the FC so the link term dominates: the stronger-weighted
  // AP with the cheaper link can lose everything.
  auto sc = base(2, 1, 1);
  sc.a = {3, 1};
  std::vector<Vec2> p{{1, 1}, {2, 2}}, q{{9, 9}};
  std::vector<Index> t{0, 0};
  const double ki = dist2(p[0], q[0]);
  const double kj = dist2(p[1], q[0]);
  const auto cell = pairwise_cell(0, 1, p, q, t, sc);
  const Vec2 c = (3.0 * p[0] - 1.0 * p[1]) / 2.0;
  const double l = 3.0 * dist2(p[0], p[1]) / 4.0 - (ki - kj) / 2.0;
  CHECK(cell.center.x == doctest::Approx(c.x));
  CHECK(cell.center.y == doctest::Approx(c.y));
  CHECK(cell.l == doctest::Approx(l));
  CHECK(cell.kind == (l >= 0 ? PairwiseCell::Kind::disk : PairwiseCell::Kind::empty));
}

TEST_CASE("property: pairwise membership agrees with direct cost comparison") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(0, 10), w(0.5, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < 200; ++k) {
    auto sc = base(2, 1, w(rng) / 4);
    sc.a = {w(rng), coin(rng) ? w(rng) : sc.a[0]};
    sc.b = {{w(rng)}, {w(rng)}};
    std::vector<Vec2> p{{u(rng), u(rng)}, {u(rng), u(rng)}}, q{{u(rng), u(rng)}};
    std::vector<Index> t{0, 0};
    const auto cell = pairwise_cell(0, 1, p, q, t, sc);
    for (int s = 0; s < 50; ++s) {
      const Vec2 x{u(rng), u(rng)};
      const double ci = cell_cost(p, q, t, 0, x, sc);
      const double cj = cell_cost(p, q, t, 1, x, sc);
      if (std::abs(ci - cj) < 1e-9) continue;
      CHECK(contains(cell, x) == (ci < cj));
    }
  }
}

TEST_CASE("property: assign_cells is the argmin of the cell cost") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(0, 10), w(0.5, 4);
  std::uniform_int_distribution<int> nn(1, 6), mm(1, 3);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = nn(rng), m = std::min<std::size_t>(mm(rng), n);
    auto sc = base(n, m, w(rng) / 4);
    for (auto& a : sc.a) a = w(rng);
    for (auto& row : sc.b)
      for (auto& b : row) b = w(rng);
    std::vector<Vec2> p, q;
    for (std::size_t i = 0; i < n; ++i) p.push_back({u(rng), u(rng)});
    for (std::size_t j = 0; j < m; ++j) q.push_back({u(rng), u(rng)});
    const auto t = optimal_index_map(p, q, sc);
    const auto g = discretize(sc.region, UniformDensity{}, 25);
    const auto part = assign_cells(p, q, t, g, sc);
    double vol = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j)
        CHECK(cell_cost(p, q, t, part.assign[i], g.centers[i], sc) <= cell_cost(p, q, t, j, g.centers[i], sc));
      vol += g.masses[i];
    }
    CHECK(part.assigned_mass() == doctest::Approx(vol));
  }
}

TEST_CASE("cell stats") {
  const auto g = discretize(Region::interval(0, 1), UniformDensity{}, 100);
  Partition part;
  part.assign.assign(g.size(), 0);
  cell_stats(part, g, 2);
  CHECK(part.volumes[0] == doctest::Approx(1.0));
  CHECK(part.centroids[0]->x == doctest::Approx(0.5));
  CHECK(part.volumes[1] == 0.0);
  CHECK_FALSE(part.centroids[1].has_value());
}
