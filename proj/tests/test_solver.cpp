#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "infmax/errors.hpp"
#include "infmax/graph.hpp"
#include "infmax/influence.hpp"
#include "infmax/solver.hpp"
#include "oracles.hpp"

using namespace infmax;

namespace {

ClusterGraph abstract_graph(std::vector<double> weights, std::vector<std::pair<int, int>> edges,
                            std::vector<int> costs = {}) {
  ClusterGraph h;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    Cluster c;
    c.vertices = VertexSet{static_cast<Vertex>(i)};
    c.cost = costs.empty() ? 1 : costs[i];
    c.weight = weights[i];
    h.clusters.push_back(c);
  }
  h.adjacency.resize(weights.size());
  for (auto [a, b] : edges) {
    h.adjacency[static_cast<std::size_t>(a)].push_back(static_cast<std::size_t>(b));
    h.adjacency[static_cast<std::size_t>(b)].push_back(static_cast<std::size_t>(a));
  }
  for (auto& list : h.adjacency) std::sort(list.begin(), list.end());
  return h;
}

} // namespace

TEST_CASE("radius formulas") {
  SolverConfig cfg;
  cfg.k = 1;
  cfg.epsilon = 0.1;
  cfg.decay_constant = 1.0;
  const FamilyParams p{3, 0.5, 0.5};
  const auto rs = radius_schedule(cfg, p);
  CHECK(rs.rho == 9);
  CHECK(rs.r == 40);
  CHECK(select_radius(cfg, p) == 40);
  cfg.radius_override = 2;
  CHECK(select_radius(cfg, p) == 2);

  CHECK_THROWS_AS(radius_schedule(SolverConfig{}, FamilyParams{3, 0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(radius_schedule(SolverConfig{}, FamilyParams{3, 0.5, 1.0}), DomainError);
}

TEST_CASE("rho grows by one when epsilon shrinks by exp(-delta)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> eps_d(0.01, 0.5);
  int hits = 0;
  for (int i = 0; i < 50; ++i) {
    SolverConfig cfg;
    cfg.epsilon = eps_d(rng);
    const FamilyParams p{3, 0.7, 0.3};
    const int rho = radius_schedule(cfg, p).rho;
    cfg.epsilon *= std::exp(-p.delta);
    const double raw = std::log(6.0 / cfg.epsilon) / p.delta;
    if (std::abs(raw - std::round(raw)) < 1e-9) continue; // ceiling boundary
    CHECK(radius_schedule(cfg, p).rho == rho + 1);
    ++hits;
  }
  CHECK(hits > 40);
}

TEST_CASE("cluster graph examples") {
  SolverConfig cfg;
  cfg.k = 1;
  const auto lonely = build_cluster_graph(fixture::edgeless(3), WeightVector::constant(3, 1.0), cfg, 2);
  REQUIRE(lonely.size() == 3);
  for (const auto& c : lonely.clusters) {
    CHECK(c.weight == doctest::Approx(1.0));
    CHECK(c.best_assignment.at(c.vertices.front()) == Spin::plus);
  }
  CHECK(lonely.edge_count() == 0);

  cfg.k = 2;
  const auto p3 = fixture::path(3, 0.2);
  const auto h = build_cluster_graph(p3, WeightVector::constant(3, 1.0), cfg, 0);
  REQUIRE(h.size() == 5);
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t j = i + 1; j < h.size(); ++j) {
      const auto& a = h.clusters[i].vertices;
      const auto& b = h.clusters[j].vertices;
      const bool expect = a.intersects(b) || power_adjacent(p3, a, b, 0);
      CHECK(h.adjacent(i, j) == expect);
    }
  }

  const auto flat = build_cluster_graph(p3, WeightVector::constant(3, 0.0), cfg, 1);
  for (const auto& c : flat.clusters) {
    CHECK(c.weight == 0.0);
    for (const auto& [v, s] : c.best_assignment) CHECK(s == Spin::plus);
  }
}

TEST_CASE("budgeted MWIS examples") {
  const auto none = abstract_graph({5, 3, 2}, {});
  CHECK(budgeted_mwis(none, 2) == std::vector<std::size_t>{0, 1});
  const auto tri = abstract_graph({3, 2, 1}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(budgeted_mwis(tri, 2) == std::vector<std::size_t>{0});
  const auto path = abstract_graph({2, 5, 2}, {{0, 1}, {1, 2}});
  CHECK(budgeted_mwis(path, 2) == std::vector<std::size_t>{1});
  const auto negative = abstract_graph({-1, -2}, {});
  CHECK(budgeted_mwis(negative, 2).empty());
}

TEST_CASE("budgeted MWIS equals exhaustive search") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 13);
    const int k = 1 + static_cast<int>(rng() % 4);
    std::vector<double> w;
    std::vector<int> cost;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) {
      w.push_back(static_cast<double>(static_cast<int>(rng() % 129) - 32) / 64.0);
      cost.push_back(1 + static_cast<int>(rng() % static_cast<unsigned>(k + 1)));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) {
          edges.emplace_back(i, j);
          adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
        }
    const auto h = abstract_graph(w, edges, cost);
    const auto pick = budgeted_mwis(h, k);
    double total = 0.0;
    int spent = 0;
    for (std::size_t i : pick) {
      total += w[i];
      spent += cost[i];
      for (std::size_t j : pick) CHECK_FALSE(adj[i][j]);
    }
    CHECK(spent <= k);
    CHECK(total == oracle::mwis(w, cost, adj, k));
  }
}

TEST_CASE("solver closed forms") {
  SolverConfig cfg;
  const FamilyParams p{3, 0.76, 0.24};

  // Isolated vertices: the best single pin is +1 at the smallest field.
  const auto iso = fixture::edgeless({0.3, -0.2, 0.1, 0.4});
  const auto s1 = solve_infmax(iso, WeightVector::constant(4, 1.0), cfg, p);
  CHECK(s1.vertices == VertexSet{1});
  CHECK(s1.assignment.at(1) == Spin::plus);
  CHECK(s1.local_value == doctest::Approx(1.0 - std::tanh(-0.2)).epsilon(1e-12));

  const auto flat = solve_infmax(iso, WeightVector::constant(4, 0.0), cfg, p);
  CHECK(flat.local_value == 0.0);

  const auto two = fixture::path(2, 0.3);
  const auto s2 = solve_infmax(two, WeightVector::constant(2, 1.0), cfg, p);
  CHECK(s2.vertices.size() == 1);
  CHECK(*s2.global_value == doctest::Approx(1.291312612).epsilon(1e-9));
  CHECK_FALSE(s2.diagnostics.heuristic);
}

TEST_CASE("solver errors and best effort") {
  SolverConfig cfg;
  const FamilyParams p{3, 0.76, 0.24};
  const IsingModel strong({0, 0}, {{0, 1, 0.9}});
  CHECK_THROWS_AS(solve_infmax(strong, WeightVector::constant(2, 1.0), cfg, p), ValidationError);
  cfg.best_effort = true;
  const auto loose = solve_infmax(strong, WeightVector::constant(2, 1.0), cfg, p);
  CHECK(loose.diagnostics.heuristic);
  CHECK_FALSE(loose.diagnostics.warnings.empty());

  SolverConfig tight;
  tight.exact_ball_cap = 6;
  const auto long_path = fixture::path(30, 0.2);
  CHECK_THROWS_AS(solve_infmax(long_path, WeightVector::constant(30, 1.0), tight, p), CapacityError);
  tight.best_effort = true;
  const auto eff = solve_infmax(long_path, WeightVector::constant(30, 1.0), tight, p);
  CHECK(eff.diagnostics.heuristic);
  CHECK(eff.diagnostics.radius_effective == 2);
  CHECK(eff.diagnostics.largest_region <= 6);
  CHECK_FALSE(eff.global_value.has_value());
}

TEST_CASE("brute force oracle") {
  const auto iso = fixture::edgeless(3);
  const auto all = brute_force_infmax(iso, WeightVector::constant(3, 1.0), 3);
  CHECK(all.vertices == VertexSet{0, 1, 2});
  CHECK(*all.global_value == doctest::Approx(3.0));

  const auto two = brute_force_infmax(fixture::path(2, 0.3), WeightVector::constant(2, 1.0), 1);
  CHECK(*two.global_value == doctest::Approx(1.291312612).epsilon(1e-9));

  const auto one = brute_force_infmax(fixture::edgeless(1, -2.0), WeightVector::constant(1, 1.0), 1);
  CHECK(one.assignment.at(0) == Spin::plus);
  CHECK(*one.global_value == doctest::Approx(1.96402758).epsilon(1e-8));

  CHECK_THROWS_AS(brute_force_infmax(fixture::edgeless(17), WeightVector::constant(17, 1.0), 1), ValidationError);
  CHECK_NOTHROW(brute_force_infmax(fixture::edgeless(17), WeightVector::constant(17, 1.0), 1, false));

  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto m = random_instance(9, 3, {-0.4, 0.4}, {-0.5, 0.5}, seed);
    const auto w = random_weights(9, {-1, 1}, seed);
    const std::vector<double> a(w.values().begin(), w.values().end());
    const int k = 1 + static_cast<int>(seed % 2);
    const auto best = brute_force_infmax(m, w, k);
    CHECK(std::abs(*best.global_value - oracle::best_influence(m, a, k)) <= 1e-11);
    CHECK(std::abs(global_influence({m, w, best.assignment, {}}) - *best.global_value) <= 1e-12);
  }
}

TEST_CASE("solver within epsilon of the oracle") {
  const FamilyParams p{3, 0.76, 0.24};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = random_instance(12, 3, {-0.3, 0.3}, {-0.5, 0.5}, seed);
    const auto w = random_weights(12, {-1, 1}, seed + 7);
    SolverConfig cfg;
    cfg.k = 2;
    cfg.radius_override = max_component_diameter(m);
    const auto sol = solve_infmax(m, w, cfg, p);
    const auto best = brute_force_infmax(m, w, 2);
    CHECK(*sol.global_value >= *best.global_value - cfg.epsilon);
    CHECK(sol.vertices.size() <= 2);
  }
}

TEST_CASE("radius 0 on an edgeless graph matches the oracle") {
  const auto iso = fixture::edgeless({0.2, -0.4, 0.0, 0.3, -0.1});
  const auto w = WeightVector(std::vector<double>{1.0, -0.5, 0.8, 1.0, 0.3});
  SolverConfig cfg;
  cfg.k = 2;
  cfg.radius_override = 0;
  const auto sol = solve_infmax(iso, w, cfg, FamilyParams{});
  const auto best = brute_force_infmax(iso, w, 2);
  CHECK(sol.vertices == best.vertices);
  CHECK(sol.assignment == best.assignment);
  CHECK(*sol.global_value == doctest::Approx(*best.global_value).epsilon(1e-13));
}

TEST_CASE("decay constant calibration") {
  const FamilyParams p{3, 0.76, 0.24};
  CHECK(calibrate_decay_constant(fixture::edgeless(5), p, 5) == 0.0);
  CHECK(calibrate_decay_constant(fixture::cycle(8, 0.0), p, 8) == 0.0);
  const double c = calibrate_decay_constant(fixture::cycle(12, 0.3), p, 12);
  CHECK(c > 0.0);
  CHECK(std::isfinite(c));
  for (Vertex u = 0; u < 12; ++u) {
    const auto tail = total_influence_profile(fixture::cycle(12, 0.3), u);
    for (std::size_t L = 1; L < tail.size(); ++L)
      CHECK(tail[L] <= c * std::pow(1.0 - p.delta, static_cast<double>(L)) * (1.0 + 1e-12));
  }
}
