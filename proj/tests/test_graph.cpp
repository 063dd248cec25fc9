#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "infmax/errors.hpp"
#include "infmax/graph.hpp"
#include "oracles.hpp"

using namespace infmax;

TEST_CASE("balls") {
  const auto p5 = fixture::path(5);
  CHECK(ball(p5, VertexSet{1, 3}, 0) == VertexSet{1, 3});
  CHECK(ball(p5, VertexSet{2}, 1) == VertexSet{1, 2, 3});
  CHECK(ball(fixture::path(10), VertexSet{0, 9}, 2) == VertexSet{0, 1, 2, 7, 8, 9});
  CHECK_THROWS_AS(ball(p5, VertexSet{0}, -2), DomainError);

  const IsingModel split({0, 0, 0, 0}, {{0, 1, 0.1}, {2, 3, 0.1}});
  CHECK(ball(split, VertexSet{3}, kInfiniteRadius) == VertexSet{2, 3});
}

TEST_CASE("power-graph adjacency") {
  const auto p10 = fixture::path(10);
  CHECK(power_adjacent(p10, VertexSet{4}, VertexSet{5}, 0));
  CHECK_FALSE(power_adjacent(p10, VertexSet{0}, VertexSet{9}, 1));
  CHECK(power_adjacent(fixture::path(4), VertexSet{0}, VertexSet{3}, 1));
  CHECK_FALSE(power_adjacent(fixture::path(5), VertexSet{0}, VertexSet{4}, 1));
  CHECK_THROWS_AS(power_adjacent(p10, VertexSet{1}, VertexSet{1, 2}, 1), ValidationError);
  CHECK_THROWS_AS(power_adjacent(p10, VertexSet{}, VertexSet{1}, 1), ValidationError);

  const IsingModel split({0, 0}, {});
  CHECK_FALSE(power_adjacent(split, VertexSet{0}, VertexSet{1}, 100));
}

TEST_CASE("components of S in the power graph") {
  CHECK(components_in_power_graph(fixture::path(10), VertexSet{4}, 0).size() == 1);
  const auto far = components_in_power_graph(fixture::path(10), VertexSet{0, 9}, 1);
  REQUIRE(far.size() == 2);
  CHECK(far[0] == VertexSet{0});
  CHECK(far[1] == VertexSet{9});
  const auto near = components_in_power_graph(fixture::path(3), VertexSet{0, 2}, 1);
  REQUIRE(near.size() == 1);
  CHECK(near[0] == VertexSet{0, 2});
}

TEST_CASE("cluster enumeration examples") {
  const auto g = fixture::path(12);
  CHECK(enumerate_connected_clusters(g, 1, 3).size() == 12);

  const auto p3 = enumerate_connected_clusters(fixture::path(3), 2, 0);
  const std::vector<VertexSet> expected{{0}, {1}, {2}, {0, 1}, {1, 2}};
  CHECK(p3 == expected);
  CHECK(enumerate_connected_clusters(fixture::triangle(), 2, 0).size() == 6);
}

namespace {

// Every subset of size <= k whose members are connected under "distance <= 2r + 1".
std::vector<VertexSet> brute_clusters(const IsingModel& m, int k, int r) {
  const auto d = oracle::distances(m);
  const int n = static_cast<int>(m.size());
  std::vector<VertexSet> out;
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    if (std::popcount(set) > k) continue;
    std::vector<Vertex> members;
    for (int v = 0; v < n; ++v)
      if (set >> v & 1u) members.push_back(v);
    std::vector<bool> reached(members.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (!reached[j] && d[static_cast<std::size_t>(members[i])][static_cast<std::size_t>(members[j])] <= 2 * r + 1) {
          reached[j] = true;
          stack.push_back(j);
        }
      }
    }
    if (std::all_of(reached.begin(), reached.end(), [](bool b) { return b; })) out.emplace_back(members);
  }
  std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) { return canonical_less(a, b); });
  return out;
}

} // namespace

TEST_CASE("cluster enumeration matches brute force on random graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = random_instance(11, 3, {-0.3, 0.3}, {0, 0}, seed);
    for (int k = 1; k <= 3; ++k) {
      for (int r : {0, 1, 2}) {
        CHECK(enumerate_connected_clusters(m, k, r) == brute_clusters(m, k, r));
      }
    }
  }
}

TEST_CASE("distances, balls and diameters agree with Floyd-Warshall") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = random_instance(13, 3, {-0.3, 0.3}, {0, 0}, seed);
    const auto d = oracle::distances(m);
    CHECK(max_component_diameter(m) == oracle::diameter(m));
    const Vertex a = static_cast<Vertex>(rng() % 13);
    const Vertex b = static_cast<Vertex>(rng() % 13);
    const auto from = distances_from(m, VertexSet{a, b});
    for (std::size_t v = 0; v < 13; ++v) {
      const int truth = std::min(d[static_cast<std::size_t>(a)][v], d[static_cast<std::size_t>(b)][v]);
      if (truth >= oracle::kUnreachable) CHECK_FALSE(from[v].has_value());
      else CHECK(from[v] == truth);
    }
    for (int r = 0; r <= 4; ++r) {
      const auto bl = ball(m, VertexSet{a, b}, r);
      for (std::size_t v = 0; v < 13; ++v) {
        const int truth = std::min(d[static_cast<std::size_t>(a)][v], d[static_cast<std::size_t>(b)][v]);
        CHECK(bl.contains(static_cast<Vertex>(v)) == (truth <= r));
      }
    }
    const auto comps = connected_components(m);
    std::size_t total = 0;
    for (const auto& c : comps) total += c.size();
    CHECK(total == 13);
  }
}
