#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "infmax/model.hpp"

namespace infmax {

// Radius value meaning "unbounded": the ball is the union of the components touching S.
inline constexpr int kInfiniteRadius = -1;

// B(S, r): every vertex within graph distance r of S, by multi-source BFS.
// r == kInfiniteRadius returns the union of the connected components meeting S.
VertexSet ball(const IsingModel& model, const VertexSet& s, int r);

// Connected components of the whole graph, ordered by smallest member.
std::vector<VertexSet> connected_components(const IsingModel& model);

// BFS distances from S, truncated at `limit` (unreached vertices get nullopt).
std::vector<std::optional<int>> distances_from(const IsingModel& model, const VertexSet& s,
                                               std::optional<int> limit = std::nullopt);

// Largest finite pairwise distance inside any connected component.
int max_component_diameter(const IsingModel& model);

// dist_G(T1, T2) <= 2r + 1. The sets must be disjoint and nonempty.
bool power_adjacent(const IsingModel& model, const VertexSet& t1, const VertexSet& t2, int r);

// cc(G^{<=2r+1}[S]): parts ordered by smallest member.
std::vector<VertexSet> components_in_power_graph(const IsingModel& model, const VertexSet& s,
                                                 int r);

// Every nonempty T with |T| <= k whose induced subgraph in G^{<=2r+1} is connected,
// exactly once, in canonical order (by size, then lexicographic).
std::vector<VertexSet> enumerate_connected_clusters(const IsingModel& model, int k, int r);

} // namespace infmax
