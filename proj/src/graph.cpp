#include "infmax/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "infmax/errors.hpp"

namespace infmax {

namespace {

void require_members(const IsingModel& model, const VertexSet& s) {
  for (Vertex v : s) {
    if (!model.contains(v)) throw ValidationError("unknown vertex " + std::to_string(v));
  }
}

int power_reach(int r) {
  if (r < 0) throw DomainError("radius must be nonnegative");
  return 2 * r + 1;
}

// Truncated multi-source BFS with a reusable visit stamp, so repeated searches cost
// only the size of the explored region.
class Bfs {
public:
  explicit Bfs(const IsingModel& model)
      : model_(model), stamp_(model.size(), 0), depth_(model.size(), 0) {}

  // Visits vertices within `limit` hops of the sources (no limit when negative),
  // calling visit(vertex, depth). Stops early when visit returns false.
  template <class Sources, class Visit>
  void run(const Sources& sources, int limit, Visit&& visit) {
    ++generation_;
    queue_.clear();
    for (Vertex v : sources) {
      auto i = static_cast<std::size_t>(v);
      if (stamp_[i] == generation_) continue;
      stamp_[i] = generation_;
      depth_[i] = 0;
      queue_.push_back(v);
    }
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      Vertex u = queue_[head];
      int d = depth_[static_cast<std::size_t>(u)];
      if (!visit(u, d)) return;
      if (limit >= 0 && d >= limit) continue;
      for (const auto& nb : model_.neighbors(u)) {
        auto j = static_cast<std::size_t>(nb.vertex);
        if (stamp_[j] == generation_) continue;
        stamp_[j] = generation_;
        depth_[j] = d + 1;
        queue_.push_back(nb.vertex);
      }
    }
  }

private:
  const IsingModel& model_;
  std::vector<unsigned> stamp_;
  std::vector<int> depth_;
  std::vector<Vertex> queue_;
  unsigned generation_ = 0;
};

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

} // namespace

VertexSet ball(const IsingModel& model, const VertexSet& s, int r) {
  require_members(model, s);
  if (r < 0 && r != kInfiniteRadius) throw DomainError("radius must be nonnegative");
  std::vector<Vertex> out;
  Bfs bfs(model);
  bfs.run(s, r, [&](Vertex v, int) {
    out.push_back(v);
    return true;
  });
  return VertexSet(std::move(out));
}

std::vector<VertexSet> connected_components(const IsingModel& model) {
  std::vector<VertexSet> parts;
  std::vector<bool> seen(model.size(), false);
  Bfs bfs(model);
  for (std::size_t v = 0; v < model.size(); ++v) {
    if (seen[v]) continue;
    std::vector<Vertex> part;
    bfs.run(std::vector<Vertex>{static_cast<Vertex>(v)}, -1, [&](Vertex u, int) {
      seen[static_cast<std::size_t>(u)] = true;
      part.push_back(u);
      return true;
    });
    parts.emplace_back(std::move(part));
  }
  return parts;
}

std::vector<std::optional<int>> distances_from(const IsingModel& model, const VertexSet& s,
                                               std::optional<int> limit) {
  require_members(model, s);
  std::vector<std::optional<int>> dist(model.size());
  Bfs bfs(model);
  bfs.run(s, limit.value_or(-1), [&](Vertex v, int d) {
    dist[static_cast<std::size_t>(v)] = d;
    return true;
  });
  return dist;
}

int max_component_diameter(const IsingModel& model) {
  int diameter = 0;
  Bfs bfs(model);
  for (std::size_t v = 0; v < model.size(); ++v) {
    bfs.run(std::vector<Vertex>{static_cast<Vertex>(v)}, -1, [&](Vertex, int d) {
      diameter = std::max(diameter, d);
      return true;
    });
  }
  return diameter;
}

bool power_adjacent(const IsingModel& model, const VertexSet& t1, const VertexSet& t2, int r) {
  require_members(model, t1);
  require_members(model, t2);
  if (t1.empty() || t2.empty()) throw ValidationError("power_adjacent needs nonempty sets");
  if (t1.intersects(t2)) throw ValidationError("power_adjacent needs disjoint sets");
  const int reach = power_reach(r);
  const auto& from = t1.size() <= t2.size() ? t1 : t2;
  const auto& to = t1.size() <= t2.size() ? t2 : t1;
  bool hit = false;
  Bfs bfs(model);
  bfs.run(from, reach, [&](Vertex v, int) {
    hit = to.contains(v);
    return !hit;
  });
  return hit;
}

std::vector<VertexSet> components_in_power_graph(const IsingModel& model, const VertexSet& s,
                                                 int r) {
  require_members(model, s);
  const int reach = power_reach(r);
  const auto members = s.members();
  DisjointSets sets(members.size());
  Bfs bfs(model);
  for (std::size_t i = 0; i < members.size(); ++i) {
    bfs.run(std::vector<Vertex>{members[i]}, reach, [&](Vertex v, int) {
      auto it = std::lower_bound(members.begin(), members.end(), v);
      if (it != members.end() && *it == v)
        sets.unite(i, static_cast<std::size_t>(it - members.begin()));
      return true;
    });
  }
  std::vector<std::vector<Vertex>> grouped(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) grouped[sets.find(i)].push_back(members[i]);
  std::vector<VertexSet> parts;
  for (auto& g : grouped) {
    if (!g.empty()) parts.emplace_back(std::move(g));
  }
  return parts;
}

namespace {

// Connected-subset enumeration in G^{<=reach} by canonical extension: each subset is
// grown from its smallest member (the anchor) and only by vertices larger than the
// anchor that are not already adjacent to the current subset, so each connected subset
// is produced exactly once.
class ClusterEnumerator {
public:
  ClusterEnumerator(const IsingModel& model, int k, int reach)
      : model_(model), k_(k), reach_(reach), bfs_(model), covered_(model.size(), 0) {}

  std::vector<VertexSet> run() {
    for (std::size_t v = 0; v < model_.size(); ++v) {
      anchor_ = static_cast<Vertex>(v);
      auto nbhd = power_neighbors(anchor_);
      std::vector<Vertex> ext;
      for (Vertex u : nbhd) {
        if (u > anchor_) ext.push_back(u);
      }
      push(anchor_, nbhd);
      extend(std::move(ext));
      pop(anchor_, nbhd);
    }
    std::sort(out_.begin(), out_.end(),
              [](const VertexSet& a, const VertexSet& b) { return canonical_less(a, b); });
    return std::move(out_);
  }

private:
  std::vector<Vertex> power_neighbors(Vertex w) {
    std::vector<Vertex> out;
    bfs_.run(std::vector<Vertex>{w}, reach_, [&](Vertex u, int) {
      if (u != w) out.push_back(u);
      return true;
    });
    return out;
  }

  void push(Vertex w, const std::vector<Vertex>& nbhd) {
    current_.push_back(w);
    ++covered_[static_cast<std::size_t>(w)];
    for (Vertex u : nbhd) ++covered_[static_cast<std::size_t>(u)];
  }

  void pop(Vertex w, const std::vector<Vertex>& nbhd) {
    current_.pop_back();
    --covered_[static_cast<std::size_t>(w)];
    for (Vertex u : nbhd) --covered_[static_cast<std::size_t>(u)];
  }

  void extend(std::vector<Vertex> ext) {
    out_.emplace_back(current_);
    if (static_cast<int>(current_.size()) == k_) return;
    while (!ext.empty()) {
      Vertex w = ext.back();
      ext.pop_back();
      auto nbhd = power_neighbors(w);
      std::vector<Vertex> next(ext);
      for (Vertex u : nbhd) {
        // exclusive neighborhood of w with respect to the current subset
        if (u > anchor_ && covered_[static_cast<std::size_t>(u)] == 0) next.push_back(u);
      }
      push(w, nbhd);
      extend(std::move(next));
      pop(w, nbhd);
    }
  }

  const IsingModel& model_;
  int k_;
  int reach_;
  Bfs bfs_;
  std::vector<int> covered_;
  std::vector<Vertex> current_;
  Vertex anchor_ = 0;
  std::vector<VertexSet> out_;
};

} // namespace

std::vector<VertexSet> enumerate_connected_clusters(const IsingModel& model, int k, int r) {
  if (k < 1) throw DomainError("cluster size bound k must be at least 1");
  return ClusterEnumerator(model, k, power_reach(r)).run();
}

} // namespace infmax
