#include "infmax/solver.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "infmax/errors.hpp"
#include "infmax/exact.hpp"
#include "infmax/graph.hpp"
#include "infmax/influence.hpp"
#include "parallel.hpp"

namespace infmax {

std::size_t ClusterGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& list : adjacency) d = std::max(d, list.size());
  return d;
}

std::size_t ClusterGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& list : adjacency) m += list.size();
  return m / 2;
}

bool ClusterGraph::adjacent(std::size_t i, std::size_t j) const {
  const auto& list = adjacency[i];
  return std::binary_search(list.begin(), list.end(), j);
}

namespace {

int checked_ceil(double x) {
  const double c = std::ceil(x);
  if (!(c < static_cast<double>(INT_MAX / 4)))
    throw DomainError("radius formula overflows: " + std::to_string(x));
  return static_cast<int>(c);
}

} // namespace

RadiusSchedule radius_schedule(const SolverConfig& cfg, const FamilyParams& params) {
  const double delta = params.delta;
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (params.delta_max < 3) throw DomainError("max degree must be at least 3");
  if (cfg.k < 1 || !(cfg.epsilon > 0.0) || !(cfg.decay_constant > 0.0))
    throw DomainError("radius formulas need k >= 1, epsilon > 0 and C > 0");
  const double c = cfg.decay_constant;
  const double eps = cfg.epsilon;
  RadiusSchedule s;
  s.rho = std::max(1, checked_ceil(std::log(6.0 * c * cfg.k / eps) / delta));
  const double tail = (std::log(24.0 * c / eps) + s.rho * std::log(params.delta_max)) / delta;
  s.r = s.rho + std::max(0, checked_ceil(tail));
  return s;
}

int select_radius(const SolverConfig& cfg, const FamilyParams& params) {
  if (cfg.radius_override) return *cfg.radius_override;
  return radius_schedule(cfg, params).r;
}

namespace {

// Assignment number `index` of T in canonical order: vertex j (ascending id) is -1 when
// bit (|T|-1-j) of index is set, so all-plus comes first and +1 precedes -1 per vertex.
PartialAssignment nth_assignment(const VertexSet& t, std::uint32_t index) {
  std::vector<PartialAssignment::Entry> entries;
  entries.reserve(t.size());
  const auto m = t.size();
  for (std::size_t j = 0; j < m; ++j) {
    const bool minus = (index >> (m - 1 - j)) & 1u;
    entries.emplace_back(t.members()[j], minus ? Spin::minus : Spin::plus);
  }
  return PartialAssignment(std::move(entries));
}

std::string describe(const VertexSet& t) {
  std::string s = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t.members()[i]);
  }
  return s + "}";
}

Cluster score_cluster(const IsingModel& model, const WeightVector& weights, const VertexSet& t,
                      int r, std::size_t cap) {
  std::optional<InfluenceEvaluator> eval;
  try {
    eval.emplace(model, weights, t, r, cap);
  } catch (const CapacityError&) {
    const auto region = ball(model, t, r);
    throw CapacityError("cluster " + describe(t) + ": |B(T," + std::to_string(r) + ")| = " +
                        std::to_string(region.size()) + " exceeds exact capacity " +
                        std::to_string(cap));
  }
  Cluster c;
  c.vertices = t;
  c.cost = static_cast<int>(t.size());
  const auto count = std::uint32_t{1} << t.size();
  for (std::uint32_t i = 0; i < count; ++i) {
    auto sigma = nth_assignment(t, i);
    const double psi = (*eval)(sigma);
    if (i == 0 || psi > c.weight) {
      c.weight = psi;
      c.best_assignment = std::move(sigma);
    }
  }
  return c;
}

std::vector<std::vector<std::size_t>> cluster_adjacency(const IsingModel& model,
                                                        const std::vector<VertexSet>& clusters,
                                                        int r) {
  std::vector<std::vector<std::size_t>> containing(model.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (Vertex v : clusters[i]) containing[static_cast<std::size_t>(v)].push_back(i);
  }
  std::vector<std::vector<std::size_t>> adjacency(clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    std::vector<std::size_t> nbrs;
    for (Vertex v : ball(model, clusters[i], 2 * r + 1)) {
      for (std::size_t j : containing[static_cast<std::size_t>(v)]) {
        if (j != i) nbrs.push_back(j);
      }
    }
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    adjacency[i] = std::move(nbrs);
  }
  return adjacency;
}

// Largest connected component of G[B(T, r)] over all clusters T.
std::size_t largest_region(const IsingModel& model, int k, int r) {
  std::size_t largest = 0;
  for (const auto& t : enumerate_connected_clusters(model, k, r)) {
    const auto region = ball(model, t, r);
    if (region.size() <= largest) continue;
    for (const auto& c : connected_components(model.induced(region)))
      largest = std::max(largest, c.size());
  }
  return largest;
}

} // namespace

ClusterGraph build_cluster_graph(const IsingModel& model, const WeightVector& weights,
                                 const SolverConfig& cfg, int r) {
  if (r < 0) throw DomainError("radius must be nonnegative");
  if (weights.size() != model.size())
    throw ValidationError("weight vector does not match the model size");
  const auto sets = enumerate_connected_clusters(model, cfg.k, r);
  ClusterGraph h;
  h.radius = r;
  h.clusters.resize(sets.size());
  detail::parallel_for(sets.size(), cfg.threads, [&](std::size_t i) {
    h.clusters[i] = score_cluster(model, weights, sets[i], r, cfg.exact_ball_cap);
  });
  h.adjacency = cluster_adjacency(model, sets, r);
  return h;
}

std::vector<std::size_t> mwis_candidates(const ClusterGraph& h, int k) {
  if (k < 1) throw DomainError("budget k must be at least 1");
  const std::size_t keep = static_cast<std::size_t>(k) * (h.max_degree() + 1);
  std::vector<std::size_t> chosen;
  for (int cost = 1; cost <= k; ++cost) {
    std::vector<std::size_t> cls;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h.clusters[i].cost == cost) cls.push_back(i);
    }
    std::stable_sort(cls.begin(), cls.end(), [&](std::size_t a, std::size_t b) {
      return h.clusters[a].weight > h.clusters[b].weight;
    });
    if (cls.size() > keep) cls.resize(keep);
    chosen.insert(chosen.end(), cls.begin(), cls.end());
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

class SubsetSearch {
public:
  SubsetSearch(const ClusterGraph& h, const std::vector<std::size_t>& candidates, int k)
      : h_(h), candidates_(candidates), k_(k) {}

  std::vector<std::size_t> run() {
    descend(0, 0, 0.0);
    return best_;
  }

private:
  void descend(std::size_t from, int cost, double weight) {
    if (weight > best_weight_) {
      best_weight_ = weight;
      best_ = current_;
    }
    for (std::size_t p = from; p < candidates_.size(); ++p) {
      const std::size_t i = candidates_[p];
      const auto& c = h_.clusters[i];
      if (c.cost < 1) throw DomainError("cluster costs must be positive");
      if (cost + c.cost > k_) continue;
      const bool blocked = std::any_of(current_.begin(), current_.end(),
                                       [&](std::size_t j) { return h_.adjacent(i, j); });
      if (blocked) continue;
      current_.push_back(i);
      descend(p + 1, cost + c.cost, weight + c.weight);
      current_.pop_back();
    }
  }

  const ClusterGraph& h_;
  const std::vector<std::size_t>& candidates_;
  int k_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  double best_weight_ = 0.0; // the empty set is always feasible
};

} // namespace

std::vector<std::size_t> budgeted_mwis(const ClusterGraph& h, int k) {
  const auto candidates = mwis_candidates(h, k);
  return SubsetSearch(h, candidates, k).run();
}

Solution solve_infmax(const IsingModel& model, const WeightVector& weights, const SolverConfig& cfg,
                      const FamilyParams& params) {
  const auto started = std::chrono::steady_clock::now();
  cfg.check();
  if (weights.size() != model.size())
    throw ValidationError("weight vector does not match the model size");

  Solution sol;
  auto& diag = sol.diagnostics;
  if (auto fam = validate_family(model, params); !fam) {
    if (!cfg.best_effort) throw ValidationError("model outside the family: " + fam.diagnostic);
    diag.warnings.push_back("model outside the family (" + fam.diagnostic + "); guarantee void");
    diag.heuristic = true;
  }
  if (!weights.one_bounded())
    diag.warnings.push_back("weights are not 1-bounded; the additive guarantee assumes |a_v| <= 1");

  const int r = select_radius(cfg, params);
  diag.radius_formula = r;
  // Balls and power-graph adjacency saturate once r reaches the number of vertices.
  int r_eff = std::min<long long>(r, static_cast<long long>(model.size()));

  std::size_t largest = largest_region(model, cfg.k, r_eff);
  if (largest > cfg.exact_ball_cap) {
    if (!cfg.best_effort) {
      build_cluster_graph(model, weights, cfg, r_eff); // throws with the offending cluster
    }
    int lo = 0;
    int hi = r_eff; // infeasible
    if (largest_region(model, cfg.k, 0) > cfg.exact_ball_cap)
      throw CapacityError("no radius keeps cluster regions within exact capacity");
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (largest_region(model, cfg.k, mid) <= cfg.exact_ball_cap) lo = mid; else hi = mid;
    }
    diag.warnings.push_back("radius " + std::to_string(r) + " exceeds exact capacity; using r=" +
                            std::to_string(lo) + " (best effort, guarantee void)");
    diag.heuristic = true;
    r_eff = lo;
    largest = largest_region(model, cfg.k, r_eff);
  }
  diag.largest_region = largest;
  diag.radius_effective = r_eff;

  const auto h = build_cluster_graph(model, weights, cfg, r_eff);
  diag.cluster_count = h.size();
  diag.cluster_graph_edges = h.edge_count();
  diag.cluster_graph_max_degree = h.max_degree();
  diag.pruned_candidates = mwis_candidates(h, cfg.k).size();

  const auto chosen = budgeted_mwis(h, cfg.k);
  VertexSet s;
  PartialAssignment sigma;
  for (std::size_t i : chosen) {
    s = s.unite(h.clusters[i].vertices);
    sigma = sigma.merged(h.clusters[i].best_assignment);
  }
  sol.vertices = s;
  sol.assignment = sigma;
  sol.radius_used = r;

  const InfluenceEvaluator local(model, weights, s, r_eff, cfg.exact_ball_cap);
  sol.local_value = local(sigma);
  try {
    const InfluenceEvaluator global(model, weights, s, kInfiniteRadius, cfg.exact_ball_cap);
    sol.global_value = global(sigma);
  } catch (const CapacityError&) {
    diag.warnings.push_back("global value not computed: component exceeds exact capacity");
  }
  diag.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

Solution brute_force_infmax(const IsingModel& model, const WeightVector& weights, int k,
                            bool restrict_exact, std::size_t cap) {
  const auto started = std::chrono::steady_clock::now();
  if (k < 1) throw DomainError("budget k must be at least 1");
  if (weights.size() != model.size())
    throw ValidationError("weight vector does not match the model size");
  if (restrict_exact && model.size() > kOracleMaxVertices)
    throw ValidationError("oracle refuses n=" + std::to_string(model.size()) + " > " +
                          std::to_string(kOracleMaxVertices));

  // Phi(S, sigma) = sum over components c meeting S of E_c[a.X | sigma] - E_c[a.X].
  const auto components = connected_components(model);
  std::vector<std::size_t> component_of(model.size());
  std::vector<double> baseline(components.size());
  std::vector<std::vector<double>> component_weights(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (Vertex v : components[c]) component_of[static_cast<std::size_t>(v)] = c;
    const auto w = weights.restricted(components[c]);
    component_weights[c].assign(w.values().begin(), w.values().end());
    baseline[c] = weighted_expectation(PinnedModel(model, components[c], {}), component_weights[c], cap);
  }
  auto influence = [&](const PartialAssignment& sigma) {
    std::vector<std::size_t> touched;
    for (const auto& [v, s] : sigma) touched.push_back(component_of[static_cast<std::size_t>(v)]);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    double total = 0.0;
    for (std::size_t c : touched) {
      const PinnedModel pm(model, components[c], sigma.restricted(components[c]));
      total += weighted_expectation(pm, component_weights[c], cap) - baseline[c];
    }
    return total;
  };

  Solution best;
  best.radius_used = kInfiniteRadius;
  double best_value = 0.0;
  const auto n = static_cast<Vertex>(model.size());
  const int max_size = std::min<int>(k, static_cast<int>(n));
  std::vector<Vertex> subset;
  for (int size = 1; size <= max_size; ++size) {
    subset.resize(static_cast<std::size_t>(size));
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      const VertexSet s(subset);
      for (std::uint32_t i = 0; i < (std::uint32_t{1} << size); ++i) {
        std::vector<PartialAssignment::Entry> entries;
        for (int j = 0; j < size; ++j) {
          const bool minus = (i >> (size - 1 - j)) & 1u;
          entries.emplace_back(subset[static_cast<std::size_t>(j)], minus ? Spin::minus : Spin::plus);
        }
        PartialAssignment sigma(std::move(entries));
        const double value = influence(sigma);
        if (value > best_value) {
          best_value = value;
          best.vertices = s;
          best.assignment = std::move(sigma);
        }
      }
      // next combination in lexicographic order
      int j = size - 1;
      while (j >= 0 && subset[static_cast<std::size_t>(j)] == n - size + j) --j;
      if (j < 0) break;
      ++subset[static_cast<std::size_t>(j)];
      for (int t = j + 1; t < size; ++t)
        subset[static_cast<std::size_t>(t)] = subset[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  best.local_value = best_value;
  best.global_value = best_value;
  best.diagnostics.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return best;
}

double calibrate_decay_constant(const IsingModel& model, const FamilyParams& params,
                                std::size_t samples, std::uint64_t seed, std::size_t cap) {
  if (!(params.delta > 0.0 && params.delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  std::vector<Vertex> sources(model.size());
  std::iota(sources.begin(), sources.end(), 0);
  if (samples < sources.size()) {
    std::mt19937_64 rng(seed);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(samples);
    std::sort(sources.begin(), sources.end());
  }
  const double rate = 1.0 - params.delta;
  double c = 0.0;
  for (Vertex u : sources) {
    const auto tail = total_influence_profile(model, u, cap);
    for (std::size_t L = 1; L < tail.size(); ++L)
      c = std::max(c, tail[L] / std::pow(rate, static_cast<double>(L)));
  }
  return c;
}

} // namespace infmax
