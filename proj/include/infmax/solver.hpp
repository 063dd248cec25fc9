#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infmax/model.hpp"

namespace infmax {

// Candidate cluster T with cost |T|, weight max_sigma psi_T(sigma) and its maximizer.
struct Cluster {
  VertexSet vertices;
  int cost = 0;
  double weight = 0.0;
  PartialAssignment best_assignment;
};

// Graph H over clusters; two clusters are adjacent when dist_G(T1, T2) <= 2r + 1.
struct ClusterGraph {
  std::vector<Cluster> clusters;
  std::vector<std::vector<std::size_t>> adjacency; // sorted neighbor indices
  int radius = 0;

  std::size_t size() const { return clusters.size(); }
  std::size_t max_degree() const;
  std::size_t edge_count() const;
  bool adjacent(std::size_t i, std::size_t j) const;
};

struct SolveDiagnostics {
  std::size_t cluster_count = 0;
  std::size_t cluster_graph_edges = 0;
  std::size_t cluster_graph_max_degree = 0;
  std::size_t pruned_candidates = 0;
  std::size_t largest_region = 0; // largest component enumerated exactly
  int radius_formula = 0;         // r from the radius formulas, or the override
  int radius_effective = 0;       // radius actually used for clusters and balls
  bool heuristic = false;         // guarantee void: best-effort radius or family violation
  std::vector<std::string> warnings;
  double wall_time = 0.0;
};

struct Solution {
  VertexSet vertices;
  PartialAssignment assignment;
  double local_value = 0.0;
  std::optional<double> global_value;
  int radius_used = 0;
  SolveDiagnostics diagnostics;
};

struct RadiusSchedule {
  int rho = 0;
  int r = 0;
};

// rho = ceil((1/delta) log(6Ck/eps)), r = rho + ceil((1/delta)(log(24C/eps) + rho log Delta)),
// natural logarithms. rho is clamped to >= 1 and the second ceiling to >= 0.
RadiusSchedule radius_schedule(const SolverConfig& cfg, const FamilyParams& params);

// The override when present, otherwise radius_schedule(...).r.
int select_radius(const SolverConfig& cfg, const FamilyParams& params);

// Steps 1-2: enumerate clusters of size <= k connected in G^{<=2r+1}, score every
// assignment of each by its exact local influence and keep the (signed) best.
ClusterGraph build_cluster_graph(const IsingModel& model, const WeightVector& weights,
                                 const SolverConfig& cfg, int r);

// Step 3: maximum-weight independent set of H with total cost <= k, searched over the
// per-cost top-k(D+1) candidates. Returns cluster indices in ascending order.
std::vector<std::size_t> budgeted_mwis(const ClusterGraph& h, int k);

// The candidate set U searched by budgeted_mwis (ascending indices).
std::vector<std::size_t> mwis_candidates(const ClusterGraph& h, int k);

// Full localized algorithm (Steps 1-4) with the radius from select_radius.
Solution solve_infmax(const IsingModel& model, const WeightVector& weights, const SolverConfig& cfg,
                      const FamilyParams& params);

// Exhaustive maximization of the global influence over |S| <= k and all sigma_S.
// With `restrict_exact` the oracle refuses models with more than kOracleMaxVertices
// vertices.
inline constexpr std::size_t kOracleMaxVertices = 16;
Solution brute_force_infmax(const IsingModel& model, const WeightVector& weights, int k,
                            bool restrict_exact = true, std::size_t cap = 25);

// Smallest C' with sum_{dist(u,v) >= L} |Pr(X_v=+|X_u=+) - Pr(X_v=+|X_u=-)| <= C' (1-delta)^L
// over L >= 1 and `samples` sampled vertices u (all vertices when samples >= n).
double calibrate_decay_constant(const IsingModel& model, const FamilyParams& params,
                                std::size_t samples, std::uint64_t seed = 0,
                                std::size_t cap = 25);

} // namespace infmax
