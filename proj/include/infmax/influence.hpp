#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "infmax/exact.hpp"
#include "infmax/graph.hpp"
#include "infmax/model.hpp"

namespace infmax {

// (S, sigma_S) against a weighted magnetization; S is the support of `pinning`.
// Without a radius the query is global, otherwise it is local to B(S, radius).
struct InfluenceQuery {
  const IsingModel& model;
  const WeightVector& weights;
  PartialAssignment pinning;
  std::optional<int> radius;
};

// Exact influence evaluator for a fixed support S over the region B(S, radius)
// (radius == kInfiniteRadius: the components meeting S). The unconditional
// expectations of the region are computed once and reused for every pinning of S.
class InfluenceEvaluator {
public:
  InfluenceEvaluator(const IsingModel& model, const WeightVector& weights, const VertexSet& support,
                     int radius, std::size_t cap = kDefaultExactCap);

  // Pinning support must equal the evaluator's support.
  double operator()(const PartialAssignment& pinning) const;

  const VertexSet& support() const { return support_; }
  const VertexSet& region() const { return region_; }
  std::size_t largest_component() const;

private:
  struct Part {
    VertexSet vertices; // ids local to the region submodel
    std::vector<double> weights;
    double baseline = 0.0;
  };

  VertexSet support_;
  VertexSet region_;
  IsingModel submodel_;
  std::vector<Part> parts_;
  std::size_t cap_;
};

// Phi(S, sigma_S) = E[a.X | X_S = sigma_S] - E[a.X], restricted to components meeting S.
double global_influence(const InfluenceQuery& q, std::size_t cap = kDefaultExactCap);

// Phi^{(r)}(S, sigma_S): the same functional on the induced submodel G[B(S, r)].
double local_influence(const InfluenceQuery& q, std::size_t cap = kDefaultExactCap);

struct LocalTerm {
  VertexSet part;
  double value = 0.0;
};

// Splits S into the components of G^{<=2r+1}[S]; the terms sum to local_influence(q).
std::vector<LocalTerm> decompose_local(const InfluenceQuery& q, std::size_t cap = kDefaultExactCap);

// |Phi - Phi^{(r)}| for r = 0..r_max.
std::vector<double> influence_decay_profile(const IsingModel& model, const WeightVector& weights,
                                            const PartialAssignment& pinning, int r_max,
                                            std::size_t cap = kDefaultExactCap);

// Entry L: sum over v with dist(u, v) >= L of
// |Pr(X_v=+ | X_u=+) - Pr(X_v=+ | X_u=-)|, for L = 0..ecc(u)+1 (the last entry is 0).
std::vector<double> total_influence_profile(const IsingModel& model, Vertex u,
                                            std::size_t cap = kDefaultExactCap);

// Least-squares fit of log(values[i]) = log(prefactor) + i log(ratio) over the entries
// above `floor`. With fewer than two such entries the ratio is reported as 0.
struct GeometricFit {
  double ratio = 0.0;
  double prefactor = 0.0;
  std::size_t points = 0;
};

GeometricFit fit_geometric(std::span<const double> values, double floor = 1e-13);

} // namespace infmax
