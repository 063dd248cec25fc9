#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "infmax/model.hpp"

namespace infmax {

inline constexpr std::size_t kDefaultExactCap = 25;

// An Ising model restricted to a vertex subset, conditioned on a pinning of some of
// those vertices. Local vertex i corresponds to vertices().members()[i] of the base.
class PinnedModel {
public:
  // Throws ValidationError when the pinning mentions vertices outside `vertices`.
  PinnedModel(const IsingModel& base, const VertexSet& vertices, const PartialAssignment& pinning);
  // The whole model under `pinning`.
  PinnedModel(const IsingModel& base, const PartialAssignment& pinning);

  const IsingModel& local() const { return local_; }
  const VertexSet& vertices() const { return vertices_; }
  const PartialAssignment& pinning() const { return pinning_; }
  std::size_t free_count() const { return free_.size(); }
  // Local index of a base vertex; ValidationError if absent.
  Vertex local_index(Vertex base_vertex) const;
  // Local ids of the free vertices, ascending.
  std::span<const Vertex> free_vertices() const { return free_; }
  // Spin of each local vertex at the start of enumeration: pinned value or +1.
  std::span<const Spin> initial_spins() const { return initial_; }

private:
  IsingModel local_;
  VertexSet vertices_;
  PartialAssignment pinning_;
  std::vector<Vertex> free_;
  std::vector<Spin> initial_;
};

// Queries enumerate each connected block of free vertices separately (pinned neighbors
// act as fields), so `cap` bounds the largest block rather than the total free count and
// CapacityError is raised when a block exceeds it. log Z is the sum of block values, and
// negating every field and pinned spin negates every expectation exactly.

// log Z over completions consistent with the pinning.
double log_partition(const PinnedModel& pm, std::size_t cap = kDefaultExactCap);

// E[X_v] under the conditional measure (v a base vertex). Pinned v returns its spin.
double expectation(const PinnedModel& pm, Vertex v, std::size_t cap = kDefaultExactCap);

// Pr(X_v = +1) = (1 + E[X_v]) / 2.
double marginal_plus(const PinnedModel& pm, Vertex v, std::size_t cap = kDefaultExactCap);

// E[sum_v a_v X_v] with `weights` indexed by local vertex.
double weighted_expectation(const PinnedModel& pm, std::span<const double> weights,
                            std::size_t cap = kDefaultExactCap);

// E[X_v] for every local vertex, in local order, from one enumeration.
std::vector<double> all_expectations(const PinnedModel& pm, std::size_t cap = kDefaultExactCap);

// exp(energy) of a full configuration (spins indexed by local vertex), as a log weight.
double log_weight(const IsingModel& model, std::span<const Spin> spins);

} // namespace infmax
