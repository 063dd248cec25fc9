#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "infmax/model.hpp"

namespace infmax {

// Single-site heat-bath chain. Pinned coordinates are frozen.
struct ChainState {
  std::vector<Spin> spins;
  PartialAssignment pinned;
  std::vector<Vertex> free; // unpinned vertices, ascending
  std::mt19937_64 rng;
  std::uint64_t steps_taken = 0;

  // Free spins start uniformly at random, pinned spins at their pinned values.
  static ChainState start(const IsingModel& model, const PartialAssignment& pinned,
                          std::uint64_t seed);
};

// Pr(X_v = +1 | neighbors) = sigmoid(2 (h_v + sum_u beta_uv X_u)).
double heat_bath_plus_probability(const IsingModel& model, const std::vector<Spin>& spins, Vertex v);

// One update at a uniformly random free vertex. No-op when every vertex is pinned.
void glauber_step(ChainState& state, const IsingModel& model);

struct EstimateOptions {
  std::optional<std::uint64_t> burn_in; // default 100 n log n
  std::uint64_t samples = 10000;
  std::optional<std::uint64_t> thin;    // default n
  std::size_t batches = 20;
  std::uint64_t seed = 0;
};

struct InfluenceEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::vector<std::string> warnings;
};

// Mean of sum_v a_v X_v and its batch-means standard error along one chain.
struct ChainAverage {
  double mean = 0.0;
  double std_error = 0.0;
};

ChainAverage run_chain(const IsingModel& model, const std::vector<double>& weights,
                       const PartialAssignment& pinned, const EstimateOptions& opts,
                       std::uint64_t seed);

// Phi(S, sigma_S) as the difference of a pinned and an unpinned chain average, both run on
// the components meeting S. `params`, when given, adds a warning for models outside the
// high-temperature family.
InfluenceEstimate estimate_influence(const IsingModel& model, const WeightVector& weights,
                                     const PartialAssignment& pinning, const EstimateOptions& opts,
                                     const std::optional<FamilyParams>& params = std::nullopt);

} // namespace infmax
