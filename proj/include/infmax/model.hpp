#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace infmax {

using Vertex = std::int32_t;

enum class Spin : std::int8_t { minus = -1, plus = 1 };

constexpr int value(Spin s) { return static_cast<int>(s); }
constexpr Spin flip(Spin s) { return s == Spin::plus ? Spin::minus : Spin::plus; }
constexpr char symbol(Spin s) { return s == Spin::plus ? '+' : '-'; }

// Sorted, duplicate-free list of vertex ids.
class VertexSet {
public:
  VertexSet() = default;
  // Sorts and removes duplicates.
  VertexSet(std::vector<Vertex> members);
  VertexSet(std::initializer_list<Vertex> members);

  std::span<const Vertex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;
  Vertex front() const { return members_.front(); }

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  VertexSet unite(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  // Canonical order: by size, then lexicographically.
  friend bool canonical_less(const VertexSet& a, const VertexSet& b);

private:
  std::vector<Vertex> members_;
};

struct Edge {
  Vertex u = 0; // u < v
  Vertex v = 0;
  double beta = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex = 0;
  double beta = 0.0;
};

// Graph with per-edge couplings and per-vertex external fields. Immutable once built;
// construction validates symmetry, absence of self-loops and of parallel edges.
class IsingModel {
public:
  IsingModel() = default;
  IsingModel(std::vector<double> fields, std::vector<Edge> edges);

  std::size_t size() const { return fields_.size(); }
  double field(Vertex v) const { return fields_[static_cast<std::size_t>(v)]; }
  std::span<const double> fields() const { return fields_; }
  // Edges in canonical (min, max) form, sorted lexicographically.
  std::span<const Edge> edges() const { return edges_; }
  // Neighbors sorted by id.
  std::span<const Neighbor> neighbors(Vertex v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t max_degree() const;
  std::optional<double> coupling(Vertex u, Vertex v) const;
  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < size(); }

  // Induced submodel on `subset`; vertex i of the result is subset.members()[i].
  IsingModel induced(const VertexSet& subset) const;

  friend bool operator==(const IsingModel& a, const IsingModel& b) {
    return a.fields_ == b.fields_ && a.edges_ == b.edges_;
  }

private:
  std::vector<double> fields_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

class WeightVector {
public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> a) : a_(std::move(a)) {}
  static WeightVector constant(std::size_t n, double value) {
    return WeightVector(std::vector<double>(n, value));
  }

  std::size_t size() const { return a_.size(); }
  double operator[](Vertex v) const { return a_[static_cast<std::size_t>(v)]; }
  std::span<const double> values() const { return a_; }
  bool one_bounded() const;
  bool all_zero() const;
  WeightVector scaled(double t) const;
  WeightVector restricted(const VertexSet& subset) const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

private:
  std::vector<double> a_;
};

// A pinning sigma_S: distinct vertices mapped to spins, kept sorted by vertex.
class PartialAssignment {
public:
  using Entry = std::pair<Vertex, Spin>;

  PartialAssignment() = default;
  // Throws ValidationError on repeated vertices.
  PartialAssignment(std::vector<Entry> entries);
  PartialAssignment(std::initializer_list<Entry> entries);
  static PartialAssignment uniform(const VertexSet& s, Spin spin);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  VertexSet support() const;
  std::optional<Spin> at(Vertex v) const;
  PartialAssignment restricted(const VertexSet& subset) const;
  PartialAssignment merged(const PartialAssignment& other) const;
  PartialAssignment negated() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

private:
  std::vector<Entry> entries_;
};

// Bounded-degree, bounded-interaction family: max degree <= delta_max and
// (delta_max - 1) tanh|beta_uv| <= gamma on every edge. `delta` is the slack of the
// high-temperature regime, where gamma = 1 - delta.
struct FamilyParams {
  int delta_max = 3;
  double gamma = 0.76;
  double delta = 0.24;

  static FamilyParams high_temperature(int delta_max, double delta);
  void check() const;
};

struct SolverConfig {
  int k = 1;
  double epsilon = 0.1;
  double decay_constant = 1.0;
  std::optional<int> radius_override;
  std::size_t exact_ball_cap = 25;
  // Proceed with the largest feasible radius when the formula radius exceeds capacity.
  bool best_effort = false;
  int max_k = 6;
  // 0 means one worker per hardware thread.
  unsigned threads = 1;

  void check() const;
};

struct FamilyCheck {
  bool ok = true;
  std::string diagnostic;
  std::optional<Vertex> vertex;
  std::optional<Edge> edge;

  explicit operator bool() const { return ok; }
};

FamilyCheck validate_family(const IsingModel& model, const FamilyParams& params);

// arctanh(1 / (delta_max - 1)): the tree-uniqueness threshold.
double critical_coupling(int delta_max);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Random graph with maximum degree <= delta_max; couplings and fields uniform in the
// given ranges. Deterministic in `seed`.
IsingModel random_instance(std::size_t n, int delta_max, Range beta_range, Range h_range,
                           std::uint64_t seed);

WeightVector random_weights(std::size_t n, Range a_range, std::uint64_t seed);

} // namespace infmax
