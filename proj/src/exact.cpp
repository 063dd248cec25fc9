#include "infmax/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "infmax/errors.hpp"

namespace infmax {

PinnedModel::PinnedModel(const IsingModel& base, const VertexSet& vertices,
                         const PartialAssignment& pinning)
    : local_(base.induced(vertices)), vertices_(vertices), pinning_(pinning) {
  initial_.assign(vertices_.size(), Spin::plus);
  std::vector<bool> pinned(vertices_.size(), false);
  for (const auto& [v, s] : pinning_) {
    auto i = static_cast<std::size_t>(local_index(v));
    pinned[i] = true;
    initial_[i] = s;
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!pinned[i]) free_.push_back(static_cast<Vertex>(i));
  }
}

namespace {

VertexSet all_vertices(const IsingModel& model) {
  std::vector<Vertex> ids(model.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<Vertex>(i);
  return VertexSet(std::move(ids));
}

} // namespace

PinnedModel::PinnedModel(const IsingModel& base, const PartialAssignment& pinning)
    : PinnedModel(base, all_vertices(base), pinning) {}

Vertex PinnedModel::local_index(Vertex base_vertex) const {
  const auto members = vertices_.members();
  auto it = std::lower_bound(members.begin(), members.end(), base_vertex);
  if (it == members.end() || *it != base_vertex)
    throw ValidationError("vertex " + std::to_string(base_vertex) + " is not in the restricted set");
  return static_cast<Vertex>(it - members.begin());
}

double log_weight(const IsingModel& model, std::span<const Spin> spins) {
  double e = 0.0;
  for (const auto& edge : model.edges())
    e += edge.beta * value(spins[static_cast<std::size_t>(edge.u)]) *
         value(spins[static_cast<std::size_t>(edge.v)]);
  for (std::size_t v = 0; v < model.size(); ++v) e += model.field(static_cast<Vertex>(v)) * value(spins[v]);
  return e;
}

namespace {

// Accumulates the unnormalized mean of one linear functional sum_v c_v X_v; its value
// is updated in O(1) per spin flip.
class LinearObserver {
public:
  explicit LinearObserver(std::span<const double> coeffs) : coeffs_(coeffs) {}
  void init(std::span<const Spin> spins) {
    current_ = 0.0;
    for (std::size_t v = 0; v < spins.size(); ++v) current_ += coeffs_[v] * value(spins[v]);
  }
  void on_flip(Vertex v, Spin now) {
    current_ += 2.0 * coeffs_[static_cast<std::size_t>(v)] * value(now);
  }
  void scale(double s) { acc_ *= s; }
  void accumulate(double w, std::span<const Spin>) { acc_ += w * current_; }
  double total() const { return acc_; }

private:
  std::span<const double> coeffs_;
  double current_ = 0.0;
  double acc_ = 0.0;
};

class PerVertexObserver {
public:
  explicit PerVertexObserver(std::size_t n) : acc_(n, 0.0) {}
  void init(std::span<const Spin>) {}
  void on_flip(Vertex, Spin) {}
  void scale(double s) {
    for (auto& a : acc_) a *= s;
  }
  void accumulate(double w, std::span<const Spin> spins) {
    for (std::size_t v = 0; v < acc_.size(); ++v) acc_[v] += w * value(spins[v]);
  }
  const std::vector<double>& totals() const { return acc_; }

private:
  std::vector<double> acc_;
};

struct NullObserver {
  void init(std::span<const Spin>) {}
  void on_flip(Vertex, Spin) {}
  void scale(double) {}
  void accumulate(double, std::span<const Spin>) {}
};

struct Enumeration {
  double shift = 0.0; // log of the scale all accumulators are expressed in
  double z = 0.0;     // partition function divided by exp(shift)
  double log_z() const { return shift + std::log(z); }
};

// Visits all 2^n configurations of `model` in Gray-code order starting from all +1,
// updating the energy incrementally. Weights are kept relative to the running maximum
// energy, so no accumulator exceeds the number of configurations.
template <class Observer>
Enumeration enumerate(const IsingModel& model, Observer& observer) {
  const auto n = model.size();
  std::vector<Spin> spins(n, Spin::plus);

  double energy = log_weight(model, spins);
  observer.init(spins);
  Enumeration e{energy, 1.0};
  observer.accumulate(1.0, spins);

  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < count; ++i) {
    const auto vi = static_cast<std::size_t>(std::countr_zero(i));
    const auto v = static_cast<Vertex>(vi);
    double local_field = model.field(v);
    for (const auto& nb : model.neighbors(v))
      local_field += nb.beta * value(spins[static_cast<std::size_t>(nb.vertex)]);
    energy -= 2.0 * value(spins[vi]) * local_field;
    spins[vi] = flip(spins[vi]);
    observer.on_flip(v, spins[vi]);
    if (energy > e.shift) {
      const double s = std::exp(e.shift - energy);
      e.z *= s;
      observer.scale(s);
      e.shift = energy;
    }
    const double w = std::exp(energy - e.shift);
    e.z += w;
    observer.accumulate(w, spins);
  }
  return e;
}

// A connected component of the free vertices. Pinned neighbors are folded into the
// fields, and the block is stored in a canonical orientation: its first nonzero field is
// positive (sign = +1 or -1 records the flip), or sign = 0 when every field vanishes and
// all block expectations are exactly zero by symmetry. Solving blocks separately keeps
// log Z additive over components, and the canonical orientation makes flipping all
// fields and pins negate every expectation bit for bit.
struct Block {
  std::vector<Vertex> members; // local ids in pm.local(), ascending
  IsingModel model;            // canonical orientation
  int sign = 0;
};

struct Decomposition {
  std::vector<Block> blocks;
  double pinned_energy = 0.0;
};

Decomposition decompose(const PinnedModel& pm, std::size_t cap) {
  const auto& m = pm.local();
  const auto n = m.size();
  std::vector<bool> is_free(n, false);
  for (Vertex v : pm.free_vertices()) is_free[static_cast<std::size_t>(v)] = true;
  const auto spins = pm.initial_spins();

  Decomposition d;
  std::vector<int> block_of(n, -1);
  std::vector<Vertex> stack;
  for (Vertex root : pm.free_vertices()) {
    if (block_of[static_cast<std::size_t>(root)] >= 0) continue;
    const int id = static_cast<int>(d.blocks.size());
    Block b;
    block_of[static_cast<std::size_t>(root)] = id;
    stack.assign(1, root);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      b.members.push_back(v);
      for (const auto& nb : m.neighbors(v)) {
        const auto u = static_cast<std::size_t>(nb.vertex);
        if (is_free[u] && block_of[u] < 0) {
          block_of[u] = id;
          stack.push_back(nb.vertex);
        }
      }
    }
    std::sort(b.members.begin(), b.members.end());
    if (b.members.size() > cap)
      throw CapacityError("exact enumeration needs a block of " + std::to_string(b.members.size()) +
                          " free vertices, capacity is " + std::to_string(cap));
    d.blocks.push_back(std::move(b));
  }

  std::vector<Vertex> index(n, -1);
  for (auto& b : d.blocks) {
    for (std::size_t i = 0; i < b.members.size(); ++i) index[static_cast<std::size_t>(b.members[i])] = static_cast<Vertex>(i);
    std::vector<double> fields;
    for (Vertex v : b.members) {
      double h = m.field(v);
      for (const auto& nb : m.neighbors(v)) {
        if (!is_free[static_cast<std::size_t>(nb.vertex)])
          h += nb.beta * value(spins[static_cast<std::size_t>(nb.vertex)]);
      }
      fields.push_back(h);
    }
    for (double h : fields) {
      if (h != 0.0) {
        b.sign = h > 0.0 ? 1 : -1;
        break;
      }
    }
    if (b.sign < 0)
      for (auto& h : fields) h = -h;
    std::vector<Edge> edges;
    for (Vertex v : b.members) {
      for (const auto& nb : m.neighbors(v)) {
        if (nb.vertex > v && is_free[static_cast<std::size_t>(nb.vertex)])
          edges.push_back({index[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(nb.vertex)], nb.beta});
      }
    }
    b.model = IsingModel(std::move(fields), std::move(edges));
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (!is_free[v]) d.pinned_energy += m.field(static_cast<Vertex>(v)) * value(spins[v]);
  }
  for (const auto& e : m.edges()) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    if (!is_free[u] && !is_free[v]) d.pinned_energy += e.beta * value(spins[u]) * value(spins[v]);
  }
  return d;
}

// E[sum_i c_i X_i] over one block, in the caller's orientation.
double block_mean(const Block& b, std::span<const double> coeffs) {
  if (b.sign == 0) return 0.0;
  LinearObserver obs(coeffs);
  const auto e = enumerate(b.model, obs);
  return b.sign * (obs.total() / e.z);
}

} // namespace

double log_partition(const PinnedModel& pm, std::size_t cap) {
  const auto d = decompose(pm, cap);
  double total = 0.0;
  for (const auto& b : d.blocks) {
    NullObserver none;
    total += enumerate(b.model, none).log_z();
  }
  return total + d.pinned_energy;
}

double expectation(const PinnedModel& pm, Vertex v, std::size_t cap) {
  const auto local = pm.local_index(v);
  if (auto s = pm.pinning().at(v)) return value(*s);
  const auto d = decompose(pm, cap);
  for (const auto& b : d.blocks) {
    auto it = std::lower_bound(b.members.begin(), b.members.end(), local);
    if (it == b.members.end() || *it != local) continue;
    std::vector<double> coeffs(b.members.size(), 0.0);
    coeffs[static_cast<std::size_t>(it - b.members.begin())] = 1.0;
    return block_mean(b, coeffs);
  }
  return 0.0; // unreachable: every free vertex lies in a block
}

double marginal_plus(const PinnedModel& pm, Vertex v, std::size_t cap) {
  return 0.5 * (1.0 + expectation(pm, v, cap));
}

double weighted_expectation(const PinnedModel& pm, std::span<const double> weights,
                            std::size_t cap) {
  if (weights.size() != pm.local().size())
    throw ValidationError("weight vector does not match the restricted vertex set");
  const auto d = decompose(pm, cap);
  double total = 0.0;
  std::vector<double> coeffs;
  for (const auto& b : d.blocks) {
    coeffs.clear();
    bool any = false;
    for (Vertex v : b.members) {
      coeffs.push_back(weights[static_cast<std::size_t>(v)]);
      any = any || coeffs.back() != 0.0;
    }
    if (any) total += block_mean(b, coeffs);
  }
  for (const auto& [v, s] : pm.pinning()) total += weights[static_cast<std::size_t>(pm.local_index(v))] * value(s);
  return total;
}

std::vector<double> all_expectations(const PinnedModel& pm, std::size_t cap) {
  const auto d = decompose(pm, cap);
  std::vector<double> out(pm.local().size(), 0.0);
  for (const auto& b : d.blocks) {
    if (b.sign == 0) continue;
    PerVertexObserver obs(b.members.size());
    const auto e = enumerate(b.model, obs);
    for (std::size_t i = 0; i < b.members.size(); ++i)
      out[static_cast<std::size_t>(b.members[i])] = b.sign * (obs.totals()[i] / e.z);
  }
  // pinned spins are exact
  for (const auto& [v, s] : pm.pinning()) out[static_cast<std::size_t>(pm.local_index(v))] = value(s);
  return out;
}

} // namespace infmax
