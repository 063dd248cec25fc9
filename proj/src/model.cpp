#include "infmax/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "infmax/errors.hpp"

namespace infmax {

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  std::vector<Vertex> out;
  out.reserve(size() + other.size());
  std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                 other.members_.end(), std::back_inserter(out));
  VertexSet result;
  result.members_ = std::move(out);
  return result;
}

bool VertexSet::intersects(const VertexSet& other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

bool canonical_less(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.members_ < b.members_;
}

IsingModel::IsingModel(std::vector<double> fields, std::vector<Edge> edges)
    : fields_(std::move(fields)), edges_(std::move(edges)) {
  const auto n = static_cast<Vertex>(fields_.size());
  for (std::size_t v = 0; v < fields_.size(); ++v) {
    if (!std::isfinite(fields_[v]))
      throw ValidationError("vertex " + std::to_string(v) + ": field is not finite");
  }
  for (auto& e : edges_) {
    if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references an unknown vertex");
    if (!std::isfinite(e.beta))
      throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            "): coupling is not finite");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw ValidationError("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                            std::to_string(edges_[i].v) + ")");
  }
  adjacency_.resize(fields_.size());
  for (const auto& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, e.beta});
    adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, e.beta});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

std::size_t IsingModel::max_degree() const {
  std::size_t d = 0;
  for (const auto& list : adjacency_) d = std::max(d, list.size());
  return d;
}

std::optional<double> IsingModel::coupling(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  auto list = neighbors(u);
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& nb, Vertex x) { return nb.vertex < x; });
  if (it == list.end() || it->vertex != v) return std::nullopt;
  return it->beta;
}

IsingModel IsingModel::induced(const VertexSet& subset) const {
  std::vector<Vertex> local(size(), -1);
  std::vector<double> fields;
  fields.reserve(subset.size());
  Vertex next = 0;
  for (Vertex v : subset) {
    if (!contains(v)) throw ValidationError("unknown vertex " + std::to_string(v));
    local[static_cast<std::size_t>(v)] = next++;
    fields.push_back(field(v));
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    Vertex lu = local[static_cast<std::size_t>(e.u)];
    Vertex lv = local[static_cast<std::size_t>(e.v)];
    if (lu >= 0 && lv >= 0) edges.push_back({lu, lv, e.beta});
  }
  return IsingModel(std::move(fields), std::move(edges));
}

bool WeightVector::one_bounded() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return std::abs(x) <= 1.0; });
}

bool WeightVector::all_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return x == 0.0; });
}

WeightVector WeightVector::scaled(double t) const {
  std::vector<double> out(a_);
  for (auto& x : out) x *= t;
  return WeightVector(std::move(out));
}

WeightVector WeightVector::restricted(const VertexSet& subset) const {
  std::vector<double> out;
  out.reserve(subset.size());
  for (Vertex v : subset) out.push_back((*this)[v]);
  return WeightVector(std::move(out));
}

PartialAssignment::PartialAssignment(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].first == entries_[i - 1].first)
      throw ValidationError("vertex " + std::to_string(entries_[i].first) +
                            " assigned more than once");
  }
}

PartialAssignment::PartialAssignment(std::initializer_list<Entry> entries)
    : PartialAssignment(std::vector<Entry>(entries)) {}

PartialAssignment PartialAssignment::uniform(const VertexSet& s, Spin spin) {
  std::vector<Entry> entries;
  entries.reserve(s.size());
  for (Vertex v : s) entries.emplace_back(v, spin);
  return PartialAssignment(std::move(entries));
}

VertexSet PartialAssignment::support() const {
  std::vector<Vertex> keys;
  keys.reserve(entries_.size());
  for (const auto& [v, s] : entries_) keys.push_back(v);
  return VertexSet(std::move(keys));
}

std::optional<Spin> PartialAssignment::at(Vertex v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, Vertex x) { return e.first < x; });
  if (it == entries_.end() || it->first != v) return std::nullopt;
  return it->second;
}

PartialAssignment PartialAssignment::restricted(const VertexSet& subset) const {
  std::vector<Entry> out;
  for (const auto& e : entries_) {
    if (subset.contains(e.first)) out.push_back(e);
  }
  return PartialAssignment(std::move(out));
}

PartialAssignment PartialAssignment::merged(const PartialAssignment& other) const {
  std::vector<Entry> out(entries_);
  out.insert(out.end(), other.entries_.begin(), other.entries_.end());
  return PartialAssignment(std::move(out));
}

PartialAssignment PartialAssignment::negated() const {
  std::vector<Entry> out(entries_);
  for (auto& e : out) e.second = flip(e.second);
  return PartialAssignment(std::move(out));
}

FamilyParams FamilyParams::high_temperature(int delta_max, double delta) {
  FamilyParams p{delta_max, 1.0 - delta, delta};
  p.check();
  return p;
}

void FamilyParams::check() const {
  if (delta_max < 3) throw DomainError("max degree must be at least 3");
  if (!(gamma > 0.0)) throw DomainError("interaction bound gamma must be positive");
}

void SolverConfig::check() const {
  if (k < 1) throw DomainError("budget k must be at least 1");
  if (k > max_k)
    throw DomainError("budget k=" + std::to_string(k) + " exceeds the enforced maximum " +
                      std::to_string(max_k));
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(decay_constant > 0.0)) throw DomainError("decay constant must be positive");
  if (radius_override && *radius_override < 0) throw DomainError("radius must be nonnegative");
}

FamilyCheck validate_family(const IsingModel& model, const FamilyParams& params) {
  FamilyCheck result;
  for (std::size_t v = 0; v < model.size(); ++v) {
    const auto d = model.degree(static_cast<Vertex>(v));
    if (d > static_cast<std::size_t>(params.delta_max)) {
      result.ok = false;
      result.vertex = static_cast<Vertex>(v);
      result.diagnostic = "vertex " + std::to_string(v) + " has degree " + std::to_string(d) +
                          " > " + std::to_string(params.delta_max);
      return result;
    }
  }
  for (const auto& e : model.edges()) {
    const double strength = (params.delta_max - 1) * std::tanh(std::abs(e.beta));
    if (strength > params.gamma) {
      result.ok = false;
      result.edge = e;
      result.diagnostic = "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          "): (delta-1)*tanh|beta| = " + std::to_string(strength) + " > " +
                          std::to_string(params.gamma);
      return result;
    }
  }
  return result;
}

double critical_coupling(int delta_max) {
  if (delta_max < 3) throw DomainError("critical coupling requires max degree >= 3");
  return std::atanh(1.0 / (delta_max - 1));
}

namespace {

void check_range(const Range& r, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi)
    throw ValidationError(std::string(what) + " range must be finite with lo <= hi");
}

double uniform(std::mt19937_64& rng, const Range& r) {
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

} // namespace

IsingModel random_instance(std::size_t n, int delta_max, Range beta_range, Range h_range,
                           std::uint64_t seed) {
  if (n == 0) throw ValidationError("instance must have at least one vertex");
  if (delta_max < 0) throw ValidationError("max degree must be nonnegative");
  check_range(beta_range, "coupling");
  check_range(h_range, "field");

  std::mt19937_64 rng(seed);
  std::vector<double> fields(n);
  for (auto& h : fields) h = uniform(rng, h_range);

  std::vector<std::vector<std::size_t>> adjacent(n);
  std::vector<Edge> edges;
  if (n > 1 && delta_max > 0) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const auto cap = static_cast<std::size_t>(delta_max);
    const std::size_t attempts = n * cap;
    for (std::size_t t = 0; t < attempts; ++t) {
      std::size_t u = pick(rng);
      std::size_t v = pick(rng);
      if (u == v || adjacent[u].size() >= cap || adjacent[v].size() >= cap) continue;
      if (std::find(adjacent[u].begin(), adjacent[u].end(), v) != adjacent[u].end()) continue;
      adjacent[u].push_back(v);
      adjacent[v].push_back(u);
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), uniform(rng, beta_range)});
    }
  }
  return IsingModel(std::move(fields), std::move(edges));
}

WeightVector random_weights(std::size_t n, Range a_range, std::uint64_t seed) {
  check_range(a_range, "weight");
  std::mt19937_64 rng(seed);
  std::vector<double> a(n);
  for (auto& x : a) x = uniform(rng, a_range);
  return WeightVector(std::move(a));
}

} // namespace infmax
