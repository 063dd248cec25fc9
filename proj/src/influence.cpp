#include "infmax/influence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "infmax/errors.hpp"

namespace infmax {

InfluenceEvaluator::InfluenceEvaluator(const IsingModel& model, const WeightVector& weights,
                                       const VertexSet& support, int radius, std::size_t cap)
    : support_(support), cap_(cap) {
  if (weights.size() != model.size())
    throw ValidationError("weight vector size " + std::to_string(weights.size()) +
                          " does not match model size " + std::to_string(model.size()));
  if (support_.empty()) return;
  region_ = ball(model, support_, radius);
  submodel_ = model.induced(region_);
  const auto local_weights = weights.restricted(region_);
  // Every component of G[B(S, r)] contains a vertex of S.
  for (auto& component : connected_components(submodel_)) {
    if (component.size() > cap_)
      throw CapacityError("influence region around {" + std::to_string(support_.front()) +
                          ",...} has a component of " + std::to_string(component.size()) +
                          " vertices, capacity is " + std::to_string(cap_));
    Part part;
    const auto w = local_weights.restricted(component);
    part.weights.assign(w.values().begin(), w.values().end());
    part.vertices = std::move(component);
    part.baseline = weighted_expectation(PinnedModel(submodel_, part.vertices, {}), part.weights, cap_);
    parts_.push_back(std::move(part));
  }
}

std::size_t InfluenceEvaluator::largest_component() const {
  std::size_t m = 0;
  for (const auto& p : parts_) m = std::max(m, p.vertices.size());
  return m;
}

double InfluenceEvaluator::operator()(const PartialAssignment& pinning) const {
  if (pinning.support() != support_)
    throw ValidationError("pinning does not match the evaluator's support");
  if (support_.empty()) return 0.0;
  const auto members = region_.members();
  std::vector<PartialAssignment::Entry> local_pins;
  for (const auto& [v, s] : pinning) {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    local_pins.emplace_back(static_cast<Vertex>(it - members.begin()), s);
  }
  const PartialAssignment local(std::move(local_pins));
  double total = 0.0;
  for (const auto& part : parts_) {
    const auto pins = local.restricted(part.vertices);
    if (pins.empty()) continue;
    total += weighted_expectation(PinnedModel(submodel_, part.vertices, pins), part.weights, cap_) -
             part.baseline;
  }
  return total;
}

double global_influence(const InfluenceQuery& q, std::size_t cap) {
  const auto s = q.pinning.support();
  return InfluenceEvaluator(q.model, q.weights, s, kInfiniteRadius, cap)(q.pinning);
}

double local_influence(const InfluenceQuery& q, std::size_t cap) {
  if (!q.radius) throw DomainError("local influence requires a radius");
  if (*q.radius < 0) throw DomainError("radius must be nonnegative");
  const auto s = q.pinning.support();
  return InfluenceEvaluator(q.model, q.weights, s, *q.radius, cap)(q.pinning);
}

std::vector<LocalTerm> decompose_local(const InfluenceQuery& q, std::size_t cap) {
  if (!q.radius) throw DomainError("decomposition requires a radius");
  std::vector<LocalTerm> terms;
  const auto s = q.pinning.support();
  if (s.empty()) return terms;
  for (auto& part : components_in_power_graph(q.model, s, *q.radius)) {
    InfluenceQuery sub{q.model, q.weights, q.pinning.restricted(part), q.radius};
    const double v = local_influence(sub, cap);
    terms.push_back({std::move(part), v});
  }
  return terms;
}

std::vector<double> influence_decay_profile(const IsingModel& model, const WeightVector& weights,
                                            const PartialAssignment& pinning, int r_max,
                                            std::size_t cap) {
  if (r_max < 0) throw DomainError("r_max must be nonnegative");
  const auto s = pinning.support();
  const double global = InfluenceEvaluator(model, weights, s, kInfiniteRadius, cap)(pinning);
  std::vector<double> gaps;
  gaps.reserve(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) {
    const double local = InfluenceEvaluator(model, weights, s, r, cap)(pinning);
    gaps.push_back(std::abs(global - local));
  }
  return gaps;
}

std::vector<double> total_influence_profile(const IsingModel& model, Vertex u, std::size_t cap) {
  const VertexSet source{u};
  const auto component = ball(model, source, kInfiniteRadius);
  const auto dist = distances_from(model, source);
  const auto plus = all_expectations(PinnedModel(model, component, {{u, Spin::plus}}), cap);
  const auto minus = all_expectations(PinnedModel(model, component, {{u, Spin::minus}}), cap);

  int eccentricity = 0;
  for (Vertex v : component) eccentricity = std::max(eccentricity, *dist[static_cast<std::size_t>(v)]);
  std::vector<double> at_distance(static_cast<std::size_t>(eccentricity) + 2, 0.0);
  const auto members = component.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    // Pr(+|.) difference is half the expectation difference
    const double d = 0.5 * std::abs(plus[i] - minus[i]);
    at_distance[static_cast<std::size_t>(*dist[static_cast<std::size_t>(members[i])])] += d;
  }
  std::vector<double> tail(at_distance.size(), 0.0);
  for (std::size_t L = at_distance.size() - 1; L-- > 0;) tail[L] = tail[L + 1] + at_distance[L];
  return tail;
}

GeometricFit fit_geometric(std::span<const double> values, double floor) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > floor)) continue;
    const double x = static_cast<double>(i);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  GeometricFit fit;
  fit.points = m;
  if (m == 0) return fit;
  if (m == 1) {
    fit.prefactor = std::exp(sy);
    return fit;
  }
  const double md = static_cast<double>(m);
  const double slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
  fit.ratio = std::exp(slope);
  fit.prefactor = std::exp((sy - slope * sx) / md);
  return fit;
}

} // namespace infmax
