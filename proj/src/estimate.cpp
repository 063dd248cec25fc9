#include "infmax/estimate.hpp"

#include <algorithm>
#include <cmath>

#include "infmax/errors.hpp"
#include "infmax/graph.hpp"

namespace infmax {

ChainState ChainState::start(const IsingModel& model, const PartialAssignment& pinned,
                             std::uint64_t seed) {
  ChainState s;
  s.pinned = pinned;
  s.rng.seed(seed);
  s.spins.resize(model.size());
  std::bernoulli_distribution coin(0.5);
  for (std::size_t v = 0; v < model.size(); ++v) {
    const auto vertex = static_cast<Vertex>(v);
    if (auto p = pinned.at(vertex)) {
      s.spins[v] = *p;
    } else {
      s.spins[v] = coin(s.rng) ? Spin::plus : Spin::minus;
      s.free.push_back(vertex);
    }
  }
  for (const auto& [v, spin] : pinned) {
    if (!model.contains(v)) throw ValidationError("pinned vertex " + std::to_string(v) + " not in model");
  }
  return s;
}

double heat_bath_plus_probability(const IsingModel& model, const std::vector<Spin>& spins, Vertex v) {
  double local = model.field(v);
  for (const auto& nb : model.neighbors(v)) local += nb.beta * value(spins[static_cast<std::size_t>(nb.vertex)]);
  return 1.0 / (1.0 + std::exp(-2.0 * local));
}

void glauber_step(ChainState& state, const IsingModel& model) {
  if (state.free.empty()) return;
  std::uniform_int_distribution<std::size_t> pick(0, state.free.size() - 1);
  const Vertex v = state.free[pick(state.rng)];
  const double p = heat_bath_plus_probability(model, state.spins, v);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  state.spins[static_cast<std::size_t>(v)] = u(state.rng) < p ? Spin::plus : Spin::minus;
  ++state.steps_taken;
}

ChainAverage run_chain(const IsingModel& model, const std::vector<double>& weights,
                       const PartialAssignment& pinned, const EstimateOptions& opts,
                       std::uint64_t seed) {
  if (opts.samples < 2) throw DomainError("at least two samples are required");
  const auto n = static_cast<double>(model.size());
  const std::uint64_t burn_in =
      opts.burn_in.value_or(static_cast<std::uint64_t>(std::ceil(100.0 * n * std::log(std::max(n, 2.0)))));
  const std::uint64_t thin = std::max<std::uint64_t>(1, opts.thin.value_or(model.size()));
  const std::size_t batches =
      static_cast<std::size_t>(std::min<std::uint64_t>(std::max<std::size_t>(opts.batches, 2), opts.samples));
  const std::uint64_t batch_size = opts.samples / batches;

  auto state = ChainState::start(model, pinned, seed);
  for (std::uint64_t t = 0; t < burn_in; ++t) glauber_step(state, model);

  double total = 0.0;
  std::vector<double> batch_sums(batches, 0.0);
  for (std::uint64_t i = 0; i < opts.samples; ++i) {
    for (std::uint64_t t = 0; t < thin; ++t) glauber_step(state, model);
    double m = 0.0;
    for (std::size_t v = 0; v < model.size(); ++v) m += weights[v] * value(state.spins[v]);
    total += m;
    const std::uint64_t b = i / batch_size;
    if (b < batches) batch_sums[b] += m;
  }

  ChainAverage out;
  out.mean = total / static_cast<double>(opts.samples);
  double mean_of_batches = 0.0;
  for (auto& s : batch_sums) {
    s /= static_cast<double>(batch_size);
    mean_of_batches += s;
  }
  mean_of_batches /= static_cast<double>(batches);
  double var = 0.0;
  for (double s : batch_sums) var += (s - mean_of_batches) * (s - mean_of_batches);
  var /= static_cast<double>(batches - 1);
  out.std_error = std::sqrt(var / static_cast<double>(batches));
  return out;
}

InfluenceEstimate estimate_influence(const IsingModel& model, const WeightVector& weights,
                                     const PartialAssignment& pinning, const EstimateOptions& opts,
                                     const std::optional<FamilyParams>& params) {
  if (opts.samples < 2) throw DomainError("at least two samples are required");
  if (weights.size() != model.size())
    throw ValidationError("weight vector does not match the model size");
  InfluenceEstimate est;
  if (params) {
    if (auto fam = validate_family(model, *params); !fam || params->gamma >= 1.0)
      est.warnings.push_back("outside the high-temperature regime; Glauber mixing may be slow");
  }
  const auto s = pinning.support();
  if (s.empty()) return est;

  // Vertices outside the components meeting S are independent of X_S.
  const auto region = ball(model, s, kInfiniteRadius);
  const auto sub = model.induced(region);
  const auto w = weights.restricted(region);
  if (w.all_zero()) return est;
  std::vector<double> wv(w.values().begin(), w.values().end());
  std::vector<PartialAssignment::Entry> local;
  const auto members = region.members();
  for (const auto& [v, spin] : pinning) {
    auto it = std::lower_bound(members.begin(), members.end(), v);
    local.emplace_back(static_cast<Vertex>(it - members.begin()), spin);
  }

  // Independent streams for the two chains.
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    std::uint32_t{0x7f4a7c15u}};
  std::uint64_t seeds[2];
  {
    std::uint32_t raw[4];
    seq.generate(raw, raw + 4);
    seeds[0] = (std::uint64_t{raw[0]} << 32) | raw[1];
    seeds[1] = (std::uint64_t{raw[2]} << 32) | raw[3];
  }
  const auto pinned = run_chain(sub, wv, PartialAssignment(std::move(local)), opts, seeds[0]);
  const auto free = run_chain(sub, wv, {}, opts, seeds[1]);
  est.value = pinned.mean - free.mean;
  est.std_error = std::hypot(pinned.std_error, free.std_error);
  return est;
}

} // namespace infmax
