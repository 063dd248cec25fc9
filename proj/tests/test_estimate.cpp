#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "infmax/estimate.hpp"
#include "infmax/exact.hpp"
#include "infmax/influence.hpp"

using namespace infmax;

TEST_CASE("heat-bath probabilities") {
  const auto zero = fixture::edgeless(1);
  const std::vector<Spin> up{Spin::plus};
  CHECK(heat_bath_plus_probability(zero, up, 0) == 0.5);
  const auto half = fixture::edgeless(1, 0.5);
  CHECK(heat_bath_plus_probability(half, up, 0) == doctest::Approx(0.731058579).epsilon(1e-9));
  CHECK(heat_bath_plus_probability(half, up, 0) ==
        doctest::Approx(marginal_plus(PinnedModel(half, {}), 0)).epsilon(1e-14));

  const auto two = fixture::path(2, 0.3);
  const std::vector<Spin> mixed{Spin::minus, Spin::plus};
  CHECK(heat_bath_plus_probability(two, mixed, 1) == doctest::Approx(1.0 / (1.0 + std::exp(0.6))).epsilon(1e-14));
}

TEST_CASE("pinned chains stay put") {
  const auto m = fixture::path(3, 0.3);
  const PartialAssignment all{{0, Spin::minus}, {1, Spin::plus}, {2, Spin::minus}};
  auto state = ChainState::start(m, all, 1);
  const auto before = state.spins;
  for (int i = 0; i < 100; ++i) glauber_step(state, m);
  CHECK(state.spins == before);

  auto partial = ChainState::start(m, {{1, Spin::minus}}, 2);
  for (int i = 0; i < 1000; ++i) {
    glauber_step(partial, m);
    CHECK(partial.spins[1] == Spin::minus);
  }
}

TEST_CASE("resampling frequency of a free vertex") {
  const auto m = fixture::edgeless(1, 0.5);
  auto state = ChainState::start(m, {}, 9);
  int plus = 0;
  const int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    glauber_step(state, m);
    plus += state.spins[0] == Spin::plus;
  }
  const double p = 0.731058579;
  CHECK(std::abs(plus / static_cast<double>(steps) - p) <= 4.0 * std::sqrt(p * (1 - p) / steps));
}

TEST_CASE("estimator edge cases") {
  const auto m = fixture::path(4, 0.2);
  EstimateOptions opts;
  opts.samples = 500;
  const auto zero = estimate_influence(m, WeightVector::constant(4, 0.0), {{0, Spin::plus}}, opts);
  CHECK(zero.value == 0.0);
  CHECK(zero.std_error == 0.0);
  const auto none = estimate_influence(m, WeightVector::constant(4, 1.0), {}, opts);
  CHECK(none.value == 0.0);

  const IsingModel hot({0, 0}, {{0, 1, 0.9}});
  const auto warned = estimate_influence(hot, WeightVector::constant(2, 1.0), {{0, Spin::plus}}, opts, FamilyParams{});
  CHECK_FALSE(warned.warnings.empty());
}

TEST_CASE("isolated vertices converge to the closed form") {
  const auto m = fixture::edgeless({0.3, -0.2, 0.1});
  EstimateOptions opts;
  opts.samples = 10000;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    opts.seed = seed;
    const auto v = static_cast<Vertex>(seed);
    const auto est = estimate_influence(m, WeightVector::constant(3, 1.0), {{v, Spin::plus}}, opts);
    const double truth = 1.0 - std::tanh(m.field(v));
    CHECK(est.std_error > 0.0);
    CHECK(std::abs(est.value - truth) <= 3.0 * est.std_error);
  }
}

TEST_CASE("estimate agrees with exact influence on a 12-vertex instance") {
  // degree-3 instance with beta = 0.25 everywhere
  auto base = random_instance(12, 3, {0.25, 0.25}, {-0.2, 0.2}, 4);
  const auto w = WeightVector::constant(12, 1.0);
  const PartialAssignment pin{{0, Spin::plus}, {5, Spin::minus}};
  const double truth = global_influence({base, w, pin, {}});
  EstimateOptions opts;
  opts.seed = 17;
  const auto est = estimate_influence(base, w, pin, opts, FamilyParams{});
  CHECK(est.warnings.empty());
  CHECK(std::abs(est.value - truth) <= 3.0 * est.std_error);

  opts.seed = 17;
  const auto again = estimate_influence(base, w, pin, opts, FamilyParams{});
  CHECK(again.value == est.value);
  CHECK(again.std_error == est.std_error);
}
