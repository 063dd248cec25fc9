#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "infmax/errors.hpp"
#include "infmax/influence.hpp"
#include "oracles.hpp"

using namespace infmax;

TEST_CASE("global influence examples") {
  const auto one = fixture::edgeless(1);
  const auto a1 = WeightVector::constant(1, 1.0);
  CHECK(global_influence({one, a1, {{0, Spin::plus}}, {}}) == doctest::Approx(1.0).epsilon(1e-14));

  const auto two = fixture::path(2, 0.3);
  const auto zero = WeightVector::constant(2, 0.0);
  CHECK(global_influence({two, zero, {{0, Spin::plus}}, {}}) == 0.0);
  const auto a2 = WeightVector::constant(2, 1.0);
  // 1 + tanh 0.3
  CHECK(global_influence({two, a2, {{0, Spin::plus}}, {}}) == doctest::Approx(1.291312612).epsilon(1e-9));
  CHECK(global_influence({two, a2, {}, {}}) == 0.0);
}

TEST_CASE("local influence examples") {
  const auto one = fixture::edgeless(1);
  const auto a1 = WeightVector::constant(1, 1.0);
  CHECK(local_influence({one, a1, {{0, Spin::plus}}, 0}) == doctest::Approx(1.0));

  const auto p3 = fixture::path(3, 0.3, 0.1);
  const auto a3 = WeightVector::constant(3, 1.0);
  CHECK(local_influence({p3, a3, {{1, Spin::minus}}, 1}) ==
        doctest::Approx(global_influence({p3, a3, {{1, Spin::minus}}, {}})).epsilon(1e-14));

  const auto p10 = fixture::path(10, 0.3);
  const auto a10 = WeightVector::constant(10, 1.0);
  const PartialAssignment ends{{0, Spin::plus}, {9, Spin::plus}};
  // two disjoint two-vertex balls: 2 (1 + tanh 0.3)
  CHECK(local_influence({p10, a10, ends, 1}) == doctest::Approx(2.582625225).epsilon(1e-9));

  const auto terms = decompose_local({p10, a10, ends, 1});
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].part == VertexSet{0});
  CHECK(terms[0].value == doctest::Approx(1.291312612).epsilon(1e-9));
  CHECK(terms[1].value == doctest::Approx(1.291312612).epsilon(1e-9));

  const auto zero = WeightVector::constant(10, 0.0);
  for (const auto& t : decompose_local({p10, zero, ends, 1})) CHECK(t.value == 0.0);
  CHECK(decompose_local({p10, a10, {{4, Spin::plus}}, 2}).size() == 1);
}

TEST_CASE("local and global influence against plain enumeration") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = random_instance(11, 3, {-0.4, 0.4}, {-0.5, 0.5}, seed);
    const auto w = random_weights(11, {-1, 1}, seed + 100);
    const std::vector<double> a(w.values().begin(), w.values().end());
    const Vertex u = static_cast<Vertex>(rng() % 11);
    Vertex v = static_cast<Vertex>(rng() % 11);
    if (v == u) v = (v + 1) % 11;
    const Spin su = rng() % 2 ? Spin::plus : Spin::minus;
    const Spin sv = rng() % 2 ? Spin::plus : Spin::minus;
    const PartialAssignment pin{{u, su}, {v, sv}};
    const std::vector<oracle::Pin> opin{{u, value(su)}, {v, value(sv)}};

    CHECK(std::abs(global_influence({m, w, pin, {}}) - oracle::phi(m, a, opin)) <= 1e-11);
    for (int r = 0; r <= 3; ++r)
      CHECK(std::abs(local_influence({m, w, pin, r}) - oracle::phi_local(m, a, opin, r)) <= 1e-11);
  }
}

TEST_CASE("influence decay on a cycle") {
  const auto c = fixture::cycle(12, 0.3);
  const auto a = WeightVector::constant(12, 1.0);
  const PartialAssignment pin{{0, Spin::plus}};
  const auto profile = influence_decay_profile(c, a, pin, 8);
  REQUIRE(profile.size() == 9);
  const std::vector<double> ones(12, 1.0);
  const double truth = oracle::phi(c, ones, {{0, 1}});
  for (int r = 0; r <= 8; ++r)
    CHECK(std::abs(profile[static_cast<std::size_t>(r)] - std::abs(truth - oracle::phi_local(c, ones, {{0, 1}}, r))) <= 1e-11);
  // The ball covers the cycle from r = 6 on.
  for (int r = 0; r < 5; ++r) CHECK(profile[static_cast<std::size_t>(r)] > profile[static_cast<std::size_t>(r + 1)]);
  for (int r = 6; r <= 8; ++r) CHECK(profile[static_cast<std::size_t>(r)] <= 1e-12);

  const auto fit = fit_geometric(profile);
  CHECK(fit.points >= 4);
  CHECK(fit.ratio > 0.0);
  CHECK(fit.ratio < 1.0);

  const auto lonely = influence_decay_profile(fixture::edgeless(4), WeightVector::constant(4, 1.0), pin, 3);
  for (double g : lonely) CHECK(g == 0.0);
}

TEST_CASE("geometric fit") {
  const std::vector<double> exact{2.0, 1.0, 0.5, 0.25, 0.0};
  const auto fit = fit_geometric(exact);
  CHECK(fit.points == 4);
  CHECK(fit.ratio == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_geometric(std::vector<double>{1.0, 0.0}).ratio == 0.0);
}

TEST_CASE("total influence profile") {
  const auto lonely = total_influence_profile(fixture::edgeless(3), 1);
  for (std::size_t i = 1; i < lonely.size(); ++i) CHECK(lonely[i] == 0.0);

  // Two-vertex edge: Pr(X_1=+|X_0=+) - Pr(X_1=+|X_0=-) = tanh(beta).
  const auto two = total_influence_profile(fixture::path(2, 0.3), 0);
  REQUIRE(two.size() == 3);
  CHECK(two[1] == doctest::Approx(std::tanh(0.3)).epsilon(1e-12));
  CHECK(two[2] == 0.0);
  CHECK(two[0] == doctest::Approx(1.0 + std::tanh(0.3)).epsilon(1e-12));
}

TEST_CASE("evaluator capacity") {
  const auto big = fixture::path(40, 0.1);
  const auto a = WeightVector::constant(40, 1.0);
  CHECK_THROWS_AS(global_influence({big, a, {{0, Spin::plus}}, {}}), CapacityError);
  CHECK_NOTHROW(local_influence({big, a, {{0, Spin::plus}}, 5}));
}
