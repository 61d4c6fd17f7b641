#include <doctest.h>

#include <vector>

#include "fkg/measure.hpp"
#include "oracle.hpp"

using namespace fkg;
using oracle::Q;

namespace {

Measure two_point() { return Measure(GroundSet(2), {0, Q("1/2"), Q("1/2"), 0}); }

}  // namespace

TEST_CASE("measure construction rejects bad weights") {
  CHECK_THROWS_WITH_AS(Measure(GroundSet(1), {Q("1/2"), Q("2/5")}), "weights sum to 9/10, deficit 1/10", Error);
  CHECK_THROWS_AS(Measure(GroundSet(1), {Q("3/2"), Q("-1/2")}), Error);
  CHECK_THROWS_AS(Measure(GroundSet(2), {1}), Error);
}

TEST_CASE("normalize") {
  const Measure uniform = normalize(GroundSet(2), {1, 1, 1, 1});
  for (auto w : uniform.weights()) CHECK(w == Q("1/4"));
  const Measure mu = normalize(GroundSet(2), {1, 1, 1, 2});
  CHECK(std::vector<Rational>(mu.weights().begin(), mu.weights().end()) ==
        std::vector<Rational>{Q("1/5"), Q("1/5"), Q("1/5"), Q("2/5")});
  CHECK_THROWS_WITH_AS(normalize(GroundSet(2), {0, 0, 0, 0}), "degenerate weight table", Error);
}

TEST_CASE("check_fkg examples") {
  const Rational half = Q("1/2");
  CHECK(check_fkg(product_measure(std::vector<Rational>{half, Q("1/3"), Q("3/4")})).holds);

  const FkgReport bad = check_fkg(two_point());
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness);
  CHECK(bad.witness->a == subset_of({1}));
  CHECK(bad.witness->b == subset_of({2}));
  CHECK(bad.witness->meet_join == 0);
  CHECK(bad.witness->product == Q("1/4"));

  CHECK(check_fkg(normalize(GroundSet(3), std::vector<Rational>(8, Rational(1)))).holds);
}

TEST_CASE("product measures factor: equality on independent coordinate events") {
  const Measure mu = product_measure(std::vector<Rational>{Q("1/3"), Q("2/7")});
  // μ(∅)μ({1,2}) = μ({1})μ({2}) for independent coordinates.
  CHECK(mu.weight(SubsetId{0}) * mu.weight(SubsetId{3}) == mu.weight(SubsetId{1}) * mu.weight(SubsetId{2}));
}

TEST_CASE("product measures pass FKG on a rational grid, m <= 4") {
  const std::vector<Rational> grid{0, Q("1/3"), Q("1/2"), Q("3/4"), 1};
  for (int m = 1; m <= 4; ++m) {
    std::vector<std::size_t> pick(m, 0);
    while (true) {
      std::vector<Rational> biases;
      for (auto p : pick) biases.push_back(grid[p]);
      REQUIRE(check_fkg(product_measure(biases)).holds);
      int i = 0;
      while (i < m && ++pick[i] == grid.size()) pick[i++] = 0;
      if (i == m) break;
    }
  }
}

TEST_CASE("local FKG check agrees with the full check on positive measures") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Measure mu = random_measure(seed, GroundSet(3));
    if (!mu.strictly_positive()) {
      CHECK_THROWS_AS(check_fkg_local(mu), Error);
      continue;
    }
    CHECK(check_fkg_local(mu).holds == check_fkg(mu).holds);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(check_fkg_local(random_log_supermodular(seed, GroundSet(4))).holds);
  }
}

TEST_CASE("event_prob") {
  const Measure uniform = normalize(GroundSet(2), {1, 1, 1, 1});
  CHECK(event_prob(uniform, SubsetId{}) == 1);
  CHECK(event_prob(uniform, subset_of({1})) == Q("1/2"));
  const Measure at_empty(GroundSet(2), {1, 0, 0, 0});
  CHECK(event_prob(at_empty, subset_of({1, 2})) == 0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Measure mu = random_log_supermodular(seed, GroundSet(4));
    for (std::uint32_t g = 0; g < 16; ++g) {
      CHECK(event_prob(mu, SubsetId{g}) == oracle::prob_all(mu, {g}));
      CHECK(mu.upset_prob(SubsetId{g}) == event_prob(mu, SubsetId{g}));
    }
  }
}

TEST_CASE("conditional") {
  const Measure uniform = normalize(GroundSet(2), {1, 1, 1, 1});
  const Measure same = conditional(uniform, SubsetId{});
  CHECK(std::equal(same.weights().begin(), same.weights().end(), uniform.weights().begin()));
  const Measure c = conditional(uniform, subset_of({1}));
  CHECK(std::vector<Rational>(c.weights().begin(), c.weights().end()) ==
        std::vector<Rational>{0, Q("1/2"), 0, Q("1/2")});
  const Measure at1(GroundSet(2), {0, 1, 0, 0});
  CHECK_THROWS_WITH_AS(conditional(at1, subset_of({2})), "conditioning on null event", Error);
}

TEST_CASE("expectation") {
  const Measure uniform = normalize(GroundSet(2), {1, 1, 1, 1});
  CHECK(expectation(uniform, MonotoneComb::atom(1, SubsetId{})) == 1);
  CHECK(expectation(uniform, MonotoneComb::atom(1, subset_of({1}))) == Q("1/2"));
  const MonotoneComb halves({{Q("1/2"), subset_of({1})}, {Q("1/2"), subset_of({1})}});
  CHECK(expectation(uniform, halves) == expectation(uniform, MonotoneComb::atom(1, subset_of({1}))));
}

TEST_CASE("product_measure") {
  const Measure fair = product_measure(std::vector<Rational>{Q("1/2"), Q("1/2")});
  for (auto w : fair.weights()) CHECK(w == Q("1/4"));
  const Measure fixed = product_measure(std::vector<Rational>{1, 0});
  CHECK(fixed.weight(subset_of({1})) == 1);
  const Measure single = product_measure(std::vector<Rational>{Q("1/3")});
  CHECK(single.weight(SubsetId{0}) == Q("2/3"));
  CHECK(single.weight(SubsetId{1}) == Q("1/3"));
  CHECK_THROWS_AS(product_measure(std::vector<Rational>{Q("4/3")}), Error);
}

TEST_CASE("pairwise generator") {
  const Measure flat = pairwise_measure(GroundSet(3), std::vector<Rational>(3, Rational(1)),
                                        std::vector<Rational>(3, Rational(1)));
  for (auto w : flat.weights()) CHECK(w == Q("1/8"));
  const Measure coupled = pairwise_measure(GroundSet(2), std::vector<Rational>{1, 1}, std::vector<Rational>{2});
  CHECK(std::vector<Rational>(coupled.weights().begin(), coupled.weights().end()) ==
        std::vector<Rational>{Q("1/5"), Q("1/5"), Q("1/5"), Q("2/5")});
  CHECK(check_fkg(coupled).holds);
  CHECK_THROWS_AS(pairwise_measure(GroundSet(2), std::vector<Rational>{1, 1}, std::vector<Rational>{Q("1/2")}),
                  Error);
}

TEST_CASE("random_log_supermodular is deterministic and FKG") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Measure a = random_log_supermodular(seed, GroundSet(4));
    const Measure b = random_log_supermodular(seed, GroundSet(4));
    CHECK(std::equal(a.weights().begin(), a.weights().end(), b.weights().begin()));
    CHECK(check_fkg(a).holds);
  }
}

TEST_CASE("FKG correlation inequality for principal upsets") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Measure mu = random_log_supermodular(seed, GroundSet(3));
    for (std::uint32_t c1 = 0; c1 < 8; ++c1) {
      for (std::uint32_t c2 = 0; c2 < 8; ++c2) {
        CHECK(event_prob(mu, join(SubsetId{c1}, SubsetId{c2})) >=
              event_prob(mu, SubsetId{c1}) * event_prob(mu, SubsetId{c2}));
      }
    }
  }
}

TEST_CASE("conditional weights sum to one") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Measure mu = random_measure(seed, GroundSet(3));
    for (std::uint32_t g = 0; g < 8; ++g) {
      if (sgn(event_prob(mu, SubsetId{g})) == 0) continue;
      const Measure c = conditional(mu, SubsetId{g});  // constructor enforces the sum
      Rational total(0);
      for (auto w : c.weights()) total += w;
      CHECK(total == 1);
    }
  }
}

TEST_CASE("FKG verdict is scale invariant") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Measure mu = random_measure(seed, GroundSet(3));
    std::vector<Rational> scaled(mu.weights().begin(), mu.weights().end());
    for (auto& w : scaled) w *= Q("7/3");
    CHECK(check_fkg(normalize(GroundSet(3), scaled)).holds == check_fkg(mu).holds);
  }
}
