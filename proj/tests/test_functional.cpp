#include <doctest.h>

#include <vector>

#include "fkg/functional.hpp"
#include "fkg/random.hpp"
#include "oracle.hpp"

using namespace fkg;
using oracle::Q;

namespace {

Measure uniform(int m) { return normalize(GroundSet(m), std::vector<Rational>(std::size_t{1} << m, Rational(1))); }

Instance make(const Measure& mu, std::vector<std::uint32_t> gens) {
  std::vector<SubsetId> ids;
  for (auto g : gens) ids.push_back(SubsetId{g});
  return Instance(mu, ids);
}

// Random instance: measure from the FKG generator or the unconstrained one.
Instance random_instance(std::uint64_t seed, int m, int n, bool fkg) {
  Rng rng(seed);
  const GroundSet x(m);
  const Measure mu = fkg ? random_log_supermodular(rng.next(), x) : random_measure(rng.next(), x);
  std::vector<std::uint32_t> gens;
  for (int i = 0; i < n; ++i) gens.push_back(static_cast<std::uint32_t>(rng.uniform(0, (1 << m) - 1)));
  return make(mu, gens);
}

std::vector<std::uint32_t> gens_of(const Instance& inst) {
  std::vector<std::uint32_t> out;
  for (const auto& f : inst.fns()) out.push_back(f.generator().bits);
  return out;
}

// μ(⋂_{i ∈ idx} A_i) with 1-based indices.
Rational mu_of(const Instance& inst, std::initializer_list<int> idx) {
  std::vector<std::uint32_t> g;
  for (int i : idx) g.push_back(inst.generator(i).bits);
  return oracle::prob_all(inst.measure(), g);
}

const Measure kNonFkg(GroundSet(2), {0, Q("1/2"), Q("1/2"), 0});

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(make(uniform(2), {}), Error);
  CHECK_THROWS_AS(make(uniform(2), {4}), Error);
  CHECK_THROWS_AS(make(uniform(2), std::vector<std::uint32_t>(9, 0)), Error);
}

TEST_CASE("e_delta") {
  const Instance inst = make(uniform(2), {1, 2});
  const std::vector<int> one{1}, both{1, 2};
  CHECK(e_delta(inst, one) == Q("1/2"));
  CHECK(e_delta(inst, both) == Q("1/4"));
  const Instance disjoint = make(Measure(GroundSet(2), {1, 0, 0, 0}), {3, 1});
  CHECK(e_delta(disjoint, both) == 0);
  CHECK_THROWS_AS(e_delta(inst, std::vector<int>{}), Error);
  CHECK_THROWS_AS(e_delta(inst, std::vector<int>{3}), Error);
}

TEST_CASE("e_sigma and e_lambda on n = 3") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(seed, 3, 3, true);
    const std::vector<int> all{1, 2, 3};
    CHECK(e_sigma(inst, SetPartition(3, {{1, 2, 3}})) == e_delta(inst, all));
    CHECK(e_sigma(inst, SetPartition(3, {{1}, {2}, {3}})) == mu_of(inst, {1}) * mu_of(inst, {2}) * mu_of(inst, {3}));
    CHECK(e_sigma(inst, SetPartition(3, {{1}, {2, 3}})) == mu_of(inst, {1}) * mu_of(inst, {2, 3}));
    CHECK(e_lambda(inst, IntPartition({3})) == mu_of(inst, {1, 2, 3}));
    CHECK(e_lambda(inst, IntPartition({2, 1})) == mu_of(inst, {1}) * mu_of(inst, {2, 3}) +
                                                      mu_of(inst, {2}) * mu_of(inst, {1, 3}) +
                                                      mu_of(inst, {3}) * mu_of(inst, {1, 2}));
    CHECK(e_lambda(inst, IntPartition({1, 1, 1})) == mu_of(inst, {1}) * mu_of(inst, {2}) * mu_of(inst, {3}));
  }
}

TEST_CASE("e_n examples") {
  const Measure product = product_measure(std::vector<Rational>{Q("1/3"), Q("3/5")});
  CHECK(e_n(make(product, {1, 2})) == 0);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(seed, 3, 3, seed % 2 == 0);
    const Rational expected = 2 * mu_of(inst, {1, 2, 3}) - mu_of(inst, {1}) * mu_of(inst, {2, 3}) -
                              mu_of(inst, {2}) * mu_of(inst, {1, 3}) - mu_of(inst, {3}) * mu_of(inst, {1, 2}) +
                              mu_of(inst, {1}) * mu_of(inst, {2}) * mu_of(inst, {3});
    CHECK(e_n(inst) == expected);
  }

  const Instance control = make(kNonFkg, {1, 2});
  CHECK(e_n(control) == Q("-1/4"));
  CHECK(e_n(control, Mode::explore) == Q("-1/4"));
  CHECK_THROWS_AS(e_n(control, Mode::verify), InequalityViolation);
}

TEST_CASE("e_n agrees with the pointwise oracle") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int m = 1 + static_cast<int>(seed % 4);
    const int n = 1 + static_cast<int>(seed % 6);
    const Instance inst = random_instance(seed, m, n, seed % 3 != 0);
    CHECK(e_n(inst) == oracle::e_n(inst.measure(), gens_of(inst)));
  }
}

TEST_CASE("E_n(1, ..., 1) vanishes for n >= 2") {
  for (int n = 1; n <= 8; ++n) {
    const Instance inst = make(random_log_supermodular(n, GroundSet(3)), std::vector<std::uint32_t>(n, 0));
    CHECK(e_n(inst) == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("e_n is nonnegative under FKG, exhaustive m = 2, n <= 4") {
  const std::vector<Measure> measures{uniform(2), product_measure(std::vector<Rational>{Q("1/3"), Q("4/5")}),
                                      random_log_supermodular(7, GroundSet(2))};
  for (const auto& mu : measures) {
    for (int n = 1; n <= 4; ++n) {
      std::vector<std::uint32_t> gens(n, 0);
      while (true) {
        CHECK(sgn(e_n(make(mu, gens), Mode::verify)) >= 0);
        int i = 0;
        while (i < n && ++gens[i] == 4) gens[i++] = 0;
        if (i == n) break;
      }
    }
  }
}

TEST_CASE("multilinear evaluation") {
  const Measure mu = random_log_supermodular(3, GroundSet(3));
  const std::vector<MonotoneComb> atoms{MonotoneComb::atom(1, subset_of({1})), MonotoneComb::atom(1, subset_of({2, 3}))};
  CHECK(e_n_multilinear(mu, atoms) == e_n(make(mu, {1, 6})));

  Rng rng(11);
  auto random_comb = [&](int atoms_count) {
    std::vector<CombTerm> terms;
    for (int a = 0; a < atoms_count; ++a) {
      terms.push_back({rng.rational(0, 5, 4), SubsetId{static_cast<std::uint32_t>(rng.uniform(0, 7))}});
    }
    return MonotoneComb(terms);
  };
  for (int trial = 0; trial < 30; ++trial) {
    const Measure nu = trial % 2 ? random_log_supermodular(trial, GroundSet(3)) : random_measure(trial, GroundSet(3));
    const int n = 1 + trial % 4;
    std::vector<MonotoneComb> combs;
    for (int i = 0; i < n; ++i) combs.push_back(random_comb(1 + trial % 3));
    const Rational value = e_n_multilinear(nu, combs);
    CHECK(value == e_n_direct(nu, combs));

    std::vector<MonotoneComb> scaled_combs = combs;
    scaled_combs[0] = scaled(combs[0], Q("5/3"));
    CHECK(e_n_multilinear(nu, scaled_combs) == Q("5/3") * value);

    if (n == 2) {
      const MonotoneComb g1 = random_comb(1), g2 = random_comb(2);
      const Rational a = Q("2/7"), b = Q("3");
      const std::vector<MonotoneComb> mixed{scaled(g1, a) + scaled(g2, b), combs[1]};
      const std::vector<MonotoneComb> first{g1, combs[1]}, second{g2, combs[1]};
      CHECK(e_n_multilinear(nu, mixed) == a * e_n_multilinear(nu, first) + b * e_n_multilinear(nu, second));
    }
  }
}

TEST_CASE("i_n") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance one = random_instance(seed, 3, 1, true);
    CHECK(i_n(one) == 0);
    const Instance two = random_instance(seed, 3, 2, true);
    CHECK(i_n(two) == mu_of(two, {1}) * mu_of(two, {2}));
    const Instance three = random_instance(seed, 3, 3, true);
    CHECK(i_n(three) == mu_of(three, {1}) * mu_of(three, {2, 3}) + mu_of(three, {2}) * mu_of(three, {1, 3}) +
                            mu_of(three, {3}) * mu_of(three, {1, 2}) -
                            mu_of(three, {1}) * mu_of(three, {2}) * mu_of(three, {3}));
  }
}

TEST_CASE("E^k_sigma, Appendix values for n = 3") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(seed, 4, 3, seed % 2 == 0);
    const Rational a3 = mu_of(inst, {3});
    const Rational a123 = mu_of(inst, {1, 2, 3});
    const Rational a13 = mu_of(inst, {1, 3});
    const Rational a23 = mu_of(inst, {2, 3});
    const Rational a2 = mu_of(inst, {2});

    CHECK(ek_sigma(inst, SetPartition(3, {{1, 2, 3}}), 1) == a3 * a123);
    CHECK(ek_sigma(inst, SetPartition(3, {{1, 2}, {3}}), 1) == a3 * a123);
    CHECK(ek_sigma(inst, SetPartition(3, {{1}, {2, 3}}), 1) == a23 * a13);
    CHECK(ek_sigma(inst, SetPartition(3, {{1, 3}, {2}}), 1) == a3 * a2 * a13);
    CHECK(ek_sigma(inst, SetPartition(3, {{1}, {2}, {3}}), 1) == a3 * a2 * a13);

    CHECK(ek_sigma(inst, SetPartition(3, {{1, 2, 3}}), 2) == a3 * a3 * a123);
    CHECK(ek_sigma(inst, SetPartition(3, {{1, 2}, {3}}), 2) == a3 * a3 * a123);
    CHECK(ek_sigma(inst, SetPartition(3, {{1}, {2, 3}}), 2) == a3 * a23 * a13);
    CHECK(ek_sigma(inst, SetPartition(3, {{1, 3}, {2}}), 2) == a3 * a23 * a13);
    CHECK(ek_sigma(inst, SetPartition(3, {{1}, {2}, {3}}), 2) == a3 * a23 * a13);

    for (const auto& sigma : enumerate_set_partitions(3)) CHECK(ek_sigma(inst, sigma, 0) == e_sigma(inst, sigma));

    CHECK(ek_n(inst, 1) == a3 * a123 - a23 * a13);
    CHECK(ek_n(inst, 2) == a3 * a3 * a123 - a3 * a23 * a13);
    CHECK(ek_n(inst, 0) == e_n(inst));
  }
  const Instance inst = random_instance(1, 3, 3, true);
  CHECK_THROWS_AS(ek_n(inst, 3), Error);
  CHECK_THROWS_AS(ek_n(inst, -1), Error);
}

TEST_CASE("E^k agrees with the formula oracle") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const Instance inst = random_instance(seed, 3, n, seed % 2 == 0);
    for (int k = 0; k < n; ++k) CHECK(ek_n(inst, k) == oracle::e_k(inst.measure(), gens_of(inst), k));
  }
}

TEST_CASE("I^k, both readings") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = random_instance(seed, 4, 3, seed % 2 == 1);
    const Rational a3 = mu_of(inst, {3});
    const Rational a123 = mu_of(inst, {1, 2, 3});
    const Rational a13 = mu_of(inst, {1, 3});
    const Rational a23 = mu_of(inst, {2, 3});

    CHECK(ik_n(inst, 1) == a13 * a23);
    CHECK(ik_n(inst, 2) == a3 * ik_n(inst, 1));
    // Appendix display of I^1 and the (n-1)!-weighted decomposition.
    CHECK(ik_n_factorial(inst, 1) == a13 * a23 + a3 * a123);
    CHECK(ik_n_factorial(inst, 2) == a3 * ik_n_factorial(inst, 1));
    CHECK(ik_n_factorial(inst, 0) == i_n(inst));
    CHECK(ik_n(inst, 0) == i_n(inst) - a123);
    for (int k = 0; k < 3; ++k) {
      CHECK(ek_n(inst, k) + ik_n(inst, k) == pow(a3, k) * a123);
    }
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance two = random_instance(seed, 3, 2, true);
    CHECK(ik_n(two, 0) == i_n(two));
  }
}

TEST_CASE("verify_chain, n = 2") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = random_instance(seed, 3, 2, true);
    const ChainReport r = verify_chain(inst, Mode::verify);
    REQUIRE(r.e_values.size() == 2);
    CHECK(r.e_values[0] == mu_of(inst, {1, 2}) - mu_of(inst, {1}) * mu_of(inst, {2}));
    // σ = (12): μ(A_2)μ(A_12); σ = (1)(2): μ(A_2)μ(A_1∩A_2).
    CHECK(r.e_values[1] == 0);
    CHECK(r.holds());
  }
}

TEST_CASE("verify_chain, n = 3 uniform with C_i = {i}") {
  const Instance inst = make(uniform(3), {1, 2, 4});
  const ChainReport r = verify_chain(inst, Mode::verify);
  CHECK(r.holds());
  CHECK(r.e_values == std::vector<Rational>{0, 0, 0});
  CHECK(r.i_values == std::vector<Rational>{Q("1/8"), Q("1/16"), Q("1/32")});
  CHECK(r.descent.size() == 3);
  CHECK(r.descent_terminal_zero);
}

TEST_CASE("verify_chain, sure last event keeps E^k constant") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance base = random_instance(seed, 3, 4, true);
    std::vector<std::uint32_t> gens = gens_of(base);
    gens.back() = 0;
    const ChainReport r = verify_chain(make(base.measure(), gens), Mode::verify);
    for (const auto& e : r.e_values) CHECK(e == r.e_values.front());
  }
}

TEST_CASE("verify_chain, null last event terminates trivially") {
  const Measure at_empty(GroundSet(2), {1, 0, 0, 0});
  const ChainReport r = verify_chain(make(at_empty, {1, 2, 3}), Mode::verify);
  CHECK(r.trivially_terminated);
  for (const auto& e : r.e_values) CHECK(e == 0);
  CHECK(r.holds());
  REQUIRE(r.descent.size() == 2);
  CHECK(r.descent.back().null_event);
  CHECK(r.descent_trivially_terminated);
}

TEST_CASE("verify_chain, n = 1 has no vanishing bottom") {
  const Measure mu = product_measure(std::vector<Rational>{Q("2/3")});
  for (std::uint32_t g : {0u, 1u}) {
    const ChainReport r = verify_chain(make(mu, {g}), Mode::verify);
    CHECK(r.holds());
    CHECK(r.descent_terminal_zero);
  }
}

TEST_CASE("verify_chain flags a non-FKG chain failure in explore mode only") {
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    const Instance inst = random_instance(seed, 2, 2, false);
    const ChainReport r = verify_chain(inst, Mode::explore);
    if (!r.holds()) {
      found = true;
      CHECK_THROWS_AS(verify_chain(inst, Mode::verify), InequalityViolation);
    }
  }
  CHECK(found);
}

TEST_CASE("lemma_check") {
  const Measure mu = random_log_supermodular(5, GroundSet(3));
  const LemmaResult plain = lemma_check(mu, subset_of({1}), subset_of({2}), SubsetId{});
  CHECK(plain.holds());
  CHECK(plain.mu_c == 1);
  CHECK(plain.mu_abc == event_prob(mu, subset_of({1, 2})));

  const LemmaResult eq = lemma_check(uniform(3), subset_of({1}), subset_of({2}), subset_of({3}));
  CHECK(eq.holds());
  CHECK(eq.mu_c * eq.mu_abc == eq.mu_ac * eq.mu_bc);

  const LemmaResult same = lemma_check(mu, subset_of({1}), subset_of({1}), subset_of({2}));
  CHECK(same.holds());
  CHECK(same.mu_c * same.mu_abc > same.mu_ac * same.mu_bc);

  const Measure at_empty(GroundSet(2), {1, 0, 0, 0});
  const LemmaResult null_c = lemma_check(at_empty, subset_of({1}), subset_of({2}), subset_of({1}));
  CHECK_FALSE(null_c.conditional_holds.has_value());
  CHECK(null_c.unconditional_holds);
}
