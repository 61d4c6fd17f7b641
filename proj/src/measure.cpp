#include "fkg/measure.hpp"

#include <algorithm>
#include <string>

#include "fkg/random.hpp"

namespace fkg {

namespace {

// Zeta transform over supersets: upset[C] = Σ_{A ⊇ C} w[A].
std::vector<Rational> superset_sums(GroundSet ground, const std::vector<Rational>& w) {
  std::vector<Rational> out = w;
  for (int i = 0; i < ground.size(); ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t c = 0; c < out.size(); ++c) {
      if (!(c & bit)) out[c] += out[c | bit];
    }
  }
  return out;
}

}  // namespace

Measure::Measure(GroundSet ground, std::vector<Rational> weights) : ground_(ground) {
  if (weights.size() != ground.table_size()) {
    throw Error("measure for m=" + std::to_string(ground.size()) + " needs " +
                std::to_string(ground.table_size()) + " weights, got " +
                std::to_string(weights.size()));
  }
  Rational total(0);
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (sgn(weights[a]) < 0) {
      throw Error("weights[" + std::to_string(a) + "] is negative: " + to_string(weights[a]));
    }
    total += weights[a];
  }
  if (total != 1) {
    throw Error("weights sum to " + to_string(total) + ", deficit " + to_string(Rational(1) - total));
  }
  auto data = std::make_shared<Data>();
  data->upset = superset_sums(ground, weights);
  data->weights = std::move(weights);
  data_ = std::move(data);
}

bool Measure::strictly_positive() const {
  return std::all_of(data_->weights.begin(), data_->weights.end(),
                     [](const Rational& w) { return sgn(w) > 0; });
}

Measure normalize(GroundSet ground, std::vector<Rational> raw) {
  Rational total(0);
  for (const auto& w : raw) {
    if (sgn(w) < 0) throw Error("negative raw weight " + to_string(w));
    total += w;
  }
  if (sgn(total) == 0) throw Error("degenerate weight table");
  for (auto& w : raw) w /= total;
  return Measure(ground, std::move(raw));
}

FkgReport check_fkg(const Measure& mu) {
  const auto w = mu.weights();
  const std::uint32_t size = static_cast<std::uint32_t>(w.size());
  Rational lhs, rhs;
  for (std::uint32_t a = 0; a < size; ++a) {
    if (sgn(w[a]) == 0) continue;  // the right-hand side vanishes
    for (std::uint32_t b = a + 1; b < size; ++b) {
      if (sgn(w[b]) == 0) continue;
      rhs = w[a] * w[b];
      lhs = w[a & b] * w[a | b];
      if (lhs < rhs) return {false, FkgWitness{{a}, {b}, lhs, rhs}};
    }
  }
  return {};
}

FkgReport check_fkg_local(const Measure& mu) {
  if (!mu.strictly_positive()) {
    throw Error("local FKG check requires strictly positive weights");
  }
  const auto w = mu.weights();
  const int m = mu.ground().size();
  for (std::uint32_t a = 0; a < w.size(); ++a) {
    for (int i = 0; i < m; ++i) {
      if (a >> i & 1u) continue;
      for (int j = i + 1; j < m; ++j) {
        if (a >> j & 1u) continue;
        const std::uint32_t ai = a | 1u << i;
        const std::uint32_t aj = a | 1u << j;
        Rational lhs = w[ai | aj] * w[a];
        Rational rhs = w[ai] * w[aj];
        if (lhs < rhs) return {false, FkgWitness{{ai}, {aj}, std::move(lhs), std::move(rhs)}};
      }
    }
  }
  return {};
}

Rational event_prob(const Measure& mu, SubsetId gen) {
  if (!mu.ground().contains(gen)) throw Error("generator outside the ground set");
  Rational sum(0);
  for_each_superset(mu.ground(), gen, [&](SubsetId a) { sum += mu.weight(a); });
  return sum;
}

Measure conditional(const Measure& mu, SubsetId gen) {
  const Rational p = event_prob(mu, gen);
  if (sgn(p) == 0) throw Error("conditioning on null event");
  std::vector<Rational> w(mu.ground().table_size());
  for_each_superset(mu.ground(), gen, [&](SubsetId a) { w[a.bits] = mu.weight(a) / p; });
  return Measure(mu.ground(), std::move(w));
}

Rational expectation(const Measure& mu, const MonotoneComb& f) {
  Rational sum(0);
  for (const auto& t : f.terms()) sum += t.coef * event_prob(mu, t.gen);
  return sum;
}

Measure product_measure(std::span<const Rational> biases) {
  const GroundSet ground(static_cast<int>(biases.size()));
  for (std::size_t i = 0; i < biases.size(); ++i) {
    if (sgn(biases[i]) < 0 || biases[i] > 1) {
      throw Error("bias[" + std::to_string(i) + "] = " + to_string(biases[i]) + " outside [0, 1]");
    }
  }
  std::vector<Rational> w(ground.table_size());
  for (std::uint32_t a = 0; a < w.size(); ++a) {
    Rational x(1);
    for (int i = 0; i < ground.size(); ++i) x *= (a >> i & 1u) ? biases[i] : Rational(1) - biases[i];
    w[a] = x;
  }
  return Measure(ground, std::move(w));
}

Measure pairwise_measure(GroundSet ground, std::span<const Rational> singletons,
                         std::span<const Rational> couplings) {
  const int m = ground.size();
  if (singletons.size() != static_cast<std::size_t>(m) ||
      couplings.size() != static_cast<std::size_t>(m * (m - 1) / 2)) {
    throw Error("pairwise parameters do not match m=" + std::to_string(m));
  }
  for (const auto& a : singletons) {
    if (sgn(a) <= 0) throw Error("singleton weight must be positive, got " + to_string(a));
  }
  for (const auto& b : couplings) {
    if (b < 1) throw Error("coupling must be >= 1, got " + to_string(b));
  }
  std::vector<Rational> raw(ground.table_size());
  for (std::uint32_t a = 0; a < raw.size(); ++a) {
    Rational x(1);
    std::size_t pair = 0;
    for (int i = 0; i < m; ++i) {
      if (a >> i & 1u) x *= singletons[i];
      for (int j = i + 1; j < m; ++j, ++pair) {
        if ((a >> i & 1u) && (a >> j & 1u)) x *= couplings[pair];
      }
    }
    raw[a] = x;
  }
  return normalize(ground, std::move(raw));
}

Measure random_log_supermodular(std::uint64_t seed, GroundSet ground, const CouplingBounds& bounds) {
  if (bounds.singleton_max < 1 || bounds.coupling_num_max < 0 || bounds.coupling_den_max < 1) {
    throw Error("invalid coupling bounds");
  }
  Rng rng(seed);
  const int m = ground.size();
  std::vector<Rational> singletons;
  for (int i = 0; i < m; ++i) {
    singletons.push_back(rng.rational(1, bounds.singleton_max, bounds.singleton_max));
  }
  std::vector<Rational> couplings;
  for (int p = 0; p < m * (m - 1) / 2; ++p) {
    couplings.push_back(Rational(1) +
                        rng.rational(0, bounds.coupling_num_max, bounds.coupling_den_max));
  }
  Measure mu = pairwise_measure(ground, singletons, couplings);
  if (!check_fkg(mu).holds) {
    throw Error("internal error: pairwise generator produced a non-FKG measure");
  }
  return mu;
}

Measure random_measure(std::uint64_t seed, GroundSet ground, std::int64_t max_weight) {
  Rng rng(seed);
  std::vector<Rational> raw(ground.table_size());
  for (auto& w : raw) {
    w = rng.uniform(0, 2) == 0 ? 0 : rng.uniform(0, max_weight);
  }
  if (std::all_of(raw.begin(), raw.end(), [](const Rational& w) { return sgn(w) == 0; })) {
    raw[rng.uniform(0, static_cast<std::int64_t>(raw.size()) - 1)] = 1;
  }
  return normalize(ground, std::move(raw));
}

}  // namespace fkg
