#include "fkg/functional.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace fkg {

namespace {

void check_index_count(int n) {
  if (n < 1 || n > kMaxPartitionSize) {
    throw Error("instance needs 1 <= n <= 8 functions, got " + std::to_string(n));
  }
}

std::vector<UnimodalFn> to_fns(std::span<const SubsetId> gens) {
  std::vector<UnimodalFn> fns;
  for (SubsetId g : gens) fns.emplace_back(g);
  return fns;
}


std::vector<std::uint32_t> block_masks(const SetPartition& sigma) {
  std::vector<std::uint32_t> out;
  for (std::size_t b = 0; b < sigma.blocks().size(); ++b) out.push_back(sigma.block_mask(b));
  return out;
}

// Σ_σ c_λ ∏_blocks value(block) for a table indexed by index masks.
Rational partition_sum(int n, std::span<const Rational> by_mask) {
  Rational total(0), term;
  for (const auto& p : partition_terms(n)) {
    term = p.coefficient;
    for (std::uint32_t b : p.blocks) term *= by_mask[b];
    total += term;
  }
  return total;
}

Rational e_n_of_generators(const Measure& mu, std::span<const SubsetId> gens) {
  const int n = static_cast<int>(gens.size());
  std::vector<Rational> by_mask(std::size_t{1} << n);
  std::vector<std::uint32_t> unions(by_mask.size(), 0);
  for (std::uint32_t s = 1; s < by_mask.size(); ++s) {
    const int low = std::countr_zero(s);
    unions[s] = unions[s & (s - 1)] | gens[low].bits;
    by_mask[s] = mu.upset_prob({unions[s]});
  }
  return partition_sum(n, by_mask);
}

Rational ek_blocks(const Instance& inst, std::span<const std::uint32_t> blocks, int k,
                   const Rational& an) {
  const int n = inst.n();
  const std::uint32_t last = 1u << (n - 1);
  const std::uint32_t prefix = (1u << k) - 1u;
  const SubsetId cn = inst.generator(n);
  Rational value(1);
  for (std::uint32_t block : blocks) {
    const std::uint32_t in_prefix = block & prefix;
    const int count = std::popcount(in_prefix);
    SubsetId gen = inst.generator_union(block);
    int exponent;
    if (block & last) {
      exponent = count;
    } else {
      exponent = std::max(count - 1, 0);
      if (in_prefix) gen = join(gen, cn);
    }
    value *= inst.measure().upset_prob(gen);
    if (exponent > 0) value *= pow(an, static_cast<unsigned>(exponent));
  }
  return value;
}

void check_k(const Instance& inst, int k) {
  if (k < 0 || k > inst.n() - 1) {
    throw Error("k=" + std::to_string(k) + " outside [0, n-1] for n=" + std::to_string(inst.n()));
  }
}

struct LevelChain {
  std::vector<Rational> e;
  std::vector<Rational> i;
  std::vector<bool> decreasing, i_chain, nonnegative;
  bool terminal = true;
  bool trivial = false;

  bool holds() const {
    auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    return all(decreasing) && all(i_chain) && all(nonnegative) && terminal;
  }
};

LevelChain level_chain(const Instance& inst) {
  const int n = inst.n();
  const Rational& an = inst.prob(1u << (n - 1));
  LevelChain out;
  for (int k = 0; k < n; ++k) {
    out.e.push_back(ek_n(inst, k));
    out.i.push_back(pow(an, k) * inst.prob((1u << n) - 1u) - out.e.back());
  }
  for (int k = 0; k + 1 < n; ++k) {
    out.decreasing.push_back(out.e[k] >= out.e[k + 1]);
    out.i_chain.push_back(out.i[k + 1] >= an * out.i[k]);
  }
  for (int k = 0; k < n; ++k) out.nonnegative.push_back(sgn(out.e[k]) >= 0);
  if (sgn(an) == 0) {
    out.trivial = true;
    out.terminal = sgn(out.e[n - 1]) == 0;
  } else {
    const Instance cond(conditional(inst.measure(), inst.generator(n)), inst.fns());
    out.terminal = out.e[n - 1] == pow(an, n) * e_n(cond);
  }
  return out;
}

}  // namespace

Instance::Instance(Measure mu, std::vector<UnimodalFn> fns) : mu_(std::move(mu)), fns_(std::move(fns)) {
  check_index_count(n());
  for (std::size_t i = 0; i < fns_.size(); ++i) {
    if (!mu_.ground().contains(fns_[i].generator())) {
      throw Error("generators[" + std::to_string(i) + "] = " + std::to_string(fns_[i].generator().bits) +
                  " outside the ground set");
    }
  }
}

Instance::Instance(Measure mu, std::span<const SubsetId> generators)
    : Instance(std::move(mu), to_fns(generators)) {}

SubsetId Instance::generator_union(std::uint32_t index_mask) const {
  SubsetId out;
  for (int i = 0; i < n(); ++i) {
    if (index_mask >> i & 1u) out = join(out, fns_[i].generator());
  }
  return out;
}

const Rational& Instance::prob(std::uint32_t index_mask) const {
  return mu_.upset_prob(generator_union(index_mask));
}

Rational e_delta(const Instance& inst, std::span<const int> delta) {
  if (delta.empty()) throw Error("E_delta needs a nonempty index set");
  std::vector<UnimodalFn> factors;
  for (int e : delta) {
    if (e < 1 || e > inst.n()) throw Error("index " + std::to_string(e) + " outside [1, n]");
    factors.push_back(inst.fns()[e - 1]);
  }
  return event_prob(inst.measure(), product_generator(factors).generator());
}

Rational e_sigma(const Instance& inst, const SetPartition& sigma) {
  if (sigma.n() != inst.n()) throw Error("partition size does not match instance");
  Rational value(1);
  for (const auto& block : sigma.blocks()) value *= e_delta(inst, block);
  return value;
}

Rational e_lambda(const Instance& inst, const IntPartition& lam) {
  if (lam.n() != inst.n()) throw Error("shape does not partition n");
  Rational sum(0);
  SetPartitionStream stream(inst.n());
  while (stream.next()) {
    const SetPartition sigma = stream.current();
    if (shape(sigma) == lam) sum += e_sigma(inst, sigma);
  }
  return sum;
}

Rational e_n(const Instance& inst, Mode mode) {
  std::vector<SubsetId> gens;
  for (const auto& f : inst.fns()) gens.push_back(f.generator());
  Rational value = e_n_of_generators(inst.measure(), gens);
  if (mode == Mode::verify && sgn(value) < 0) {
    throw InequalityViolation("E_n = " + to_string(value) + " < 0");
  }
  return value;
}

Rational e_n_multilinear(const Measure& mu, std::span<const MonotoneComb> combs) {
  const int n = static_cast<int>(combs.size());
  check_index_count(n);
  std::vector<SubsetId> gens(n);
  Rational total(0);
  // Odometer over one atom per comb.
  std::vector<std::size_t> pick(n, 0);
  for (const auto& c : combs) {
    if (c.empty()) return total;
  }
  while (true) {
    Rational coef(1);
    for (int i = 0; i < n; ++i) {
      const auto& t = combs[i].terms()[pick[i]];
      coef *= t.coef;
      gens[i] = t.gen;
    }
    if (sgn(coef) != 0) total += coef * e_n_of_generators(mu, gens);
    int i = 0;
    while (i < n && ++pick[i] == combs[i].terms().size()) pick[i++] = 0;
    if (i == n) break;
  }
  return total;
}

Rational e_n_direct(const Measure& mu, std::span<const MonotoneComb> combs) {
  const int n = static_cast<int>(combs.size());
  check_index_count(n);
  std::vector<MonotoneComb> products(std::size_t{1} << n);
  std::vector<Rational> by_mask(products.size());
  for (std::uint32_t s = 1; s < products.size(); ++s) {
    const int low = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    products[s] = rest == 0 ? combs[low].canonical() : pointwise_product(products[rest], combs[low]);
    by_mask[s] = expectation(mu, products[s]);
  }
  return partition_sum(n, by_mask);
}

Rational i_n(const Instance& inst) {
  const int n = inst.n();
  return Rational(factorial(n - 1)) * inst.prob((1u << n) - 1u) - e_n(inst);
}

Rational ek_sigma(const Instance& inst, const SetPartition& sigma, int k) {
  check_k(inst, k);
  if (sigma.n() != inst.n()) throw Error("partition size does not match instance");
  const auto blocks = block_masks(sigma);
  return ek_blocks(inst, blocks, k, inst.prob(1u << (inst.n() - 1)));
}

Rational ek_n(const Instance& inst, int k) {
  check_k(inst, k);
  const Rational& an = inst.prob(1u << (inst.n() - 1));
  Rational total(0);
  for (const auto& p : partition_terms(inst.n())) {
    total += p.coefficient * ek_blocks(inst, p.blocks, k, an);
  }
  return total;
}

Rational ik_n(const Instance& inst, int k) {
  const int n = inst.n();
  return pow(inst.prob(1u << (n - 1)), k) * inst.prob((1u << n) - 1u) - ek_n(inst, k);
}

Rational ik_n_factorial(const Instance& inst, int k) {
  const int n = inst.n();
  return Rational(factorial(n - 1)) * pow(inst.prob(1u << (n - 1)), k) * inst.prob((1u << n) - 1u) -
         ek_n(inst, k);
}

bool ChainReport::holds() const {
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  const bool levels = std::all_of(descent.begin(), descent.end(),
                                  [](const DescentLevel& l) { return l.chain_holds; });
  return all(decreasing) && all(i_chain) && all(nonnegative) && terminal_equality && levels &&
         descent_terminal_zero;
}

ChainReport verify_chain(const Instance& inst, Mode mode) {
  const int n = inst.n();
  ChainReport report;

  LevelChain top = level_chain(inst);
  report.e_values = top.e;
  report.i_values = top.i;
  report.decreasing = top.decreasing;
  report.i_chain = top.i_chain;
  report.nonnegative = top.nonnegative;
  report.terminal_equality = top.terminal;
  report.trivially_terminated = top.trivial;

  // Level j conditions on the generators of the functions distinguished at
  // levels 0..j-1 (original indices n, n-1, ...), replaces every C_i by
  // C_i ∪ event, and moves function n-j to the last slot.
  SubsetId event;
  for (int level = 0; level < n; ++level) {
    const int distinguished = n - level;
    DescentLevel entry;
    entry.distinguished = distinguished;
    entry.event = event;
    entry.event_prob = inst.measure().upset_prob(event);
    if (sgn(entry.event_prob) == 0) {
      entry.null_event = true;
      entry.e0 = 0;
      report.descent.push_back(std::move(entry));
      report.descent_trivially_terminated = true;
      break;
    }
    std::vector<SubsetId> gens;
    for (int i = 1; i <= n; ++i) {
      if (i != distinguished) gens.push_back(join(inst.generator(i), event));
    }
    gens.push_back(join(inst.generator(distinguished), event));
    const Instance level_inst(level == 0 ? inst.measure() : conditional(inst.measure(), event), gens);
    const LevelChain chain = level == 0 ? top : level_chain(level_inst);
    entry.e0 = chain.e.front();
    entry.chain_holds = chain.holds();
    report.descent.push_back(std::move(entry));
    event = join(event, inst.generator(distinguished));
  }

  // Bottom of the descent: every function is the constant 1 under the
  // measure conditioned on ⋂A_i. E_1(1) = 1, so only n >= 2 terminates at 0.
  if (n >= 2 && !report.descent_trivially_terminated) {
    if (sgn(inst.measure().upset_prob(event)) == 0) {
      report.descent_trivially_terminated = true;
    } else {
      const Measure bottom = conditional(inst.measure(), event);
      std::vector<SubsetId> gens(n, event);
      report.descent_terminal_zero = sgn(e_n_of_generators(bottom, gens)) == 0;
    }
  }

  if (mode == Mode::verify && !report.holds()) {
    throw InequalityViolation("interpolation chain check failed");
  }
  return report;
}

LemmaResult lemma_check(const Measure& mu, SubsetId a, SubsetId b, SubsetId c) {
  LemmaResult r;
  r.mu_c = event_prob(mu, c);
  r.mu_abc = event_prob(mu, join(join(a, b), c));
  r.mu_ac = event_prob(mu, join(a, c));
  r.mu_bc = event_prob(mu, join(b, c));
  r.unconditional_holds = r.mu_c * r.mu_abc >= r.mu_ac * r.mu_bc;
  if (sgn(r.mu_c) > 0) {
    const Measure cond = conditional(mu, c);
    r.conditional_holds = event_prob(cond, join(a, b)) >= event_prob(cond, a) * event_prob(cond, b);
  }
  return r;
}

}  // namespace fkg
