#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fkg/lattice.hpp"
#include "fkg/rational.hpp"

namespace fkg {

/// A probability measure on 2^[m]: exact nonnegative weights summing to 1.
///
/// Copies share the immutable weight table. The superset-sum table
/// μ(<C>) for every C is built once at construction, so event
/// probabilities needed by the functionals are O(1) lookups.
class Measure {
 public:
  /// Throws Error if a weight is negative, the table has the wrong size, or
  /// the weights do not sum to exactly 1 (the message names the deficit).
  Measure(GroundSet ground, std::vector<Rational> weights);

  GroundSet ground() const { return ground_; }
  const Rational& weight(SubsetId a) const { return data_->weights[a.bits]; }
  std::span<const Rational> weights() const { return data_->weights; }
  /// μ(<gen>), read from the precomputed upset table.
  const Rational& upset_prob(SubsetId gen) const { return data_->upset[gen.bits]; }
  /// True iff every weight is strictly positive.
  bool strictly_positive() const;

 private:
  struct Data {
    std::vector<Rational> weights;
    std::vector<Rational> upset;
  };
  GroundSet ground_;
  std::shared_ptr<const Data> data_;
};

/// Divides a nonnegative table by its exact sum. Throws "degenerate weight
/// table" when every entry is zero.
Measure normalize(GroundSet ground, std::vector<Rational> raw);

struct FkgWitness {
  SubsetId a;
  SubsetId b;
  Rational meet_join;  // μ(A∧B)μ(A∨B)
  Rational product;    // μ(A)μ(B)
};

struct FkgReport {
  bool holds = true;
  std::optional<FkgWitness> witness;
};

/// Checks μ(A∧B)μ(A∨B) >= μ(A)μ(B) over all unordered pairs; reports the
/// first violating pair (A < B, lexicographic in the characteristic index).
FkgReport check_fkg(const Measure& mu);

/// Local form: μ(A∪{i,j})μ(A) >= μ(A∪{i})μ(A∪{j}) for i<j not in A.
/// Equivalent to the full check only for strictly positive measures; throws
/// Error when some weight is zero.
FkgReport check_fkg_local(const Measure& mu);

/// μ(<gen>) = Σ_{A ⊇ gen} μ(A), by superset enumeration.
Rational event_prob(const Measure& mu, SubsetId gen);

/// μ restricted to <gen> and renormalized. Throws "conditioning on null
/// event" when μ(<gen>) = 0.
Measure conditional(const Measure& mu, SubsetId gen);

Rational expectation(const Measure& mu, const MonotoneComb& f);

/// Independent coordinates: μ(A) = ∏_{i∈A} b_i ∏_{i∉A} (1 - b_i).
Measure product_measure(std::span<const Rational> biases);

/// Ranges for the integer-based draw in random_log_supermodular.
/// Singleton weights a_i = p/q with p in [1, singleton_max], q in
/// [1, singleton_max]. Couplings b_ij = 1 + r/s with r in [0, coupling_num_max],
/// s in [1, coupling_den_max].
struct CouplingBounds {
  std::int64_t singleton_max = 9;
  std::int64_t coupling_num_max = 4;
  std::int64_t coupling_den_max = 4;
};

/// w(A) ∝ ∏_{i∈A} a_i ∏_{{i,j}⊆A} b_ij with b_ij >= 1, which is
/// log-supermodular. The result is re-checked with check_fkg.
Measure random_log_supermodular(std::uint64_t seed, GroundSet ground,
                                const CouplingBounds& bounds = {});

/// Exactly the pairwise-interaction form with explicit parameters.
/// `couplings` is indexed row-major over pairs i<j: (0,1),(0,2),...,(m-2,m-1).
Measure pairwise_measure(GroundSet ground, std::span<const Rational> singletons,
                         std::span<const Rational> couplings);

/// Unconstrained measure for exploration: integer weights in [0, max_weight],
/// roughly a third of them forced to zero. Not FKG in general.
Measure random_measure(std::uint64_t seed, GroundSet ground, std::int64_t max_weight = 6);

}  // namespace fkg
