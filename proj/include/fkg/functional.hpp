#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fkg/lattice.hpp"
#include "fkg/measure.hpp"
#include "fkg/partitions.hpp"
#include "fkg/rational.hpp"

namespace fkg {

/// Verify mode asserts the inequalities that hold under the FKG hypothesis
/// and throws InequalityViolation when one fails. Explore mode only reports.
enum class Mode { verify, explore };

class InequalityViolation : public Error {
 public:
  using Error::Error;
};

/// A measure together with n unimodal functions f_1..f_n (supports A_i = <C_i>).
class Instance {
 public:
  /// 1 <= n <= 8, every generator inside the measure's ground set.
  Instance(Measure mu, std::vector<UnimodalFn> fns);
  Instance(Measure mu, std::span<const SubsetId> generators);

  const Measure& measure() const { return mu_; }
  const std::vector<UnimodalFn>& fns() const { return fns_; }
  int n() const { return static_cast<int>(fns_.size()); }
  /// C_i for 1-based i.
  SubsetId generator(int i) const { return fns_.at(i - 1).generator(); }
  /// Union of C_i over the 0-based index mask.
  SubsetId generator_union(std::uint32_t index_mask) const;
  /// μ(⋂_{i ∈ mask} A_i).
  const Rational& prob(std::uint32_t index_mask) const;

 private:
  Measure mu_;
  std::vector<UnimodalFn> fns_;
};

/// Index subsets of [n] are passed as 1-based element lists.
Rational e_delta(const Instance& inst, std::span<const int> delta);
Rational e_sigma(const Instance& inst, const SetPartition& sigma);
Rational e_lambda(const Instance& inst, const IntPartition& lam);
/// E_{n,μ} = Σ_λ c_λ E_λ. In verify mode a negative value throws.
Rational e_n(const Instance& inst, Mode mode = Mode::explore);

/// E_n on nonnegative combinations, by multilinear expansion over the atom
/// grid: Σ ∏ coefs · e_n(atoms).
Rational e_n_multilinear(const Measure& mu, std::span<const MonotoneComb> combs);
/// E_n on combinations evaluated directly: E_δ = <∏_{i∈δ} f_i>_μ with the
/// pointwise products expanded first, then Σ_σ c_λ ∏ E_{σ_i}.
Rational e_n_direct(const Measure& mu, std::span<const MonotoneComb> combs);

/// I_n = (n-1)! μ(⋂A_i) - E_n.
Rational i_n(const Instance& inst);

/// E^k_σ, 0 <= k <= n-1. The block holding n contributes
/// μ(A_n)^{|[k]∩σ(A_n)|} μ(⋂_{i∈σ(A_n)} A_i); every other block β contributes
/// μ(A_n)^{max(|β∩[k]|-1, 0)} μ(⋂_{i∈β∩[k]} (A_i∩A_n) ∩ ⋂_{i∈β∖[k]} A_i).
Rational ek_sigma(const Instance& inst, const SetPartition& sigma, int k);
Rational ek_n(const Instance& inst, int k);
/// I^k = μ(A_n)^k μ(⋂A_i) - E^k.
Rational ik_n(const Instance& inst, int k);
/// (n-1)! μ(A_n)^k μ(⋂A_i) - E^k. Agrees with I_n at k = 0; differs from
/// ik_n by ((n-1)! - 1) μ(A_n)^k μ(⋂A_i).
Rational ik_n_factorial(const Instance& inst, int k);

/// One level of the recursive descent: the measure conditioned on the union
/// of the distinguished generators chosen so far.
struct DescentLevel {
  int distinguished = 0;      // 1-based index of the original function made last
  SubsetId event;             // cumulative conditioning generator
  Rational event_prob;        // μ(<event>) under the original measure
  Rational e0;                // E_n at this level
  bool chain_holds = true;    // E^k >= E^{k+1}, I-chain, E^k >= 0, terminal equality
  bool null_event = false;    // conditioning event has probability 0
};

struct ChainReport {
  std::vector<Rational> e_values;   // E^k, k = 0..n-1
  std::vector<Rational> i_values;   // I^k, k = 0..n-1
  std::vector<bool> decreasing;     // E^k >= E^{k+1}, size n-1
  std::vector<bool> i_chain;        // I^{k+1} >= μ(A_n) I^k, size n-1
  std::vector<bool> nonnegative;    // E^k >= 0, size n
  bool terminal_equality = true;    // E^{n-1} = μ(A_n)^n E_{n,μ_{A_n}}
  bool trivially_terminated = false;  // μ(A_n) = 0
  std::vector<DescentLevel> descent;
  bool descent_terminal_zero = true;  // E_n(1,...,1) = 0 at the bottom
  bool descent_trivially_terminated = false;

  bool holds() const;
};

/// Evaluates the E^k / I^k family, the chain inequalities, the terminal
/// equality, and the recursive descent. The caller is responsible for the
/// FKG hypothesis; in verify mode any failed check throws.
ChainReport verify_chain(const Instance& inst, Mode mode = Mode::explore);

struct LemmaResult {
  bool unconditional_holds = true;  // μ(C)μ(A∩B∩C) >= μ(A∩C)μ(B∩C)
  std::optional<bool> conditional_holds;  // μ_C(A∩B) >= μ_C(A)μ_C(B); empty if μ(C)=0
  Rational mu_c;
  Rational mu_abc;
  Rational mu_ac;
  Rational mu_bc;

  bool holds() const { return unconditional_holds && conditional_holds.value_or(true); }
};

LemmaResult lemma_check(const Measure& mu, SubsetId a, SubsetId b, SubsetId c);

}  // namespace fkg
