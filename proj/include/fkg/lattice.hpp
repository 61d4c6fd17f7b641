#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "fkg/rational.hpp"

namespace fkg {

inline constexpr int kMaxGroundSize = 12;

/// A subset of the ground set [m], stored as its characteristic index:
/// bit i-1 is set iff element i belongs to the subset.
struct SubsetId {
  std::uint32_t bits = 0;

  friend constexpr auto operator<=>(SubsetId, SubsetId) = default;
};

/// Builds a SubsetId from 1-based element labels, e.g. subset_of({1, 3}).
SubsetId subset_of(std::initializer_list<int> elements);

constexpr SubsetId meet(SubsetId a, SubsetId b) { return {a.bits & b.bits}; }
constexpr SubsetId join(SubsetId a, SubsetId b) { return {a.bits | b.bits}; }
constexpr bool is_subset(SubsetId a, SubsetId b) { return (a.bits & ~b.bits) == 0; }
int cardinality(SubsetId a);

/// The ground set X = [m], 1 <= m <= 12.
class GroundSet {
 public:
  explicit GroundSet(int m);

  int size() const { return m_; }
  SubsetId universe() const { return {(1u << m_) - 1u}; }
  /// Number of subsets, 2^m.
  std::size_t table_size() const { return std::size_t{1} << m_; }
  bool contains(SubsetId a) const { return a.bits < table_size(); }

  friend bool operator==(GroundSet, GroundSet) = default;

 private:
  int m_;
};

/// Calls fn(SubsetId) for every superset of `gen` inside `ground`, by walking
/// the submasks of the complement.
template <typename Fn>
void for_each_superset(GroundSet ground, SubsetId gen, Fn&& fn) {
  const std::uint32_t free = ground.universe().bits & ~gen.bits;
  std::uint32_t sub = free;
  while (true) {
    fn(SubsetId{gen.bits | sub});
    if (sub == 0) break;
    sub = (sub - 1) & free;
  }
}

/// Indicator of the principal upset <C> = {A : A ⊇ C}.
class UnimodalFn {
 public:
  UnimodalFn() = default;
  explicit UnimodalFn(SubsetId generator) : generator_(generator) {}

  SubsetId generator() const { return generator_; }

  friend bool operator==(UnimodalFn, UnimodalFn) = default;

 private:
  SubsetId generator_;
};

/// 1 iff a ⊇ f.generator().
int eval_unimodal(UnimodalFn f, SubsetId a);

/// The product of principal-upset indicators is the indicator of the upset
/// generated by the union of their generators. Throws on an empty list.
UnimodalFn product_generator(std::span<const UnimodalFn> fns);

struct CombTerm {
  Rational coef;
  SubsetId gen;
};

/// f = Σ_j c_j · 1_<C_j>, a member of the nonnegative-unimodal cone.
///
/// The regular constructor rejects negative coefficients. Signed combinations
/// exist only for exploration outside the cone and must be built explicitly
/// through `signed_unchecked`.
class MonotoneComb {
 public:
  MonotoneComb() = default;
  explicit MonotoneComb(std::vector<CombTerm> terms);

  static MonotoneComb signed_unchecked(std::vector<CombTerm> terms);
  static MonotoneComb atom(Rational coef, SubsetId gen);

  const std::vector<CombTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// True iff every coefficient is >= 0.
  bool in_cone() const;

  /// Merges equal generators, drops zero coefficients and sorts by generator.
  MonotoneComb canonical() const;

 private:
  std::vector<CombTerm> terms_;
};

Rational eval_comb(const MonotoneComb& f, SubsetId a);

/// Pointwise product, expanded bilinearly over atoms (generators join).
MonotoneComb pointwise_product(const MonotoneComb& f, const MonotoneComb& g);
MonotoneComb operator+(const MonotoneComb& f, const MonotoneComb& g);
MonotoneComb scaled(const MonotoneComb& f, const Rational& s);

/// `values` holds one entry per subset of `ground`, indexed by SubsetId.
/// True iff f(A) <= f(A ∪ {i}) for every covering pair.
bool is_monotone_table(GroundSet ground, std::span<const Rational> values);

}  // namespace fkg
