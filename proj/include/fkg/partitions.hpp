#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fkg/rational.hpp"

namespace fkg {

inline constexpr int kMaxPartitionSize = 8;

/// A partition of [n] into nonempty blocks. Elements are 1-based; each block
/// is sorted and blocks are ordered by their minimal element.
class SetPartition {
 public:
  /// Validates disjointness and cover of [n], then canonicalizes.
  SetPartition(int n, std::vector<std::vector<int>> blocks);

  int n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// Block i as a bitmask over [n]: bit e-1 set iff e is in the block.
  std::uint32_t block_mask(std::size_t i) const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
};

/// λ_1 >= λ_2 >= ... >= λ_ℓ >= 1.
class IntPartition {
 public:
  /// Sorts the parts into nonincreasing order; rejects nonpositive parts.
  explicit IntPartition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int n() const;
  int length() const { return static_cast<int>(parts_.size()); }
  /// q_i = number of parts equal to i.
  std::map<int, int> multiplicities() const;

  friend auto operator<=>(const IntPartition&, const IntPartition&) = default;

 private:
  std::vector<int> parts_;
};

/// Streams the set partitions of [n] in restricted-growth-string
/// lexicographic order. 1 <= n <= 8.
class SetPartitionStream {
 public:
  explicit SetPartitionStream(int n);

  /// Advances to the next partition; false once the stream is exhausted.
  /// The first call yields the single-block partition.
  bool next();
  SetPartition current() const;
  /// Restricted growth string a_1..a_n (a_1 = 0, a_{i+1} <= max(a_1..a_i) + 1).
  const std::vector<int>& growth_string() const { return rgs_; }

 private:
  int n_;
  bool started_ = false;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
};

std::vector<SetPartition> enumerate_set_partitions(int n);

IntPartition shape(const SetPartition& sigma);

/// c_λ = (-1)^{ℓ+1} ∏ (λ_i - 1)!
Integer c_lambda(const IntPartition& lam);

/// n! / ∏_i (i!)^{q_i} q_i!, the number of set partitions with shape λ.
Integer count_by_shape(const IntPartition& lam);

/// The 1-based block of `sigma` that contains element e.
const std::vector<int>& block_of(const SetPartition& sigma, int e);

/// All λ ⊢ n, parts nonincreasing, in reverse lexicographic order ((n) first).
std::vector<IntPartition> integer_partitions(int n);

/// Bell numbers via the Bell triangle.
Integer bell_number(int n);

/// One set partition of [n] in the compact form used by the evaluation loops:
/// blocks as bitmasks over 0-based indices, with its c_λ weight.
struct PartitionTerm {
  std::vector<std::uint32_t> blocks;
  long coefficient;
};

inline constexpr int kMaxTermSize = 10;

/// Cached table of every set partition of [n] with its c_λ, 1 <= n <= 10,
/// in restricted-growth-string order. Sizes above 8 serve the series engine.
const std::vector<PartitionTerm>& partition_terms(int n);

}  // namespace fkg
