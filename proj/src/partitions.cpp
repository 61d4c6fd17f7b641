#include "fkg/partitions.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <mutex>
#include <string>

namespace fkg {

namespace {

void check_n(int n) {
  if (n < 1 || n > kMaxPartitionSize) {
    throw Error("partition size n=" + std::to_string(n) + " outside [1, 8]");
  }
}

}  // namespace

SetPartition::SetPartition(int n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)) {
  check_n(n);
  std::uint32_t seen = 0;
  for (auto& block : blocks_) {
    if (block.empty()) throw Error("set partition has an empty block");
    for (int e : block) {
      if (e < 1 || e > n) throw Error("element " + std::to_string(e) + " outside [1, n]");
      const std::uint32_t bit = 1u << (e - 1);
      if (seen & bit) throw Error("element " + std::to_string(e) + " appears in two blocks");
      seen |= bit;
    }
    std::sort(block.begin(), block.end());
  }
  if (seen != (1u << n) - 1u) throw Error("blocks do not cover [n]");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

std::uint32_t SetPartition::block_mask(std::size_t i) const {
  std::uint32_t mask = 0;
  for (int e : blocks_.at(i)) mask |= 1u << (e - 1);
  return mask;
}

IntPartition::IntPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw Error("integer partition needs at least one part");
  for (int p : parts_) {
    if (p < 1) throw Error("integer partition part " + std::to_string(p) + " is not positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int IntPartition::n() const {
  int sum = 0;
  for (int p : parts_) sum += p;
  return sum;
}

std::map<int, int> IntPartition::multiplicities() const {
  std::map<int, int> q;
  for (int p : parts_) ++q[p];
  return q;
}

SetPartitionStream::SetPartitionStream(int n) : n_(n), rgs_(n, 0), prefix_max_(n, 0) {
  check_n(n);
}

bool SetPartitionStream::next() {
  if (!started_) {
    started_ = true;
    return true;
  }
  // Increment the rightmost position that can still grow, reset the tail.
  for (int i = n_ - 1; i >= 1; --i) {
    if (rgs_[i] <= prefix_max_[i - 1]) {
      ++rgs_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
      for (int j = i + 1; j < n_; ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

SetPartition SetPartitionStream::current() const {
  std::vector<std::vector<int>> blocks(prefix_max_.back() + 1);
  for (int i = 0; i < n_; ++i) blocks[rgs_[i]].push_back(i + 1);
  return SetPartition(n_, std::move(blocks));
}

std::vector<SetPartition> enumerate_set_partitions(int n) {
  std::vector<SetPartition> out;
  SetPartitionStream stream(n);
  while (stream.next()) out.push_back(stream.current());
  return out;
}

IntPartition shape(const SetPartition& sigma) {
  std::vector<int> sizes;
  for (const auto& b : sigma.blocks()) sizes.push_back(static_cast<int>(b.size()));
  return IntPartition(std::move(sizes));
}

Integer c_lambda(const IntPartition& lam) {
  Integer out = lam.length() % 2 == 1 ? 1 : -1;
  for (int p : lam.parts()) out *= factorial(p - 1);
  return out;
}

Integer count_by_shape(const IntPartition& lam) {
  Integer denom = 1;
  for (auto [part, q] : lam.multiplicities()) {
    Integer fp;
    mpz_pow_ui(fp.get_mpz_t(), factorial(part).get_mpz_t(), q);
    denom *= fp * factorial(q);
  }
  return factorial(lam.n()) / denom;
}

const std::vector<int>& block_of(const SetPartition& sigma, int e) {
  for (const auto& b : sigma.blocks()) {
    if (std::binary_search(b.begin(), b.end(), e)) return b;
  }
  throw Error("element " + std::to_string(e) + " not in [n]");
}

std::vector<IntPartition> integer_partitions(int n) {
  if (n < 1) throw Error("integer_partitions needs n >= 1");
  std::vector<IntPartition> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Integer bell_number(int n) {
  if (n < 0) throw Error("bell_number needs n >= 0");
  std::vector<Integer> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<Integer> next{row.back()};
    for (const auto& x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

const std::vector<PartitionTerm>& partition_terms(int n) {
  if (n < 1 || n > kMaxTermSize) {
    throw Error("partition table size n=" + std::to_string(n) + " outside [1, 10]");
  }
  static std::array<std::once_flag, kMaxTermSize + 1> once;
  static std::array<std::vector<PartitionTerm>, kMaxTermSize + 1> table;
  std::call_once(once[n], [n] {
    // Restricted growth strings, same order as SetPartitionStream.
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int max_label) {
      if (pos == n) {
        PartitionTerm term;
        term.blocks.assign(max_label + 1, 0);
        for (int i = 0; i < n; ++i) term.blocks[rgs[i]] |= 1u << i;
        std::vector<int> sizes;
        for (std::uint32_t b : term.blocks) sizes.push_back(std::popcount(b));
        term.coefficient = c_lambda(IntPartition(std::move(sizes))).get_si();
        table[n].push_back(std::move(term));
        return;
      }
      for (int label = 0; label <= max_label + 1; ++label) {
        rgs[pos] = label;
        rec(pos + 1, std::max(max_label, label));
      }
    };
    rec(1, 0);
  });
  return table[n];
}

}  // namespace fkg
