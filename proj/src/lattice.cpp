#include "fkg/lattice.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace fkg {

SubsetId subset_of(std::initializer_list<int> elements) {
  SubsetId out;
  for (int e : elements) {
    if (e < 1 || e > kMaxGroundSize) throw Error("element " + std::to_string(e) + " outside [1, 12]");
    out.bits |= 1u << (e - 1);
  }
  return out;
}

int cardinality(SubsetId a) { return std::popcount(a.bits); }

GroundSet::GroundSet(int m) : m_(m) {
  if (m < 1 || m > kMaxGroundSize) {
    throw Error("ground set size m=" + std::to_string(m) + " outside [1, 12]");
  }
}

int eval_unimodal(UnimodalFn f, SubsetId a) { return is_subset(f.generator(), a) ? 1 : 0; }

UnimodalFn product_generator(std::span<const UnimodalFn> fns) {
  if (fns.empty()) throw Error("product_generator needs at least one function");
  SubsetId gen;
  for (const auto& f : fns) gen = join(gen, f.generator());
  return UnimodalFn(gen);
}

MonotoneComb::MonotoneComb(std::vector<CombTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (sgn(t.coef) < 0) {
      throw Error("negative coefficient " + to_string(t.coef) + " in monotone combination");
    }
  }
}

MonotoneComb MonotoneComb::signed_unchecked(std::vector<CombTerm> terms) {
  MonotoneComb out;
  out.terms_ = std::move(terms);
  return out;
}

MonotoneComb MonotoneComb::atom(Rational coef, SubsetId gen) {
  return MonotoneComb({CombTerm{std::move(coef), gen}});
}

bool MonotoneComb::in_cone() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const CombTerm& t) { return sgn(t.coef) >= 0; });
}

MonotoneComb MonotoneComb::canonical() const {
  std::vector<CombTerm> sorted = terms_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CombTerm& a, const CombTerm& b) { return a.gen < b.gen; });
  std::vector<CombTerm> merged;
  for (auto& t : sorted) {
    if (!merged.empty() && merged.back().gen == t.gen) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const CombTerm& t) { return sgn(t.coef) == 0; });
  return signed_unchecked(std::move(merged));
}

Rational eval_comb(const MonotoneComb& f, SubsetId a) {
  Rational sum(0);
  for (const auto& t : f.terms()) {
    if (is_subset(t.gen, a)) sum += t.coef;
  }
  return sum;
}

MonotoneComb pointwise_product(const MonotoneComb& f, const MonotoneComb& g) {
  std::vector<CombTerm> terms;
  terms.reserve(f.terms().size() * g.terms().size());
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) terms.push_back({a.coef * b.coef, join(a.gen, b.gen)});
  }
  return MonotoneComb::signed_unchecked(std::move(terms)).canonical();
}

MonotoneComb operator+(const MonotoneComb& f, const MonotoneComb& g) {
  std::vector<CombTerm> terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return MonotoneComb::signed_unchecked(std::move(terms)).canonical();
}

MonotoneComb scaled(const MonotoneComb& f, const Rational& s) {
  std::vector<CombTerm> terms = f.terms();
  for (auto& t : terms) t.coef *= s;
  return MonotoneComb::signed_unchecked(std::move(terms)).canonical();
}

bool is_monotone_table(GroundSet ground, std::span<const Rational> values) {
  if (values.size() != ground.table_size()) {
    throw Error("monotonicity table has " + std::to_string(values.size()) + " entries, expected " +
                std::to_string(ground.table_size()));
  }
  for (std::uint32_t a = 0; a < ground.table_size(); ++a) {
    for (int i = 0; i < ground.size(); ++i) {
      const std::uint32_t up = a | (1u << i);
      if (up != a && values[a] > values[up]) return false;
    }
  }
  return true;
}

}  // namespace fkg
