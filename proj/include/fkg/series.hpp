#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "fkg/lattice.hpp"
#include "fkg/measure.hpp"
#include "fkg/rational.hpp"

namespace fkg {

inline constexpr int kMaxDegree = 10;
inline constexpr int kDefaultDegree = 6;

/// Truncated power series a_0 + a_1 t + ... + a_D t^D over the rationals.
class ScalarSeries {
 public:
  /// Zero series with degree bound D (0 <= D <= 10).
  explicit ScalarSeries(int degree);
  ScalarSeries(int degree, std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int d) const { return coeffs_.at(d); }
  Rational& operator[](int d) { return coeffs_.at(d); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  friend bool operator==(const ScalarSeries&, const ScalarSeries&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Coefficientwise sum / truncated Cauchy product. Throw on mismatched D.
ScalarSeries series_add(const ScalarSeries& x, const ScalarSeries& y);
ScalarSeries series_mul(const ScalarSeries& x, const ScalarSeries& y);
ScalarSeries series_scale(const ScalarSeries& x, const Rational& s);

/// exp(x) = Σ_j x^j / j!, requires a zero constant term.
ScalarSeries series_exp(const ScalarSeries& x);
/// log(1 + x) = Σ_{i>=1} (-1)^{i+1} x^i / i, requires a zero constant term.
ScalarSeries series_log1p(const ScalarSeries& x);

/// p = p_1 t + ... + p_D t^D with monotone-combination coefficients.
class FnSeries {
 public:
  /// `coeffs[d-1]` is p_d; coeffs.size() is the degree bound D (1..10).
  /// In the default (verify) form every coefficient must lie in the cone.
  explicit FnSeries(std::vector<MonotoneComb> coeffs, bool allow_signed = false);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  /// p_d for 1 <= d <= D.
  const MonotoneComb& coeff(int d) const { return coeffs_.at(d - 1); }

 private:
  std::vector<MonotoneComb> coeffs_;
};

/// Scalar series whose t^d coefficient is <(p^i)_d>_μ. Zero for i > D.
ScalarSeries fn_power_expectation(const Measure& mu, const FnSeries& p, int i);

/// 1 - exp(-Σ_{i=1}^{D} (1/i) <p^i>_μ), truncated at D.
ScalarSeries lhs_series(const Measure& mu, const FnSeries& p);

/// t^d coefficient: Σ_{n=1}^{d} (1/n!) Σ_{compositions (i_1..i_n) of d}
/// E_n(p_{i_1}, ..., p_{i_n}).
ScalarSeries rhs_series(const Measure& mu, const FnSeries& p);
/// Same sum with every E_n evaluated through e_n_multilinear (atom grid).
/// Slower, D <= 8; kept as an independent cross-check.
ScalarSeries rhs_series_atomwise(const Measure& mu, const FnSeries& p);

struct IdentityResult {
  bool holds = true;
  std::optional<int> first_mismatch;
  ScalarSeries lhs{0};
  ScalarSeries rhs{0};
};

IdentityResult verify_identity_e4(const Measure& mu, const FnSeries& p);

struct NonnegResult {
  bool holds = true;
  std::optional<int> first_negative;
  ScalarSeries lhs{0};
};

NonnegResult check_nonneg_e2(const Measure& mu, const FnSeries& p);

/// Calls fn(parts) for every composition of d into exactly n positive parts.
/// A composition is a choice of n-1 cut points among the d-1 gaps.
template <typename Fn>
void for_each_composition(int d, int n, Fn&& fn) {
  if (n < 1 || d < n) return;
  std::vector<int> parts;
  for (std::uint32_t cuts = 0; cuts < (1u << (d - 1)); ++cuts) {
    if (std::popcount(cuts) != n - 1) continue;
    parts.clear();
    int run = 1;
    for (int gap = 0; gap < d - 1; ++gap) {
      if (cuts >> gap & 1u) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    fn(static_cast<const std::vector<int>&>(parts));
  }
}

}  // namespace fkg
