#include "fkg/series.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fkg/functional.hpp"
#include "fkg/partitions.hpp"

namespace fkg {

namespace {

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxDegree) {
    throw Error("series degree D=" + std::to_string(degree) + " outside [0, 10]");
  }
}

void check_same_degree(const ScalarSeries& x, const ScalarSeries& y) {
  if (x.degree() != y.degree()) {
    throw Error("series degree mismatch: " + std::to_string(x.degree()) + " vs " +
                std::to_string(y.degree()));
  }
}

void check_zero_constant(const ScalarSeries& x, const char* what) {
  if (sgn(x[0]) != 0) throw Error(std::string(what) + " needs a zero constant term");
}

// Coefficients of p^i as function series, index = degree (0..D); entry 0 empty.
std::vector<std::vector<MonotoneComb>> fn_powers(const FnSeries& p) {
  const int D = p.degree();
  std::vector<std::vector<MonotoneComb>> powers(D + 1);
  powers[1].resize(D + 1);
  for (int d = 1; d <= D; ++d) powers[1][d] = p.coeff(d).canonical();
  for (int i = 2; i <= D; ++i) {
    powers[i].resize(D + 1);
    for (int d = i; d <= D; ++d) {
      MonotoneComb acc;
      for (int e = i - 1; e <= d - 1; ++e) {
        const MonotoneComb& prev = powers[i - 1][e];
        const MonotoneComb& step = powers[1][d - e];
        if (prev.empty() || step.empty()) continue;
        acc = acc + pointwise_product(prev, step);
      }
      powers[i][d] = std::move(acc);
    }
  }
  return powers;
}

}  // namespace

ScalarSeries::ScalarSeries(int degree) {
  check_degree(degree);
  coeffs_.assign(degree + 1, Rational(0));
}

ScalarSeries::ScalarSeries(int degree, std::vector<Rational> coeffs) : ScalarSeries(degree) {
  if (coeffs.size() > coeffs_.size()) throw Error("more coefficients than the degree bound allows");
  std::move(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

ScalarSeries series_add(const ScalarSeries& x, const ScalarSeries& y) {
  check_same_degree(x, y);
  ScalarSeries out(x.degree());
  for (int d = 0; d <= x.degree(); ++d) out[d] = x[d] + y[d];
  return out;
}

ScalarSeries series_mul(const ScalarSeries& x, const ScalarSeries& y) {
  check_same_degree(x, y);
  const int D = x.degree();
  ScalarSeries out(D);
  for (int a = 0; a <= D; ++a) {
    if (sgn(x[a]) == 0) continue;
    for (int b = 0; a + b <= D; ++b) out[a + b] += x[a] * y[b];
  }
  return out;
}

ScalarSeries series_scale(const ScalarSeries& x, const Rational& s) {
  ScalarSeries out(x.degree());
  for (int d = 0; d <= x.degree(); ++d) out[d] = x[d] * s;
  return out;
}

ScalarSeries series_exp(const ScalarSeries& x) {
  check_zero_constant(x, "series_exp");
  const int D = x.degree();
  ScalarSeries out(D);
  ScalarSeries power(D);
  power[0] = 1;
  for (int j = 0; j <= D; ++j) {
    out = series_add(out, series_scale(power, Rational(1, 1) / Rational(factorial(j))));
    power = series_mul(power, x);
  }
  return out;
}

ScalarSeries series_log1p(const ScalarSeries& x) {
  check_zero_constant(x, "series_log1p");
  const int D = x.degree();
  ScalarSeries out(D);
  ScalarSeries power = x;
  for (int i = 1; i <= D; ++i) {
    out = series_add(out, series_scale(power, Rational(i % 2 == 1 ? 1 : -1, i)));
    power = series_mul(power, x);
  }
  return out;
}

FnSeries::FnSeries(std::vector<MonotoneComb> coeffs, bool allow_signed) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.size() > static_cast<std::size_t>(kMaxDegree)) {
    throw Error("function series degree D=" + std::to_string(coeffs_.size()) + " outside [1, 10]");
  }
  if (!allow_signed) {
    for (std::size_t d = 0; d < coeffs_.size(); ++d) {
      if (!coeffs_[d].in_cone()) {
        throw Error("coeffs[" + std::to_string(d) + "] has a negative coefficient");
      }
    }
  }
}

ScalarSeries fn_power_expectation(const Measure& mu, const FnSeries& p, int i) {
  const int D = p.degree();
  if (i < 1) throw Error("power index must be >= 1");
  ScalarSeries out(D);
  if (i > D) return out;
  const auto powers = fn_powers(p);
  for (int d = i; d <= D; ++d) out[d] = expectation(mu, powers[i][d]);
  return out;
}

ScalarSeries lhs_series(const Measure& mu, const FnSeries& p) {
  const int D = p.degree();
  const auto powers = fn_powers(p);
  ScalarSeries s(D);
  for (int i = 1; i <= D; ++i) {
    for (int d = i; d <= D; ++d) s[d] += expectation(mu, powers[i][d]) / i;
  }
  const ScalarSeries e = series_exp(series_scale(s, -1));
  ScalarSeries out(D);
  for (int d = 1; d <= D; ++d) out[d] = -e[d];
  return out;
}

ScalarSeries rhs_series(const Measure& mu, const FnSeries& p) {
  const int D = p.degree();
  // <∏_{s} p_{i_s}>_μ for a sorted multiset of degrees, built incrementally.
  std::map<std::vector<int>, MonotoneComb> products;
  std::map<std::vector<int>, Rational> moments;
  auto moment = [&](std::vector<int> degrees) -> const Rational& {
    std::sort(degrees.begin(), degrees.end());
    if (auto it = moments.find(degrees); it != moments.end()) return it->second;
    MonotoneComb prod = p.coeff(degrees.front()).canonical();
    std::vector<int> prefix{degrees.front()};
    for (std::size_t s = 1; s < degrees.size(); ++s) {
      prefix.push_back(degrees[s]);
      if (auto it = products.find(prefix); it != products.end()) {
        prod = it->second;
      } else {
        prod = pointwise_product(prod, p.coeff(degrees[s]));
        products.emplace(prefix, prod);
      }
    }
    return moments.emplace(std::move(degrees), expectation(mu, prod)).first->second;
  };

  ScalarSeries out(D);
  std::vector<int> block_degrees;
  for (int d = 1; d <= D; ++d) {
    Rational coefficient(0);
    for (int n = 1; n <= d; ++n) {
      Rational sum(0);
      for_each_composition(d, n, [&](const std::vector<int>& parts) {
        for (const auto& term : partition_terms(n)) {
          Rational value(term.coefficient);
          for (std::uint32_t block : term.blocks) {
            block_degrees.clear();
            for (int s = 0; s < n; ++s) {
              if (block >> s & 1u) block_degrees.push_back(parts[s]);
            }
            value *= moment(block_degrees);
            if (sgn(value) == 0) break;
          }
          sum += value;
        }
      });
      coefficient += sum / Rational(factorial(n));
    }
    out[d] = coefficient;
  }
  return out;
}

ScalarSeries rhs_series_atomwise(const Measure& mu, const FnSeries& p) {
  const int D = p.degree();
  if (D > kMaxPartitionSize) throw Error("atomwise evaluation supports D <= 8");
  ScalarSeries out(D);
  for (int d = 1; d <= D; ++d) {
    for (int n = 1; n <= d; ++n) {
      Rational sum(0);
      for_each_composition(d, n, [&](const std::vector<int>& parts) {
        std::vector<MonotoneComb> args;
        for (int i : parts) args.push_back(p.coeff(i));
        sum += e_n_multilinear(mu, args);
      });
      out[d] += sum / Rational(factorial(n));
    }
  }
  return out;
}

IdentityResult verify_identity_e4(const Measure& mu, const FnSeries& p) {
  IdentityResult r;
  r.lhs = lhs_series(mu, p);
  r.rhs = rhs_series(mu, p);
  for (int d = 0; d <= p.degree(); ++d) {
    if (r.lhs[d] != r.rhs[d]) {
      r.holds = false;
      r.first_mismatch = d;
      break;
    }
  }
  return r;
}

NonnegResult check_nonneg_e2(const Measure& mu, const FnSeries& p) {
  NonnegResult r;
  r.lhs = lhs_series(mu, p);
  for (int d = 0; d <= p.degree(); ++d) {
    if (sgn(r.lhs[d]) < 0) {
      r.holds = false;
      r.first_negative = d;
      break;
    }
  }
  return r;
}

}  // namespace fkg
