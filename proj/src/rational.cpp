#include "fkg/rational.hpp"

#include <cctype>

namespace fkg {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+') {
    throw Error("malformed rational \"" + std::string(text) + "\" (expected \"p/q\")");
  }
  Integer p(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  Integer q(std::string(den), 10);
  if (q == 0) throw Error("zero denominator in rational \"" + std::string(text) + "\"");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  return out;
}

Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace fkg
