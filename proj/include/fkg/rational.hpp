#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fkg {

/// Exact rational scalar. Every quantity on the verification path uses it.
using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (optionally signed). Throws Error on malformed input
/// or a zero denominator. The result is canonical.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are written as "p/1" so that every
/// serialized scalar has the same shape.
std::string to_string(const Rational& value);

/// x^e for a non-negative integer exponent.
Rational pow(const Rational& base, unsigned exponent);

Integer factorial(unsigned n);

}  // namespace fkg
