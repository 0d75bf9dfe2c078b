#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace freecurve {

/// Exact rational number. GMP keeps every value canonical: lowest terms,
/// positive denominator, zero stored as 0/1.
using Rat = mpq_class;
using BigInt = mpz_class;

/// Renders "p" for integers and "p/q" otherwise.
std::string to_string(const Rat& value);
std::string to_string(const BigInt& value);

/// Parses "p" or "p/q" (optional leading sign). Throws std::invalid_argument.
Rat parse_rat(std::string_view text);

BigInt floor(const Rat& value);
BigInt ceil(const Rat& value);

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace freecurve
