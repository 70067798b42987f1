#ifndef EMSYM_RATIONAL_HPP
#define EMSYM_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <string>

namespace emsym {

// Exact rationals, always canonical: lowest terms, positive denominator.
// mpq_class maintains this invariant through canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "a/b" or "a". Returns nullopt on malformed input or zero denominator.
std::optional<Rational> rational_from_string(const std::string& s);

// "a/b" with b > 0, or plain "a" when b == 1.
std::string rational_to_string(const Rational& q);

std::string integer_to_string(const Integer& z);

} // namespace emsym

#endif
