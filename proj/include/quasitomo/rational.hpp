#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace quasitomo {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Formats as "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Parses "p", "p/q" or "-p/q". Throws InvalidArgument on malformed input.
Rational parse_rational(std::string_view text);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

bool is_prime(long p);

/// Distinct prime factors of |z| in increasing order; |z| must be positive.
std::vector<Integer> distinct_prime_factors(Integer z);

}  // namespace quasitomo
