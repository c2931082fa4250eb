#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace pixel {

using BigInt = mpz_class;
using Rational = mpq_class;

/// num/den in canonical form; den must be nonzero.
Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "p/q", "p" or a terminating decimal such as "0.3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// The dyadic rational (u + 1) / 2^64, which lies in (0, 1].
Rational dyadic_unit(std::uint64_t u);

/// ceil(l * x) as an integer; x must satisfy 0 < x <= 1.
int cell_of(const Rational& x, int l);

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);
BigInt pow(const BigInt& base, unsigned long exponent);

long gcd(long a, long b);
long lcm(long a, long b);

}  // namespace pixel
