#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace groupdet {

using BigInt = mpz_class;

// Nonnegative residue of a mod m (m > 0), regardless of the sign of a.
BigInt math_mod(const BigInt& a, const BigInt& m);

// Quotient in an exact division; throws InternalError when the division
// leaves a remainder.
BigInt exact_div(const BigInt& num, const BigInt& den);

BigInt pow_big(const BigInt& base, std::uint64_t exp);

// Parse a decimal integer with optional sign; throws ParseError on junk.
BigInt parse_bigint(const std::string& text);

}  // namespace groupdet
