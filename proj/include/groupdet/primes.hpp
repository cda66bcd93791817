#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "groupdet/bigint.hpp"

namespace groupdet {

// Deterministic Miller-Rabin, valid for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);

std::vector<std::uint64_t> primes_upto(std::uint64_t limit);

// Decomposes n = p^k with p prime, k >= 1; nullopt when n is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power(std::uint64_t n);

// True iff v is a positive prime below 2^64. Values at or above 2^64 are
// never accepted; when `too_large` is given it is set for those, so callers
// can count what the deterministic test refused to classify.
bool is_prime_value(const BigInt& v, bool* too_large = nullptr);

}  // namespace groupdet
