#include "groupdet/primes.hpp"

#include <cmath>

#include "groupdet/errors.hpp"

namespace groupdet {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

}  // namespace

u64 powmod_u64(u64 base, u64 exp, u64 mod) {
    if (mod == 0) throw DomainError("powmod: zero modulus");
    u64 r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, mod);
        base = mulmod(base, base, mod);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all 64-bit inputs.
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<u64> primes_upto(u64 limit) {
    if (limit > 200'000'000ULL) throw DomainError("prime sieve limit too large");
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 p = 2; p * p <= limit; ++p)
        if (!composite[p])
            for (u64 q = p * p; q <= limit; q += p) composite[q] = true;
    for (u64 p = 2; p <= limit; ++p)
        if (!composite[p]) out.push_back(p);
    return out;
}

std::optional<std::pair<u64, unsigned>> prime_power(u64 n) {
    if (n < 2) return std::nullopt;
    BigInt big(static_cast<unsigned long>(n & 0xffffffffULL));
    big += BigInt(static_cast<unsigned long>(n >> 32)) << 32;
    for (unsigned k = 63; k >= 1; --k) {
        BigInt root;
        int exactness = mpz_root(root.get_mpz_t(), big.get_mpz_t(), k);
        if (!exactness) continue;
        if (!root.fits_ulong_p()) continue;
        u64 p = root.get_ui();
        if (is_prime_u64(p)) return std::make_pair(p, k);
        return std::nullopt;  // exact k-th power of a composite
    }
    return std::nullopt;
}

bool is_prime_value(const BigInt& v, bool* too_large) {
    if (too_large) *too_large = false;
    if (v <= 1) return false;
    if (!v.fits_ulong_p()) {
        // 64-bit is where the deterministic witness set stops.
        if (too_large) *too_large = true;
        return false;
    }
    return is_prime_u64(v.get_ui());
}

}  // namespace groupdet
