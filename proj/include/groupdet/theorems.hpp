#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupdet/bigint.hpp"
#include "groupdet/group.hpp"

namespace groupdet::theorems {

enum class Verdict { member, nonmember, outside_scope };
enum class Criterion { cyclic_mod_p, cp_factor_mod_pn, q_equals_p, no_theorem_applies };

const char* to_string(Verdict v);
const char* to_string(Criterion c);

struct Decision {
    Verdict verdict;
    Criterion criterion;
    BigInt modulus;  // 0 when no criterion applies
    BigInt residue;  // q^{p-1} mod modulus
};

// Membership of the prime q in S(G) for abelian p-groups. Cyclic groups use
// the mod-p criterion; groups with a direct factor of order exactly p use
// the mod-p^n criterion; q = p is a nonmember for every p-group; remaining
// shapes (e.g. C4xC4) are outside scope.
Decision decide(const FiniteGroup& g, std::uint64_t q);

// Congruence verifier for the split over the first factor of order exactly
// p^l: theta(G, a) == theta(H, collapsed)^{p^l} mod p^{n-l+1}. Holds on all
// valid inputs; exists to be checked.
bool check_cor5(const FiniteGroup& g, unsigned l, const Assignment& a);

// The guaranteed-member family a^{p^{n-1}} - k p^n for gcd(a, p) = 1,
// k in [k_lo, k_hi].
std::vector<BigInt> cor6_values(const FiniteGroup& g, const BigInt& a, long long k_lo,
                                long long k_hi);

bool wieferich(std::uint64_t p);  // 2^{p-1} == 1 mod p^2; p must be prime
std::vector<std::uint64_t> wieferich_scan(std::uint64_t limit, int workers = 0);

struct Theorem3Violation {
    std::vector<long long> assignment;
    BigInt value;
    std::string reason;
};

struct Theorem3Report {
    std::string group;
    long long bound = 0;
    std::uint64_t scanned = 0;
    bool exhaustive = true;  // false: seeded uniform subsample
    std::uint64_t seed = 0;
    std::vector<BigInt> primes_found;  // distinct, ascending
    std::vector<Theorem3Violation> violations;
    std::uint64_t skipped_large = 0;  // values >= 2^64, not primality-tested
};

// Scans assignments over [-bound, bound]^8 for Q8/D4 and checks, for every
// prime determinant value q: q is 1 mod 4, q equals the abelianized
// determinant exactly, and the quadratic factor is +-1. Exhaustive for
// bound <= 2; a seeded 10^6-point subsample above that.
Theorem3Report check_theorem3(const FiniteGroup& g, long long bound, std::uint64_t seed = 0,
                              int workers = 0);

}  // namespace groupdet::theorems
