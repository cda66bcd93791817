#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "groupdet/bigint.hpp"
#include "groupdet/group.hpp"

namespace groupdet::search {

struct SearchConfig {
    long long bound = 2;  // L-inf radius of the coefficient box
    long long max_bound = 0;  // deepening cap; 0 means "same as bound"
    enum class Strategy { exhaustive, deepening } strategy = Strategy::exhaustive;
    bool prime_filter = false;
    std::uint64_t seed = 0;
    int workers = 0;  // 0: OpenMP default
    bool prune_symmetry = false;
    std::uint64_t max_evals = 0;  // 0: default ceiling / GROUPDET_MAX_EVALS
};

// Effective evaluation ceiling: `requested` when nonzero, else the
// GROUPDET_MAX_EVALS environment override, else 10^8.
std::uint64_t evaluation_ceiling(std::uint64_t requested);

// Enumeration rank of an assignment in the canonical box order (the fixed
// descending odometer: every coordinate runs +B .. -B, coordinate 0 most
// significant). Witnesses are always the surviving assignment of least rank,
// independent of worker count.
std::uint64_t box_rank(const Assignment& a, long long bound);

// First assignment in the canonical box order with theta(G, a) = target,
// or nullopt when the box is exhausted. Deepening retries with growing
// bounds up to max_bound. Refuses (DomainError) when the box exceeds the
// evaluation ceiling.
std::optional<Assignment> find_witness(const FiniteGroup& g, const BigInt& target,
                                       const SearchConfig& cfg);

struct ScanEntry {
    BigInt value;
    Assignment witness;  // least-rank witness (of the surviving points)
};

struct ScanResult {
    std::vector<ScanEntry> entries;  // ascending by value
    std::uint64_t scanned = 0;
    std::uint64_t skipped_large = 0;  // prime filter: values >= 2^64 dropped
};

// Exact value set {theta(G, a) : a in [-bound, bound]^{|G|}} with one witness
// per value; optionally filtered to primes. Deterministic and independent of
// worker count.
ScanResult scan_values(const FiniteGroup& g, long long bound, bool prime_filter,
                       const SearchConfig& cfg = {});

// Serial reference implementations: plain descending odometer, every point
// evaluated with the Bareiss determinant. Kept for tests and benchmarks.
ScanResult scan_values_reference(const FiniteGroup& g, long long bound, bool prime_filter);
std::optional<Assignment> find_witness_reference(const FiniteGroup& g, const BigInt& target,
                                                 long long bound);

}  // namespace groupdet::search
