#pragma once

// Internal hot-loop machinery for box scans: exact factored evaluation of
// theta (character product for abelian groups, Frobenius parts for Q8/D4)
// over int64 when a worst-case growth bound certifies that no intermediate
// can overflow, with an arbitrary-precision route otherwise; plus the
// canonical box enumeration shared by search and the theorem checkers.
// Not installed; the public contracts live in groupdet/search.hpp and
// groupdet/theorems.hpp.

#include <array>
#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "groupdet/bigint.hpp"
#include "groupdet/group.hpp"

namespace groupdet::detail {

struct AbelianTables {
    std::uint32_t m = 1;  // exponent of G
    std::uint32_t n = 1;  // |G|
    std::vector<std::uint32_t> slot;  // slot[chi * n + g]: exponent of zeta_m in chi(g)
    std::vector<long long> phi;       // Phi_m, coefficients in {-1, 0, 1} for m <= 16
};

struct BuiltinTables {
    bool q8 = true;
    std::array<std::uint32_t, 8> proj{};  // commutator-collapse slot per element
};

class Evaluator {
public:
    Evaluator(const FiniteGroup& g, long long bound);

    bool fits_i64() const { return fits_i64_; }

    long long eval_i64(const long long* a) const;  // only when fits_i64()
    BigInt eval_big(const long long* a) const;

    // Frobenius parts for Q8/D4 along with theta = lin * quad^2.
    long long parts_i64(const long long* a, long long* lin, long long* quad) const;
    BigInt parts_big(const long long* a, BigInt* lin, BigInt* quad) const;

    // Independent Bareiss route, for sampled cross-checks of the hot loop.
    BigInt eval_bareiss(const long long* a) const;

    const FiniteGroup& group() const { return *group_; }

private:
    const FiniteGroup* group_;
    bool abelian_;
    bool fits_i64_;
    AbelianTables ab_;
    BuiltinTables bi_;
};

// Worst-case certification that every intermediate of the factored
// evaluation over [-bound, bound]^{|G|} stays below 2^62.
bool eval_fits_i64(const FiniteGroup& g, long long bound);

// Canonical box order: every coordinate runs +B, +B-1, ..., -B (digit
// d = B - value), coordinate 0 most significant; rank 0 is the all-(+B)
// corner. Witnesses are reported as the surviving hit of least rank, which
// makes results independent of worker count.
struct ScanBox {
    std::size_t n = 0;
    long long bound = 0;
    std::uint64_t radix = 1;  // 2B + 1
    std::uint64_t size = 1;   // radix^n; guarded by the evaluation ceiling
};

// Throws DomainError (refuses, never truncates) when the box exceeds the
// evaluation ceiling.
ScanBox make_scan_box(const FiniteGroup& g, long long bound, std::uint64_t max_evals);

Assignment decode_rank(const ScanBox& box, std::uint64_t rank);

struct BoxPartition {
    std::size_t prefix_len = 0;
    std::uint64_t blocks = 1;
    std::uint64_t span = 1;
};

BoxPartition partition_box(const ScanBox& box, int threads);

int thread_count(int workers);

// Visits every point of one prefix block in rank order; the visitor gets
// (values, rank) and returns false to stop early.
template <typename Visit>
void enumerate_block(const ScanBox& box, std::size_t prefix_len, std::uint64_t prefix_id,
                     std::uint64_t span, Visit&& visit) {
    std::vector<std::uint64_t> digit(box.n, 0);
    std::vector<long long> vals(box.n, box.bound);
    std::uint64_t tmp = prefix_id;
    for (std::size_t t = prefix_len; t-- > 0;) {
        digit[t] = tmp % box.radix;
        vals[t] = box.bound - static_cast<long long>(digit[t]);
        tmp /= box.radix;
    }
    const std::uint64_t base = prefix_id * span;
    for (std::uint64_t off = 0; off < span; ++off) {
        if (!visit(static_cast<const long long*>(vals.data()), base + off)) return;
        for (std::size_t t = box.n; t-- > prefix_len;) {
            ++digit[t];
            if (digit[t] < box.radix) {
                vals[t] = box.bound - static_cast<long long>(digit[t]);
                break;
            }
            digit[t] = 0;
            vals[t] = box.bound;
        }
    }
}

// OpenMP regions cannot let exceptions escape; record the first one and
// rethrow after the join.
struct ParallelGuard {
    std::atomic<bool> failed{false};
    std::string message;

    template <typename F>
    bool run(F&& f) {
        if (failed.load(std::memory_order_relaxed)) return false;
        try {
            f();
            return true;
        } catch (const std::exception& e) {
            record(e.what());
            return false;
        }
    }

    void record(const char* what);
    void rethrow() const;
};

}  // namespace groupdet::detail
