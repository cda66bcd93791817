#include "groupdet/search.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <string>
#include <unordered_map>

#include "groupdet/errors.hpp"
#include "groupdet/exactdet.hpp"
#include "groupdet/primes.hpp"
#include "kernels.hpp"

namespace groupdet::search {

namespace {

using u64 = std::uint64_t;
using detail::ScanBox;

constexpr u64 kDefaultCeiling = 100'000'000ULL;
constexpr u64 kCeilingCap = u64(1) << 62;
constexpr u64 kOracleSampleStride = 10'000;  // Bareiss cross-check 1 in 10^4

void oracle_check(const detail::Evaluator& ev, const long long* vals, const BigInt& value) {
    if (ev.eval_bareiss(vals) != value)
        throw InternalError("factored evaluation disagrees with the Bareiss determinant");
}

// Keeps a point only when no automorphism sends it to a lower rank.
bool orbit_minimal(const std::vector<std::vector<std::uint32_t>>& maps, const long long* vals,
                   std::size_t n) {
    for (const auto& sigma : maps) {
        for (std::size_t t = 0; t < n; ++t) {
            const long long image = vals[sigma[t]];
            if (image > vals[t]) return false;  // the permuted point ranks earlier
            if (image < vals[t]) break;
        }
    }
    return true;
}

std::vector<std::vector<std::uint32_t>> prune_maps(const FiniteGroup& g, bool enabled) {
    std::vector<std::vector<std::uint32_t>> maps;
    if (!enabled) return maps;
    for (auto& m : automorphism_maps(g)) {
        bool identity = true;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != i) {
                identity = false;
                break;
            }
        if (!identity) maps.push_back(std::move(m));
    }
    return maps;
}

// value -> least surviving rank over the whole box.
std::map<BigInt, u64> scan_box(const FiniteGroup& g, const ScanBox& box, const SearchConfig& cfg) {
    const detail::Evaluator ev(g, box.bound);
    const auto maps = prune_maps(g, cfg.prune_symmetry);
    const int threads = detail::thread_count(cfg.workers);
    const auto part = detail::partition_box(box, threads);
    const bool use_i64 = ev.fits_i64();

    std::map<BigInt, u64> merged;
    detail::ParallelGuard guard;
#pragma omp parallel num_threads(threads)
    {
        std::unordered_map<long long, u64> local_i64;
        std::map<BigInt, u64> local_big;
#pragma omp for schedule(dynamic)
        for (long long pb = 0; pb < static_cast<long long>(part.blocks); ++pb) {
            detail::enumerate_block(
                box, part.prefix_len, static_cast<u64>(pb), part.span,
                [&](const long long* vals, u64 rank) {
                    return guard.run([&] {
                        if (!maps.empty() && !orbit_minimal(maps, vals, box.n)) return;
                        if (use_i64) {
                            const long long v = ev.eval_i64(vals);
                            if (rank % kOracleSampleStride == 0) oracle_check(ev, vals, BigInt(v));
                            auto [it, inserted] = local_i64.try_emplace(v, rank);
                            if (!inserted && rank < it->second) it->second = rank;
                        } else {
                            BigInt v = ev.eval_big(vals);
                            if (rank % kOracleSampleStride == 0) oracle_check(ev, vals, v);
                            auto [it, inserted] = local_big.try_emplace(std::move(v), rank);
                            if (!inserted && rank < it->second) it->second = rank;
                        }
                    });
                });
        }
#pragma omp critical(groupdet_scan_merge)
        {
            for (const auto& [v, r] : local_i64) {
                auto [it, inserted] = merged.try_emplace(BigInt(v), r);
                if (!inserted && r < it->second) it->second = r;
            }
            for (const auto& [v, r] : local_big) {
                auto [it, inserted] = merged.try_emplace(v, r);
                if (!inserted && r < it->second) it->second = r;
            }
        }
    }
    guard.rethrow();
    return merged;
}

ScanResult finish_scan(const ScanBox& box, std::map<BigInt, u64>&& merged, bool prime_filter) {
    ScanResult out;
    out.scanned = box.size;
    for (auto& [value, rank] : merged) {
        if (prime_filter) {
            bool too_large = false;
            if (!is_prime_value(value, &too_large)) {
                if (too_large) ++out.skipped_large;
                continue;
            }
        }
        out.entries.push_back({value, detail::decode_rank(box, rank)});
    }
    return out;
}

std::optional<Assignment> witness_in_box(const FiniteGroup& g, const BigInt& target,
                                         const ScanBox& box, const SearchConfig& cfg) {
    const detail::Evaluator ev(g, box.bound);
    const auto maps = prune_maps(g, cfg.prune_symmetry);
    const int threads = detail::thread_count(cfg.workers);
    const auto part = detail::partition_box(box, threads);
    const bool use_i64 = ev.fits_i64();

    // int64-certified values stay below 2^62, so a target outside long long
    // range cannot occur in the box.
    if (use_i64 && !target.fits_slong_p()) return std::nullopt;
    const long long target_i64 = use_i64 ? target.get_si() : 0;

    std::atomic<u64> best{UINT64_MAX};
    detail::ParallelGuard guard;
#pragma omp parallel num_threads(threads)
    {
#pragma omp for schedule(dynamic)
        for (long long pb = 0; pb < static_cast<long long>(part.blocks); ++pb) {
            const u64 base = static_cast<u64>(pb) * part.span;
            if (base >= best.load(std::memory_order_relaxed)) continue;
            detail::enumerate_block(
                box, part.prefix_len, static_cast<u64>(pb), part.span,
                [&](const long long* vals, u64 rank) {
                    if (rank >= best.load(std::memory_order_relaxed)) return false;
                    bool keep_going = true;
                    bool ok = guard.run([&] {
                        if (!maps.empty() && !orbit_minimal(maps, vals, box.n)) return;
                        bool hit;
                        if (use_i64) {
                            const long long v = ev.eval_i64(vals);
                            if (rank % kOracleSampleStride == 0) oracle_check(ev, vals, BigInt(v));
                            hit = v == target_i64;
                        } else {
                            BigInt v = ev.eval_big(vals);
                            if (rank % kOracleSampleStride == 0) oracle_check(ev, vals, v);
                            hit = v == target;
                        }
                        if (!hit) return;
                        u64 seen = best.load(std::memory_order_relaxed);
                        while (rank < seen &&
                               !best.compare_exchange_weak(seen, rank, std::memory_order_relaxed)) {
                        }
                        keep_going = false;  // nothing later in this block ranks earlier
                    });
                    return ok && keep_going;
                });
        }
    }
    guard.rethrow();
    if (best.load() == UINT64_MAX) return std::nullopt;
    return detail::decode_rank(box, best.load());
}

}  // namespace

u64 evaluation_ceiling(u64 requested) {
    if (requested != 0) return std::min(requested, kCeilingCap);
    if (const char* env = std::getenv("GROUPDET_MAX_EVALS")) {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || parsed == 0)
            throw DomainError("GROUPDET_MAX_EVALS must be a positive integer");
        return std::min<u64>(parsed, kCeilingCap);
    }
    return kDefaultCeiling;
}

u64 box_rank(const Assignment& a, long long bound) {
    const u64 radix = static_cast<u64>(2 * bound + 1);
    u64 rank = 0;
    for (const BigInt& v : a) {
        if (v > bound || v < -bound) throw DomainError("assignment entry outside the box");
        rank = rank * radix + static_cast<u64>(bound - v.get_si());
    }
    return rank;
}

std::optional<Assignment> find_witness(const FiniteGroup& g, const BigInt& target,
                                       const SearchConfig& cfg) {
    if (cfg.bound < 1) throw DomainError("bound must be at least 1");
    long long max_bound = cfg.bound;
    if (cfg.strategy == SearchConfig::Strategy::deepening)
        max_bound = std::max(cfg.bound, cfg.max_bound);
    detail::make_scan_box(g, max_bound, cfg.max_evals);  // refuse oversize plans up front

    for (long long b = cfg.bound; b <= max_bound; ++b) {
        const ScanBox box = detail::make_scan_box(g, b, cfg.max_evals);
        if (auto w = witness_in_box(g, target, box, cfg)) return w;
    }
    return std::nullopt;
}

ScanResult scan_values(const FiniteGroup& g, long long bound, bool prime_filter,
                       const SearchConfig& cfg) {
    const ScanBox box = detail::make_scan_box(g, bound, cfg.max_evals);
    auto merged = scan_box(g, box, cfg);
    return finish_scan(box, std::move(merged), prime_filter);
}

ScanResult scan_values_reference(const FiniteGroup& g, long long bound, bool prime_filter) {
    const ScanBox box = detail::make_scan_box(g, bound, 0);
    std::map<BigInt, u64> merged;
    detail::enumerate_block(box, 0, 0, box.size, [&](const long long* vals, u64 rank) {
        Assignment a(box.n);
        for (std::size_t i = 0; i < box.n; ++i) a[i] = BigInt(vals[i]);
        merged.try_emplace(exactdet::theta(g, a), rank);  // first visit has least rank
        return true;
    });
    return finish_scan(box, std::move(merged), prime_filter);
}

std::optional<Assignment> find_witness_reference(const FiniteGroup& g, const BigInt& target,
                                                 long long bound) {
    const ScanBox box = detail::make_scan_box(g, bound, 0);
    std::optional<Assignment> found;
    detail::enumerate_block(box, 0, 0, box.size, [&](const long long* vals, u64) {
        Assignment a(box.n);
        for (std::size_t i = 0; i < box.n; ++i) a[i] = BigInt(vals[i]);
        if (exactdet::theta(g, a) != target) return true;
        found = std::move(a);
        return false;
    });
    return found;
}

}  // namespace groupdet::search
