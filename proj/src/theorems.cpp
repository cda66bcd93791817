#include "groupdet/theorems.hpp"

#include <omp.h>

#include <algorithm>
#include <set>
#include <unordered_map>

#include "groupdet/errors.hpp"
#include "groupdet/exactdet.hpp"
#include "groupdet/primes.hpp"
#include "groupdet/rng.hpp"
#include "kernels.hpp"

namespace groupdet::theorems {

namespace {

using u64 = std::uint64_t;

BigInt big_u64(u64 v) {
    BigInt out(static_cast<unsigned long>(v & 0xffffffffULL));
    out += BigInt(static_cast<unsigned long>(v >> 32)) << 32;
    return out;
}

// v_p(order) for a p-group of order p^n.
unsigned p_adic_valuation(u64 order, u64 p) {
    unsigned n = 0;
    while (order % p == 0) {
        order /= p;
        ++n;
    }
    if (order != 1) throw InternalError("order is not a power of p");
    return n;
}

const FiniteGroup& require_abelian_p_group(const FiniteGroup& g) {
    if (!g.is_abelian()) throw DomainError("group " + g.spec_string() + " is not abelian");
    if (!g.prime()) throw DomainError("group " + g.spec_string() + " is not a p-group");
    return g;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::nonmember: return "nonmember";
        case Verdict::outside_scope: return "outside-scope";
    }
    return "?";
}

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::cyclic_mod_p: return "cyclic-mod-p";
        case Criterion::cp_factor_mod_pn: return "cp-factor-mod-pn";
        case Criterion::q_equals_p: return "q-equals-p";
        case Criterion::no_theorem_applies: return "no-theorem-applies";
    }
    return "?";
}

Decision decide(const FiniteGroup& g, u64 q) {
    if (!is_prime_u64(q)) throw DomainError("q = " + std::to_string(q) + " is not prime");
    require_abelian_p_group(g);
    const u64 p = *g.prime();
    p_adic_valuation(g.order(), p);  // validates |G| = p^n

    std::size_t nontrivial = 0;
    bool has_cp_factor = false;
    for (u64 f : g.factors()) {
        if (f > 1) ++nontrivial;
        if (f == p) has_cp_factor = true;
    }

    Decision d;
    if (nontrivial <= 1) {
        // Cyclic p-group: q is a member iff q != p, i.e. q^{p-1} == 1 mod p.
        d.criterion = Criterion::cyclic_mod_p;
        d.modulus = big_u64(p);
        d.residue = big_u64(powmod_u64(q, p - 1, p));
    } else if (has_cp_factor) {
        d.criterion = Criterion::cp_factor_mod_pn;
        d.modulus = big_u64(g.order());  // p^n
        d.residue = big_u64(powmod_u64(q, p - 1, g.order()));
    } else if (q == p) {
        // p itself is a nonmember for every p-group, whatever the shape.
        d.criterion = Criterion::q_equals_p;
        d.modulus = big_u64(g.order());
        d.residue = big_u64(powmod_u64(q, p - 1, g.order()));
    } else {
        d.criterion = Criterion::no_theorem_applies;
        d.modulus = 0;
        d.residue = 0;
        d.verdict = Verdict::outside_scope;
        return d;
    }
    d.verdict = d.residue == 1 ? Verdict::member : Verdict::nonmember;
    return d;
}

bool check_cor5(const FiniteGroup& g, unsigned l, const Assignment& a) {
    require_abelian_p_group(g);
    if (l < 1) throw DomainError("l must be at least 1");
    const u64 p = *g.prime();
    const unsigned n = p_adic_valuation(g.order(), p);
    if (n < l + 1) throw DomainError("quotient must be nontrivial: need n - l >= 1");

    u64 pl = 1;
    for (unsigned i = 0; i < l; ++i) pl *= p;
    std::size_t designated = g.factors().size();
    for (std::size_t t = 0; t < g.factors().size(); ++t)
        if (g.factors()[t] == pl) {
            designated = t;
            break;
        }
    if (designated == g.factors().size())
        throw DomainError("group has no direct factor of order exactly " + std::to_string(pl));

    const BigInt mod = pow_big(BigInt(static_cast<unsigned long>(p)), n - l + 1);
    const BigInt lhs = math_mod(exactdet::theta(g, a), mod);

    const BigInt collapsed =
        exactdet::theta(drop_factor(g, designated), collapse_factor(g, designated, a));
    BigInt rhs;
    const BigInt exp = big_u64(pl);
    mpz_powm(rhs.get_mpz_t(), collapsed.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return lhs == rhs;
}

std::vector<BigInt> cor6_values(const FiniteGroup& g, const BigInt& a, long long k_lo,
                                long long k_hi) {
    require_abelian_p_group(g);
    const u64 p = *g.prime();
    const unsigned n = p_adic_valuation(g.order(), p);

    BigInt gcd;
    const BigInt pz(static_cast<unsigned long>(p));
    mpz_gcd(gcd.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t());
    if (gcd != 1) throw DomainError("a must be coprime to p");

    u64 exp = 1;
    for (unsigned i = 0; i + 1 < n; ++i) {
        if (exp > (u64(1) << 40) / p) throw DomainError("exponent p^{n-1} too large to materialize");
        exp *= p;
    }
    const std::size_t abits = mpz_sizeinbase(a.get_mpz_t(), 2);
    if (abits * exp > 100'000'000ULL) throw DomainError("family value too large to materialize");

    const BigInt apow = pow_big(a, exp);
    const BigInt pn = pow_big(pz, n);
    std::vector<BigInt> out;
    for (long long k = k_lo; k <= k_hi; ++k) out.push_back(apow - BigInt(k) * pn);
    return out;
}

bool wieferich(u64 p) {
    if (!is_prime_u64(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    if (p >= (u64(1) << 31)) throw DomainError("p too large: p^2 must fit in 64 bits");
    return powmod_u64(2, p - 1, p * p) == 1;
}

std::vector<u64> wieferich_scan(u64 limit, int workers) {
    if (limit < 2) return {};
    const auto primes = primes_upto(limit);
    const int threads = detail::thread_count(workers);
    std::vector<u64> hits;
#pragma omp parallel for schedule(static) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(primes.size()); ++i) {
        const u64 p = primes[static_cast<std::size_t>(i)];
        if (powmod_u64(2, p - 1, p * p) == 1) {
#pragma omp critical(groupdet_wieferich)
            hits.push_back(p);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

namespace {

constexpr u64 kSubsamplePoints = 1'000'000;
constexpr u64 kOracleSampleStride = 10'000;

struct Theorem3Worker {
    std::set<BigInt> primes;
    std::vector<std::pair<u64, Theorem3Violation>> violations;
    u64 skipped_large = 0;
    std::unordered_map<long long, bool> prime_memo;

    void merge_from(Theorem3Worker&& other) {
        primes.merge(other.primes);
        violations.insert(violations.end(), std::make_move_iterator(other.violations.begin()),
                          std::make_move_iterator(other.violations.end()));
        skipped_large += other.skipped_large;
    }
};

}  // namespace

Theorem3Report check_theorem3(const FiniteGroup& g, long long bound, u64 seed, int workers) {
    if (g.is_abelian())
        throw DomainError("the prime-collapse checker supports Q8 and D4 only");
    if (bound < 1) throw DomainError("bound must be at least 1");

    Theorem3Report rep;
    rep.group = g.spec_string();
    rep.bound = bound;
    rep.seed = seed;
    rep.exhaustive = bound <= 2;

    const detail::Evaluator ev(g, bound);
    const bool use_i64 = ev.fits_i64();
    const int threads = detail::thread_count(workers);
    const FiniteGroup c22 = FiniteGroup::abelian({2, 2});
    const u64 radix = static_cast<u64>(2 * bound + 1);

    // Per-point check; order_key makes violation lists deterministic.
    auto inspect = [&](Theorem3Worker& w, const long long* vals, u64 order_key) {
        BigInt theta, lin, quad;
        long long lin64 = 0, quad64 = 0;
        bool prime = false;
        if (use_i64) {
            const long long t64 = ev.parts_i64(vals, &lin64, &quad64);
            if (order_key % kOracleSampleStride == 0 && ev.eval_bareiss(vals) != t64)
                throw InternalError("factored evaluation disagrees with the Bareiss determinant");
            if (t64 > 1) {
                auto [it, inserted] = w.prime_memo.try_emplace(t64, false);
                if (inserted) it->second = is_prime_u64(static_cast<u64>(t64));
                prime = it->second;
            }
            if (!prime) return;
            theta = BigInt(t64);
            lin = BigInt(lin64);
            quad = BigInt(quad64);
        } else {
            theta = ev.parts_big(vals, &lin, &quad);
            if (order_key % kOracleSampleStride == 0 && ev.eval_bareiss(vals) != theta)
                throw InternalError("factored evaluation disagrees with the Bareiss determinant");
            bool too_large = false;
            prime = is_prime_value(theta, &too_large);
            if (too_large) {
                ++w.skipped_large;
                return;
            }
            if (!prime) return;
        }

        w.primes.insert(theta);
        auto report = [&](const char* reason) {
            Theorem3Violation v;
            v.assignment.assign(vals, vals + 8);
            v.value = theta;
            v.reason = reason;
            w.violations.emplace_back(order_key, std::move(v));
        };
        // (i) the prime must be a member for the abelianization C2xC2
        const Decision d = decide(c22, theta.get_ui());
        if (d.verdict != Verdict::member) report("prime determinant is not 1 mod 4");
        // (ii) theta must equal the abelianized determinant exactly
        if (lin != theta) report("prime determinant differs from its abelianization");
        // (iii) the squared factor must be +-1
        if (quad != 1 && quad != -1) report("quadratic factor is not +-1");
    };

    std::vector<Theorem3Worker> workers_data(static_cast<std::size_t>(threads));
    detail::ParallelGuard guard;

    if (rep.exhaustive) {
        const detail::ScanBox box = detail::make_scan_box(g, bound, 0);
        rep.scanned = box.size;
        const auto part = detail::partition_box(box, threads);
#pragma omp parallel num_threads(threads)
        {
            Theorem3Worker& w = workers_data[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic)
            for (long long pb = 0; pb < static_cast<long long>(part.blocks); ++pb) {
                detail::enumerate_block(box, part.prefix_len, static_cast<u64>(pb), part.span,
                                        [&](const long long* vals, u64 rank) {
                                            return guard.run([&] { inspect(w, vals, rank); });
                                        });
            }
        }
    } else {
        rep.scanned = kSubsamplePoints;
#pragma omp parallel num_threads(threads)
        {
            Theorem3Worker& w = workers_data[static_cast<std::size_t>(omp_get_thread_num())];
            long long vals[8];
#pragma omp for schedule(static)
            for (long long i = 0; i < static_cast<long long>(kSubsamplePoints); ++i) {
                const u64 stream = splitmix64(seed + 0x9e3779b97f4a7c15ULL * (static_cast<u64>(i) + 1));
                for (std::size_t t = 0; t < 8; ++t)
                    vals[t] = static_cast<long long>(splitmix64(stream + t) % radix) - bound;
                guard.run([&] { inspect(w, vals, static_cast<u64>(i)); });
            }
        }
    }
    guard.rethrow();

    Theorem3Worker merged;
    for (auto& w : workers_data) merged.merge_from(std::move(w));
    std::sort(merged.violations.begin(), merged.violations.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    rep.primes_found.assign(merged.primes.begin(), merged.primes.end());
    for (auto& [key, v] : merged.violations) rep.violations.push_back(std::move(v));
    rep.skipped_large = merged.skipped_large;
    return rep;
}

}  // namespace groupdet::theorems
