#include "kernels.hpp"

#include <omp.h>

#include "groupdet/cyclo.hpp"
#include "groupdet/errors.hpp"
#include "groupdet/exactdet.hpp"
#include "groupdet/search.hpp"

namespace groupdet::detail {

namespace {

using u64 = std::uint64_t;

constexpr long long kI64Limit = 1LL << 62;

BigInt big_u64(u64 v) {
    BigInt out(static_cast<unsigned long>(v & 0xffffffffULL));
    out += BigInt(static_cast<unsigned long>(v >> 32)) << 32;
    return out;
}

AbelianTables build_abelian_tables(const FiniteGroup& g) {
    AbelianTables t;
    t.m = static_cast<std::uint32_t>(g.exponent());
    t.n = static_cast<std::uint32_t>(g.order());
    auto chars = cyclo::characters(g);
    t.slot.resize(static_cast<std::size_t>(t.n) * t.n);
    for (std::uint32_t c = 0; c < t.n; ++c)
        for (std::uint32_t e = 0; e < t.n; ++e)
            t.slot[static_cast<std::size_t>(c) * t.n + e] = cyclo::character_slot(g, chars[c], e);
    for (const BigInt& coeff : cyclo::cyclotomic_polynomial(t.m))
        t.phi.push_back(coeff.get_si());
    return t;
}

BuiltinTables build_builtin_tables(const FiniteGroup& g) {
    BuiltinTables t;
    t.q8 = g.tag() == BuiltinTag::q8;
    auto ab = abelianization(g);
    for (std::size_t i = 0; i < 8; ++i) t.proj[i] = ab.projection[i];
    return t;
}

// theta as the product of all character sums, carried modulo zeta^m - 1 and
// reduced by Phi_m at the end. Exact for any integer type that cannot
// overflow on the way (certified for long long, unconditional for BigInt).
template <typename Int>
Int eval_abelian(const AbelianTables& t, const long long* a) {
    constexpr std::size_t kMaxM = 64;
    if (t.m > kMaxM) throw InternalError("abelian kernel modulus out of range");
    Int acc[kMaxM], sum[kMaxM], tmp[kMaxM];
    const std::size_t m = t.m;
    for (std::size_t i = 0; i < m; ++i) acc[i] = 0;
    acc[0] = 1;
    for (std::uint32_t chi = 0; chi < t.n; ++chi) {
        const std::uint32_t* slots = t.slot.data() + static_cast<std::size_t>(chi) * t.n;
        for (std::size_t i = 0; i < m; ++i) sum[i] = 0;
        for (std::uint32_t e = 0; e < t.n; ++e) sum[slots[e]] += a[e];
        for (std::size_t i = 0; i < m; ++i) tmp[i] = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (acc[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) {
                std::size_t k = i + j;
                if (k >= m) k -= m;
                tmp[k] += acc[i] * sum[j];
            }
        }
        for (std::size_t i = 0; i < m; ++i) acc[i] = tmp[i];
    }
    const std::size_t deg = t.phi.size() - 1;
    for (std::size_t d = m; d-- > deg;) {
        if (acc[d] == 0) continue;
        Int c = acc[d];
        const std::size_t shift = d - deg;
        for (std::size_t i = 0; i + 1 < t.phi.size(); ++i) {
            if (t.phi[i] == 0) continue;
            acc[shift + i] -= c * t.phi[i];
        }
        acc[d] = 0;
    }
    for (std::size_t i = 1; i < deg; ++i)
        if (acc[i] != 0) throw InternalError("character product did not reduce to an integer");
    return acc[0];
}

// theta(C2xC2) as the product of the four character forms.
template <typename Int>
Int c22_theta(Int s0, Int s1, Int s2, Int s3) {
    return (s0 + s1 + s2 + s3) * (s0 + s1 - s2 - s3) * (s0 - s1 + s2 - s3) * (s0 - s1 - s2 + s3);
}

template <typename Int>
Int eval_builtin_parts(const BuiltinTables& t, const long long* a, Int* lin_out, Int* quad_out) {
    Int s[4] = {Int(0), Int(0), Int(0), Int(0)};
    for (std::size_t i = 0; i < 8; ++i) s[t.proj[i]] += a[i];
    Int lin = c22_theta(s[0], s[1], s[2], s[3]);
    Int quad;
    if (t.q8) {
        // Gaussian determinant of the degree-2 irrep sum: A^2+B^2+C^2+D^2.
        Int A = Int(a[0]) - a[1], B = Int(a[2]) - a[3], C = Int(a[4]) - a[5], D = Int(a[6]) - a[7];
        quad = A * A + B * B + C * C + D * D;
    } else {
        Int m00 = Int(a[0]) - a[2] + a[4] - a[6];
        Int m01 = Int(-a[1]) + a[3] - a[5] + a[7];
        Int m10 = Int(a[1]) - a[3] - a[5] + a[7];
        Int m11 = Int(a[0]) - a[2] - a[4] + a[6];
        quad = m00 * m11 - m01 * m10;
    }
    if (lin_out) *lin_out = lin;
    if (quad_out) *quad_out = quad;
    return lin * quad * quad;
}

}  // namespace

bool eval_fits_i64(const FiniteGroup& g, long long bound) {
    if (bound < 0) return false;
    if (!g.is_abelian()) {
        // lin <= (8B)^4, |quad| <= 32B^2, theta <= 2^22 B^8.
        BigInt b(bound);
        BigInt theta_max = pow_big(8 * b, 4) * pow_big(32 * b * b, 2);
        return theta_max < kI64Limit;
    }
    // Partial products stay below (|G| B)^{|G|}; the Phi reduction can at
    // most double the magnitude once per eliminated degree.
    BigInt worst = pow_big(BigInt(g.order()) * bound, g.order());
    const std::size_t m = static_cast<std::size_t>(g.exponent());
    const std::size_t deg = cyclo::cyclotomic_polynomial(static_cast<std::uint32_t>(m)).size() - 1;
    worst <<= (m - deg);
    return worst < kI64Limit;
}

Evaluator::Evaluator(const FiniteGroup& g, long long bound)
    : group_(&g), abelian_(g.is_abelian()), fits_i64_(eval_fits_i64(g, bound)) {
    if (abelian_)
        ab_ = build_abelian_tables(g);
    else
        bi_ = build_builtin_tables(g);
}

long long Evaluator::eval_i64(const long long* a) const {
    if (abelian_) return eval_abelian<long long>(ab_, a);
    return eval_builtin_parts<long long>(bi_, a, nullptr, nullptr);
}

BigInt Evaluator::eval_big(const long long* a) const {
    if (abelian_) return eval_abelian<BigInt>(ab_, a);
    return eval_builtin_parts<BigInt>(bi_, a, nullptr, nullptr);
}

long long Evaluator::parts_i64(const long long* a, long long* lin, long long* quad) const {
    if (abelian_) throw InternalError("Frobenius parts require Q8 or D4");
    return eval_builtin_parts<long long>(bi_, a, lin, quad);
}

BigInt Evaluator::parts_big(const long long* a, BigInt* lin, BigInt* quad) const {
    if (abelian_) throw InternalError("Frobenius parts require Q8 or D4");
    return eval_builtin_parts<BigInt>(bi_, a, lin, quad);
}

BigInt Evaluator::eval_bareiss(const long long* a) const {
    Assignment v(static_cast<std::size_t>(group_->order()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = BigInt(a[i]);
    return exactdet::theta(*group_, v);
}

ScanBox make_scan_box(const FiniteGroup& g, long long bound, u64 max_evals) {
    if (bound < 0) throw DomainError("bound must be nonnegative");
    const u64 ceiling = search::evaluation_ceiling(max_evals);
    BigInt size = pow_big(BigInt(2 * bound + 1), g.order());
    if (size > big_u64(ceiling))
        throw DomainError("box of " + size.get_str() + " points exceeds the evaluation ceiling of " +
                          std::to_string(ceiling) + "; refusing to truncate");
    ScanBox box;
    box.n = static_cast<std::size_t>(g.order());
    box.bound = bound;
    box.radix = static_cast<u64>(2 * bound + 1);
    box.size = size.get_ui();
    return box;
}

Assignment decode_rank(const ScanBox& box, u64 rank) {
    Assignment a(box.n);
    for (std::size_t t = box.n; t-- > 0;) {
        a[t] = BigInt(box.bound - static_cast<long long>(rank % box.radix));
        rank /= box.radix;
    }
    return a;
}

BoxPartition partition_box(const ScanBox& box, int threads) {
    BoxPartition p;
    const u64 want = static_cast<u64>(threads) * 16;
    while (p.prefix_len < box.n && p.blocks < want) {
        p.blocks *= box.radix;
        ++p.prefix_len;
    }
    p.span = box.size / p.blocks;
    return p;
}

int thread_count(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

void ParallelGuard::record(const char* what) {
#pragma omp critical(groupdet_parallel_guard)
    {
        if (!failed.load()) message = what;
    }
    failed.store(true);
}

void ParallelGuard::rethrow() const {
    if (failed.load()) throw InternalError(message);
}

}  // namespace groupdet::detail
