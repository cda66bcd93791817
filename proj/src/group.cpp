#include "groupdet/group.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <numeric>
#include <set>

#include "groupdet/errors.hpp"
#include "groupdet/primes.hpp"

namespace groupdet {

namespace {

using u64 = std::uint64_t;

constexpr u64 kMaxOrder = u64(1) << 62;
constexpr u64 kMaxMatrixOrder = 4096;

// Q8 elements: 1, -1, i, -i, j, -j, k, -k.
constexpr std::array<std::array<std::uint8_t, 8>, 8> kQ8Mul = {{
    {0, 1, 2, 3, 4, 5, 6, 7},
    {1, 0, 3, 2, 5, 4, 7, 6},
    {2, 3, 1, 0, 6, 7, 5, 4},
    {3, 2, 0, 1, 7, 6, 4, 5},
    {4, 5, 7, 6, 1, 0, 2, 3},
    {5, 4, 6, 7, 0, 1, 3, 2},
    {6, 7, 4, 5, 3, 2, 1, 0},
    {7, 6, 5, 4, 2, 3, 0, 1},
}};

// D4 elements: e, r, r^2, r^3, s, sr, sr^2, sr^3 with s r s = r^{-1}.
constexpr std::array<std::array<std::uint8_t, 8>, 8> kD4Mul = {{
    {0, 1, 2, 3, 4, 5, 6, 7},
    {1, 2, 3, 0, 7, 4, 5, 6},
    {2, 3, 0, 1, 6, 7, 4, 5},
    {3, 0, 1, 2, 5, 6, 7, 4},
    {4, 5, 6, 7, 0, 1, 2, 3},
    {5, 6, 7, 4, 3, 0, 1, 2},
    {6, 7, 4, 5, 2, 3, 0, 1},
    {7, 4, 5, 6, 1, 2, 3, 0},
}};

const std::array<std::array<std::uint8_t, 8>, 8>& builtin_table(BuiltinTag tag) {
    return tag == BuiltinTag::q8 ? kQ8Mul : kD4Mul;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

}  // namespace

FiniteGroup FiniteGroup::abelian(std::vector<u64> factors) {
    if (factors.empty()) throw DomainError("a group needs at least one factor");
    FiniteGroup g;
    g.factors_ = std::move(factors);
    g.finish_abelian();
    return g;
}

void FiniteGroup::finish_abelian() {
    order_ = 1;
    exponent_ = 1;
    for (u64 f : factors_) {
        if (f == 0) throw DomainError("cyclic factor of order zero");
        if (order_ > kMaxOrder / f) throw DomainError("group order exceeds 2^62");
        order_ *= f;
        exponent_ = exponent_ / gcd_u64(exponent_, f) * f;
    }
    prime_.reset();
    if (order_ > 1) {
        std::optional<u64> p;
        bool is_p_group = true;
        for (u64 f : factors_) {
            if (f == 1) continue;
            auto pp = prime_power(f);
            if (!pp || (p && *p != pp->first)) {
                is_p_group = false;
                break;
            }
            p = pp->first;
        }
        if (is_p_group) prime_ = p;
    }
}

FiniteGroup FiniteGroup::builtin(BuiltinTag tag) {
    FiniteGroup g;
    g.tag_ = tag;
    g.order_ = 8;
    g.exponent_ = 4;
    g.prime_ = 2;
    return g;
}

FiniteGroup FiniteGroup::parse(std::string_view spec) {
    std::string upper;
    upper.reserve(spec.size());
    for (char c : spec) {
        if (std::isspace(static_cast<unsigned char>(c)))
            throw ParseError("whitespace in group spec");
        upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (upper == "Q8") return builtin(BuiltinTag::q8);
    if (upper == "D4") return builtin(BuiltinTag::d4);

    std::vector<u64> factors;
    std::size_t pos = 0;
    while (true) {
        std::size_t end = upper.find('X', pos);
        std::string atom = upper.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        if (atom.size() < 2 || atom[0] != 'C')
            throw ParseError("bad group atom '" + atom + "' (expected C<k>, Q8 or D4)");
        u64 value = 0;
        for (std::size_t i = 1; i < atom.size(); ++i) {
            char c = atom[i];
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad group atom '" + atom + "'");
            if (value > kMaxOrder / 10) throw ParseError("cyclic order too large in '" + atom + "'");
            value = value * 10 + static_cast<u64>(c - '0');
        }
        if (value == 0) throw ParseError("bad group atom '" + atom + "' (order must be positive)");
        factors.push_back(value);
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    return abelian(std::move(factors));
}

BuiltinTag FiniteGroup::tag() const {
    if (!tag_) throw DomainError("abelian group has no builtin tag");
    return *tag_;
}

std::string FiniteGroup::spec_string() const {
    if (tag_) return *tag_ == BuiltinTag::q8 ? "Q8" : "D4";
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += 'x';
        out += 'C' + std::to_string(factors_[i]);
    }
    return out;
}

std::vector<u64> FiniteGroup::coords(u64 index) const {
    if (tag_) throw DomainError("builtin groups have no mixed-radix coordinates");
    std::vector<u64> c(factors_.size());
    for (std::size_t t = factors_.size(); t-- > 0;) {
        c[t] = index % factors_[t];
        index /= factors_[t];
    }
    return c;
}

u64 FiniteGroup::index_of(const std::vector<u64>& c) const {
    if (tag_) throw DomainError("builtin groups have no mixed-radix coordinates");
    if (c.size() != factors_.size()) throw DomainError("coordinate arity mismatch");
    u64 idx = 0;
    for (std::size_t t = 0; t < factors_.size(); ++t) idx = idx * factors_[t] + c[t] % factors_[t];
    return idx;
}

u64 FiniteGroup::mul(u64 i, u64 j) const {
    if (tag_) return builtin_table(*tag_)[i][j];
    u64 out = 0;
    // Walk both indices most-significant first, adding coordinates mod n_t.
    u64 stride = order_;
    for (u64 f : factors_) {
        stride /= f;
        u64 ci = (i / stride) % f;
        u64 cj = (j / stride) % f;
        out += ((ci + cj) % f) * stride;
    }
    return out;
}

u64 FiniteGroup::inverse(u64 i) const {
    if (tag_) {
        const auto& t = builtin_table(*tag_);
        for (u64 j = 0; j < 8; ++j)
            if (t[i][j] == 0) return j;
        throw InternalError("builtin table has no inverse");
    }
    u64 out = 0;
    u64 stride = order_;
    for (u64 f : factors_) {
        stride /= f;
        u64 ci = (i / stride) % f;
        out += ((f - ci) % f) * stride;
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> group_matrix(const FiniteGroup& g) {
    if (g.order() > kMaxMatrixOrder) throw DomainError("group too large for an explicit Cayley matrix");
    const std::size_t n = static_cast<std::size_t>(g.order());
    std::vector<u64> inv(n);
    for (std::size_t j = 0; j < n; ++j) inv[j] = g.inverse(j);
    std::vector<std::vector<std::uint32_t>> m(n, std::vector<std::uint32_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = static_cast<std::uint32_t>(g.mul(i, inv[j]));
    return m;
}

Abelianization abelianization(const FiniteGroup& g) {
    if (g.is_abelian()) {
        Abelianization out{g, {}};
        out.projection.resize(static_cast<std::size_t>(g.order()));
        for (std::size_t i = 0; i < out.projection.size(); ++i)
            out.projection[i] = static_cast<std::uint32_t>(i);
        return out;
    }

    const std::size_t n = 8;
    // Commutator subgroup: closure of all x y x^{-1} y^{-1}.
    std::set<u64> comm;
    comm.insert(0);
    for (u64 x = 0; x < n; ++x)
        for (u64 y = 0; y < n; ++y)
            comm.insert(g.mul(g.mul(x, y), g.mul(g.inverse(x), g.inverse(y))));
    while (true) {
        std::set<u64> next = comm;
        for (u64 a : comm)
            for (u64 b : comm) next.insert(g.mul(a, b));
        if (next == comm) break;
        comm = std::move(next);
    }

    // Cosets in order of least element; coset 0 contains the identity.
    std::vector<int> coset_of(n, -1);
    std::vector<u64> reps;
    for (u64 e = 0; e < n; ++e) {
        if (coset_of[e] >= 0) continue;
        int label = static_cast<int>(reps.size());
        reps.push_back(e);
        for (u64 h : comm) coset_of[g.mul(e, h)] = label;
    }
    if (reps.size() != 4) throw InternalError("builtin abelianization is not of order 4");

    // Both builtin quotients are C2xC2: map coset 1 -> (1,0), coset 2 -> (0,1).
    auto coset_mul = [&](int a, int b) { return coset_of[g.mul(reps[a], reps[b])]; };
    for (int c = 1; c < 4; ++c)
        if (coset_mul(c, c) != 0) throw InternalError("builtin quotient is not exponent 2");
    std::array<std::uint32_t, 4> to_c22{};
    to_c22[0] = 0;
    to_c22[1] = 2;  // (1,0)
    to_c22[2] = 1;  // (0,1)
    to_c22[static_cast<std::size_t>(coset_mul(1, 2))] = 3;

    Abelianization out{FiniteGroup::abelian({2, 2}), {}};
    out.projection.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.projection[i] = to_c22[static_cast<std::size_t>(coset_of[i])];
    return out;
}

FiniteGroup drop_factor(const FiniteGroup& g, std::size_t factor_index) {
    if (!g.is_abelian()) throw DomainError("factor collapse applies to abelian groups only");
    if (factor_index >= g.factors().size()) throw DomainError("factor index out of range");
    std::vector<u64> rest;
    for (std::size_t t = 0; t < g.factors().size(); ++t)
        if (t != factor_index) rest.push_back(g.factors()[t]);
    if (rest.empty()) rest.push_back(1);  // trivial group
    return FiniteGroup::abelian(std::move(rest));
}

Assignment collapse_factor(const FiniteGroup& g, std::size_t factor_index, const Assignment& a) {
    if (!g.is_abelian()) throw DomainError("factor collapse applies to abelian groups only");
    if (factor_index >= g.factors().size()) throw DomainError("factor index out of range");
    if (a.size() != g.order()) throw DomainError("assignment length mismatch");
    FiniteGroup h = drop_factor(g, factor_index);
    Assignment b(static_cast<std::size_t>(h.order()), BigInt(0));
    for (u64 i = 0; i < g.order(); ++i) {
        auto c = g.coords(i);
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(factor_index));
        if (c.empty()) c.push_back(0);
        b[static_cast<std::size_t>(h.index_of(c))] += a[static_cast<std::size_t>(i)];
    }
    return b;
}

Assignment collapse_commutator(const FiniteGroup& g, const Assignment& a) {
    if (a.size() != g.order()) throw DomainError("assignment length mismatch");
    Abelianization ab = abelianization(g);
    Assignment b(static_cast<std::size_t>(ab.quotient.order()), BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i) b[ab.projection[i]] += a[i];
    return b;
}

namespace {

u64 element_order(const FiniteGroup& g, u64 x) {
    u64 acc = x, ord = 1;
    while (acc != 0) {
        acc = g.mul(acc, x);
        ++ord;
    }
    return ord;
}

// Automorphisms of an abelian group from generator images: the map sending
// factor generator e_t to img[t] extends to an endomorphism; keep bijections.
void abelian_automorphisms(const FiniteGroup& g, std::vector<std::vector<std::uint32_t>>& out) {
    const std::size_t n = static_cast<std::size_t>(g.order());
    const std::size_t s = g.factors().size();
    std::vector<u64> gens(s);
    {
        u64 stride = g.order();
        for (std::size_t t = 0; t < s; ++t) {
            stride /= g.factors()[t];
            gens[t] = stride;  // coordinate t equal to 1, rest 0
        }
    }
    std::vector<u64> img(s, 0);
    std::vector<std::uint32_t> map(n);
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == s) {
            std::vector<bool> seen(n, false);
            for (u64 x = 0; x < n; ++x) {
                auto c = g.coords(x);
                u64 y = 0;
                for (std::size_t u = 0; u < s; ++u)
                    for (u64 rep = 0; rep < c[u]; ++rep) y = g.mul(y, img[u]);
                if (seen[static_cast<std::size_t>(y)]) return;  // not injective
                seen[static_cast<std::size_t>(y)] = true;
                map[static_cast<std::size_t>(x)] = static_cast<std::uint32_t>(y);
            }
            out.push_back(map);
            return;
        }
        for (u64 cand = 0; cand < n; ++cand) {
            // order of the image must divide the generator's order
            if (g.factors()[t] % element_order(g, cand) != 0) continue;
            img[t] = cand;
            self(self, t + 1);
        }
    };
    rec(rec, 0);
}

// Order-8 builtins: filter the 7! permutations fixing the identity.
void builtin_automorphisms(const FiniteGroup& g, std::vector<std::vector<std::uint32_t>>& out) {
    std::vector<std::uint32_t> perm{0, 1, 2, 3, 4, 5, 6, 7};
    do {
        bool hom = true;
        for (u64 x = 0; x < 8 && hom; ++x)
            for (u64 y = 0; y < 8; ++y)
                if (perm[static_cast<std::size_t>(g.mul(x, y))] !=
                    g.mul(perm[static_cast<std::size_t>(x)], perm[static_cast<std::size_t>(y)])) {
                    hom = false;
                    break;
                }
        if (hom) out.push_back(perm);
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
}

}  // namespace

std::vector<std::vector<std::uint32_t>> automorphism_maps(const FiniteGroup& g) {
    if (g.order() > 16) throw DomainError("automorphism enumeration is limited to order <= 16");
    std::vector<std::vector<std::uint32_t>> out;
    if (g.is_abelian())
        abelian_automorphisms(g, out);
    else
        builtin_automorphisms(g, out);
    return out;
}

}  // namespace groupdet
