#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "groupdet/bigint.hpp"

namespace groupdet {

enum class BuiltinTag { q8, d4 };

// A finite group with a fixed canonical element order; index 0 is always the
// identity. Abelian groups are direct products of cyclic groups in the order
// written, enumerated in mixed radix with the leftmost factor most
// significant. Q8 and D4 use fixed element lists (Q8: 1, -1, i, -i, j, -j,
// k, -k; D4: e, r, r^2, r^3, s, sr, sr^2, sr^3) with hardcoded
// multiplication tables.
class FiniteGroup {
public:
    // Grammar: atom ("x" atom)* | "Q8" | "D4", atom = "C" <positive int>.
    // Case-insensitive; whitespace is rejected.
    static FiniteGroup parse(std::string_view spec);
    static FiniteGroup abelian(std::vector<std::uint64_t> factors);
    static FiniteGroup builtin(BuiltinTag tag);

    bool is_abelian() const { return !tag_.has_value(); }
    BuiltinTag tag() const;  // throws DomainError on abelian groups
    const std::vector<std::uint64_t>& factors() const { return factors_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t exponent() const { return exponent_; }
    // p when every element order is a power of the same prime p (and |G| > 1).
    std::optional<std::uint64_t> prime() const { return prime_; }
    std::string spec_string() const;

    std::uint64_t mul(std::uint64_t i, std::uint64_t j) const;
    std::uint64_t inverse(std::uint64_t i) const;

    // Mixed-radix coordinates; abelian groups only.
    std::vector<std::uint64_t> coords(std::uint64_t index) const;
    std::uint64_t index_of(const std::vector<std::uint64_t>& coords) const;

private:
    FiniteGroup() = default;
    void finish_abelian();

    std::vector<std::uint64_t> factors_;
    std::optional<BuiltinTag> tag_;
    std::uint64_t order_ = 1;
    std::uint64_t exponent_ = 1;
    std::optional<std::uint64_t> prime_;
};

// Integer coefficient vector a_g, indexed in the group's canonical order.
using Assignment = std::vector<BigInt>;

// Cayley index matrix: M[i][j] = index(g_i * g_j^{-1}). A Latin square with
// zero diagonal. Guarded to |G| <= 4096.
std::vector<std::vector<std::uint32_t>> group_matrix(const FiniteGroup& g);

struct Abelianization {
    FiniteGroup quotient;
    std::vector<std::uint32_t> projection;  // element index -> quotient index
};

// G/G' with the canonical projection. Identity for abelian groups; for Q8
// and D4 the quotient is C2xC2.
Abelianization abelianization(const FiniteGroup& g);

// The abelian group left after deleting one direct factor (C1 when the last
// factor is dropped).
FiniteGroup drop_factor(const FiniteGroup& g, std::size_t factor_index);

// b_[h] = sum of a over the fibers of the projection that forgets the given
// coordinate. Preserves the total coefficient sum.
Assignment collapse_factor(const FiniteGroup& g, std::size_t factor_index, const Assignment& a);

// b_[gG'] = sum of a over cosets of the commutator subgroup.
Assignment collapse_commutator(const FiniteGroup& g, const Assignment& a);

// Coordinate permutations of assignments induced by Aut(G): maps[k][g] is
// the index of sigma_k(g). Exhaustive enumeration; |G| <= 16 only.
std::vector<std::vector<std::uint32_t>> automorphism_maps(const FiniteGroup& g);

}  // namespace groupdet
