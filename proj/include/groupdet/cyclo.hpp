#pragma once

#include <cstdint>
#include <vector>

#include "groupdet/bigint.hpp"
#include "groupdet/group.hpp"

namespace groupdet::cyclo {

// Monic m-th cyclotomic polynomial Phi_m as a coefficient vector (index =
// degree). Computed by dividing x^m - 1 by the lower-order cyclotomic
// polynomials; cached per modulus.
const std::vector<BigInt>& cyclotomic_polynomial(std::uint32_t m);

// Element of Z[zeta_m], stored as an integer coefficient vector of length m
// (a polynomial in zeta modulo zeta^m - 1). Multiplication is cyclic
// convolution; the canonical form reduces modulo Phi_m and is unique.
class CycloInt {
public:
    explicit CycloInt(std::uint32_t modulus);
    static CycloInt integer(std::uint32_t modulus, BigInt value);

    std::uint32_t modulus() const { return modulus_; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    void add_at(std::uint64_t power, const BigInt& value);  // += value * zeta^power

    CycloInt operator*(const CycloInt& rhs) const;
    CycloInt operator+(const CycloInt& rhs) const;
    CycloInt operator-(const CycloInt& rhs) const;

    CycloInt& canonicalize();  // reduce modulo Phi_m in place
    bool is_zero() const;

    // Canonical form must be a constant polynomial; otherwise this is an
    // arithmetic bug and InternalError is thrown.
    BigInt to_integer() const;
    bool is_rational_integer() const;

    bool operator==(const CycloInt& rhs) const;  // compares canonical forms

private:
    std::uint32_t modulus_;
    std::vector<BigInt> coeffs_;
};

// Degree-one representation of an abelian group as an exponent tuple:
// chi(g) = zeta_m^{m * sum_t e_t c_t / n_t} with m = exponent(G).
struct Character {
    std::vector<std::uint64_t> exponents;
};

// All |G| characters, the trivial one first, in mixed-radix exponent order.
std::vector<Character> characters(const FiniteGroup& g);

// Exponent of zeta_m in chi(g).
std::uint32_t character_slot(const FiniteGroup& g, const Character& chi, std::uint64_t elem);

// sum_g chi(g) a_g as a cyclotomic integer.
CycloInt character_sum(const FiniteGroup& g, const Character& chi, const Assignment& a);

// prod_chi sum_g chi(g) a_g computed in Z[zeta_m]; the canonical form is a
// rational integer and equals theta(G, a).
BigInt dedekind_theta(const FiniteGroup& g, const Assignment& a);

struct AlphaBeta {
    BigInt alpha;
    BigInt beta;
};

// Split over the first factor of order exactly p: alpha is the collapsed
// determinant over the integers, beta the product of the character sums
// nontrivial on that factor. alpha * beta = theta(G, a); beta >= 0 for odd p.
AlphaBeta alpha_beta(const FiniteGroup& g, const Assignment& a);

struct FrobeniusParts {
    BigInt linear_part;    // theta of the commutator collapse on C2xC2
    BigInt quadratic_det;  // det of the degree-2 irrep sum
};

// Factorization theta(G, a) = linear_part * quadratic_det^2 for Q8 and D4.
// The Q8 determinant is computed over the Gaussian integers and is always a
// rational integer.
FrobeniusParts frobenius_factors(const FiniteGroup& g, const Assignment& a);

}  // namespace groupdet::cyclo
