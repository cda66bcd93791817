#pragma once

#include "groupdet/bigint.hpp"
#include "groupdet/group.hpp"

namespace groupdet::exactdet {

enum class DetMethod { direct_determinant, character_product };

struct DetResult {
    BigInt value;
    DetMethod method;
};

// Exact integer group determinant: det(a_{g h^{-1}}) by fraction-free
// Bareiss elimination. Arbitrary precision throughout.
BigInt theta(const FiniteGroup& g, const Assignment& a);

// Same value through a chosen route. character_product uses the Dedekind
// factorization for abelian groups and the Frobenius factorization for
// Q8/D4; both routes are exact.
DetResult theta_with(const FiniteGroup& g, const Assignment& a, DetMethod method);

// Group-algebra convolution: c_g = sum_{xy=g} a_x b_y, so that
// theta(a * b) = theta(a) theta(b).
Assignment convolve(const FiniteGroup& g, const Assignment& a, const Assignment& b);

// Fraction-free determinant of a square integer matrix (row swaps with sign
// tracking; exact divisions).
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

}  // namespace groupdet::exactdet
