#include "groupdet/exactdet.hpp"

#include <utility>

#include "groupdet/cyclo.hpp"
#include "groupdet/errors.hpp"

namespace groupdet::exactdet {

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    for (const auto& row : m)
        if (row.size() != n) throw DomainError("determinant of a non-square matrix");

    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;  // zero column below the diagonal
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                // Bareiss guarantees exactness of this division.
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

BigInt theta(const FiniteGroup& g, const Assignment& a) {
    if (a.size() != g.order()) throw DomainError("assignment length does not match group order");
    const std::size_t n = static_cast<std::size_t>(g.order());
    std::vector<std::uint64_t> inv(n);
    for (std::size_t j = 0; j < n; ++j) inv[j] = g.inverse(j);
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a[static_cast<std::size_t>(g.mul(i, inv[j]))];
    return bareiss_determinant(std::move(m));
}

DetResult theta_with(const FiniteGroup& g, const Assignment& a, DetMethod method) {
    if (method == DetMethod::direct_determinant) return {theta(g, a), method};
    if (g.is_abelian()) return {cyclo::dedekind_theta(g, a), method};
    auto parts = cyclo::frobenius_factors(g, a);
    return {parts.linear_part * parts.quadratic_det * parts.quadratic_det, method};
}

Assignment convolve(const FiniteGroup& g, const Assignment& a, const Assignment& b) {
    if (a.size() != g.order() || b.size() != g.order())
        throw DomainError("assignment length does not match group order");
    const std::size_t n = static_cast<std::size_t>(g.order());
    Assignment c(n, BigInt(0));
    for (std::size_t x = 0; x < n; ++x) {
        if (a[x] == 0) continue;
        for (std::size_t y = 0; y < n; ++y)
            c[static_cast<std::size_t>(g.mul(x, y))] += a[x] * b[y];
    }
    return c;
}

}  // namespace groupdet::exactdet
