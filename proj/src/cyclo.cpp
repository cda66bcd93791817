#include "groupdet/cyclo.hpp"

#include <map>
#include <mutex>

#include "groupdet/errors.hpp"
#include "groupdet/exactdet.hpp"

namespace groupdet::cyclo {

namespace {

using u64 = std::uint64_t;
using Poly = std::vector<BigInt>;  // coefficient vector, index = degree

void poly_trim(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Exact quotient num / den for monic den.
Poly poly_div_exact(Poly num, const Poly& den) {
    if (den.empty() || den.back() != 1) throw InternalError("poly_div_exact expects a monic divisor");
    if (num.size() < den.size()) {
        poly_trim(num);
        if (num.size() == 1 && num[0] == 0) return {BigInt(0)};
        throw InternalError("poly_div_exact: degree underflow");
    }
    Poly quot(num.size() - den.size() + 1, BigInt(0));
    for (std::size_t d = num.size(); d-- >= den.size();) {
        BigInt c = num[d];
        if (c == 0) continue;
        std::size_t shift = d - (den.size() - 1);
        quot[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    }
    for (const BigInt& c : num)
        if (c != 0) throw InternalError("poly_div_exact: nonzero remainder");
    return quot;
}

const Poly& phi_cached(std::uint32_t m) {
    static std::map<std::uint32_t, Poly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);

    auto compute = [](auto&& self, std::uint32_t mm) -> const Poly& {
        auto it = cache.find(mm);
        if (it != cache.end()) return it->second;
        Poly result;
        if (mm == 1) {
            result = {BigInt(-1), BigInt(1)};  // x - 1
        } else {
            Poly num(mm + 1, BigInt(0));  // x^m - 1
            num[0] = -1;
            num[mm] = 1;
            for (std::uint32_t d = 1; d < mm; ++d) {
                if (mm % d != 0) continue;
                num = poly_div_exact(std::move(num), self(self, d));
            }
            result = std::move(num);
        }
        return cache.emplace(mm, std::move(result)).first->second;
    };
    return compute(compute, m);
}

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(std::uint32_t m) {
    if (m == 0) throw DomainError("cyclotomic modulus must be positive");
    return phi_cached(m);
}

CycloInt::CycloInt(std::uint32_t modulus) : modulus_(modulus) {
    if (modulus == 0) throw DomainError("cyclotomic modulus must be positive");
    coeffs_.assign(modulus, BigInt(0));
}

CycloInt CycloInt::integer(std::uint32_t modulus, BigInt value) {
    CycloInt c(modulus);
    c.coeffs_[0] = std::move(value);
    return c;
}

void CycloInt::add_at(u64 power, const BigInt& value) {
    coeffs_[static_cast<std::size_t>(power % modulus_)] += value;
}

CycloInt CycloInt::operator*(const CycloInt& rhs) const {
    if (modulus_ != rhs.modulus_) throw DomainError("cyclotomic modulus mismatch");
    CycloInt out(modulus_);
    const std::size_t m = modulus_;
    for (std::size_t i = 0; i < m; ++i) {
        if (coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (rhs.coeffs_[j] == 0) continue;
            std::size_t k = i + j;
            if (k >= m) k -= m;
            out.coeffs_[k] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    return out;
}

CycloInt CycloInt::operator+(const CycloInt& rhs) const {
    if (modulus_ != rhs.modulus_) throw DomainError("cyclotomic modulus mismatch");
    CycloInt out = *this;
    for (std::size_t i = 0; i < modulus_; ++i) out.coeffs_[i] += rhs.coeffs_[i];
    return out;
}

CycloInt CycloInt::operator-(const CycloInt& rhs) const {
    if (modulus_ != rhs.modulus_) throw DomainError("cyclotomic modulus mismatch");
    CycloInt out = *this;
    for (std::size_t i = 0; i < modulus_; ++i) out.coeffs_[i] -= rhs.coeffs_[i];
    return out;
}

CycloInt& CycloInt::canonicalize() {
    const Poly& phi = cyclotomic_polynomial(modulus_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t d = coeffs_.size(); d-- > deg;) {
        if (coeffs_[d] == 0) continue;
        BigInt c = coeffs_[d];
        std::size_t shift = d - deg;
        for (std::size_t i = 0; i < phi.size(); ++i) coeffs_[shift + i] -= c * phi[i];
    }
    return *this;
}

bool CycloInt::is_zero() const {
    CycloInt c = *this;
    c.canonicalize();
    for (const BigInt& x : c.coeffs_)
        if (x != 0) return false;
    return true;
}

bool CycloInt::is_rational_integer() const {
    CycloInt c = *this;
    c.canonicalize();
    for (std::size_t i = 1; i < c.coeffs_.size(); ++i)
        if (c.coeffs_[i] != 0) return false;
    return true;
}

BigInt CycloInt::to_integer() const {
    CycloInt c = *this;
    c.canonicalize();
    for (std::size_t i = 1; i < c.coeffs_.size(); ++i)
        if (c.coeffs_[i] != 0)
            throw InternalError("cyclotomic value is not a rational integer");
    return c.coeffs_[0];
}

bool CycloInt::operator==(const CycloInt& rhs) const {
    if (modulus_ != rhs.modulus_) return false;
    CycloInt a = *this, b = rhs;
    a.canonicalize();
    b.canonicalize();
    return a.coeffs_ == b.coeffs_;
}

std::vector<Character> characters(const FiniteGroup& g) {
    if (!g.is_abelian()) throw DomainError("characters are defined here for abelian groups only");
    std::vector<Character> out;
    out.reserve(static_cast<std::size_t>(g.order()));
    for (u64 i = 0; i < g.order(); ++i) out.push_back({g.coords(i)});
    return out;
}

std::uint32_t character_slot(const FiniteGroup& g, const Character& chi, u64 elem) {
    const u64 m = g.exponent();
    const auto& factors = g.factors();
    auto c = g.coords(elem);
    u64 slot = 0;
    for (std::size_t t = 0; t < factors.size(); ++t) {
        unsigned __int128 term = static_cast<unsigned __int128>(chi.exponents[t] % m) * (c[t] % m);
        term %= m;
        term = term * (m / factors[t]) % m;
        slot = (slot + static_cast<u64>(term)) % m;
    }
    return static_cast<std::uint32_t>(slot);
}

CycloInt character_sum(const FiniteGroup& g, const Character& chi, const Assignment& a) {
    if (a.size() != g.order()) throw DomainError("assignment length mismatch");
    CycloInt s(static_cast<std::uint32_t>(g.exponent()));
    for (u64 i = 0; i < g.order(); ++i)
        s.add_at(character_slot(g, chi, i), a[static_cast<std::size_t>(i)]);
    return s;
}

BigInt dedekind_theta(const FiniteGroup& g, const Assignment& a) {
    if (!g.is_abelian()) throw DomainError("Dedekind factorization applies to abelian groups");
    if (a.size() != g.order()) throw DomainError("assignment length mismatch");
    const auto m = static_cast<std::uint32_t>(g.exponent());
    CycloInt prod = CycloInt::integer(m, 1);
    for (const Character& chi : characters(g)) prod = prod * character_sum(g, chi, a);
    return prod.to_integer();
}

AlphaBeta alpha_beta(const FiniteGroup& g, const Assignment& a) {
    if (!g.is_abelian() || !g.prime())
        throw DomainError("alpha/beta split needs an abelian p-group");
    if (a.size() != g.order()) throw DomainError("assignment length mismatch");
    const u64 p = *g.prime();
    std::size_t designated = g.factors().size();
    for (std::size_t t = 0; t < g.factors().size(); ++t)
        if (g.factors()[t] == p) {
            designated = t;
            break;
        }
    if (designated == g.factors().size())
        throw DomainError("group has no direct factor of order exactly " + std::to_string(p));

    AlphaBeta out;
    out.alpha = exactdet::theta(drop_factor(g, designated), collapse_factor(g, designated, a));

    const auto m = static_cast<std::uint32_t>(g.exponent());
    CycloInt prod = CycloInt::integer(m, 1);
    for (const Character& chi : characters(g)) {
        if (chi.exponents[designated] == 0) continue;  // trivial on the C_p factor
        prod = prod * character_sum(g, chi, a);
    }
    out.beta = prod.to_integer();
    if (p % 2 == 1 && out.beta < 0)
        throw InternalError("beta must be nonnegative for odd p");
    return out;
}

namespace {

struct Mat2 {
    CycloInt a, b, c, d;  // row major

    static Mat2 zero(std::uint32_t m) { return {CycloInt(m), CycloInt(m), CycloInt(m), CycloInt(m)}; }

    Mat2 operator*(const Mat2& r) const {
        return {a * r.a + b * r.c, a * r.b + b * r.d, c * r.a + d * r.c, c * r.b + d * r.d};
    }
};

CycloInt cyc_int(std::uint32_t m, long v) { return CycloInt::integer(m, BigInt(v)); }

CycloInt cyc_zeta(std::uint32_t m, u64 k) {
    CycloInt c(m);
    c.add_at(k, 1);
    return c;
}

// Degree-2 irreducible representation, one matrix per element in canonical
// order. Q8 over the Gaussian integers Z[zeta_4]; D4 with entries in {0,+-1}.
std::vector<Mat2> irrep_matrices(BuiltinTag tag) {
    const std::uint32_t m = 4;
    auto I = Mat2{cyc_int(m, 1), cyc_int(m, 0), cyc_int(m, 0), cyc_int(m, 1)};
    std::vector<Mat2> rep(8, Mat2::zero(m));
    if (tag == BuiltinTag::q8) {
        // i -> diag(zeta_4, -zeta_4), j -> [[0,1],[-1,0]], k = i j.
        Mat2 mi{cyc_zeta(m, 1), cyc_int(m, 0), cyc_int(m, 0), cyc_int(m, 0) - cyc_zeta(m, 1)};
        Mat2 mj{cyc_int(m, 0), cyc_int(m, 1), cyc_int(m, -1), cyc_int(m, 0)};
        Mat2 mk = mi * mj;
        Mat2 neg{cyc_int(m, -1), cyc_int(m, 0), cyc_int(m, 0), cyc_int(m, -1)};
        rep[0] = I;
        rep[1] = neg * I;
        rep[2] = mi;
        rep[3] = neg * mi;
        rep[4] = mj;
        rep[5] = neg * mj;
        rep[6] = mk;
        rep[7] = neg * mk;
    } else {
        // r -> rotation by a quarter turn, s -> reflection.
        Mat2 mr{cyc_int(m, 0), cyc_int(m, -1), cyc_int(m, 1), cyc_int(m, 0)};
        Mat2 ms{cyc_int(m, 1), cyc_int(m, 0), cyc_int(m, 0), cyc_int(m, -1)};
        rep[0] = I;
        for (int a = 1; a < 4; ++a) rep[static_cast<std::size_t>(a)] = rep[static_cast<std::size_t>(a - 1)] * mr;
        rep[4] = ms;
        for (int a = 1; a < 4; ++a) rep[static_cast<std::size_t>(4 + a)] = rep[static_cast<std::size_t>(4 + a - 1)] * mr;
    }
    return rep;
}

}  // namespace

FrobeniusParts frobenius_factors(const FiniteGroup& g, const Assignment& a) {
    if (g.is_abelian()) throw DomainError("Frobenius split applies to Q8 and D4");
    if (a.size() != g.order()) throw DomainError("assignment length mismatch");

    Abelianization ab = abelianization(g);
    FrobeniusParts out;
    out.linear_part = exactdet::theta(ab.quotient, collapse_commutator(g, a));

    const auto rep = irrep_matrices(g.tag());
    Mat2 sum = Mat2::zero(4);
    for (std::size_t i = 0; i < 8; ++i) {
        CycloInt coeff = CycloInt::integer(4, a[i]);
        sum.a = sum.a + coeff * rep[i].a;
        sum.b = sum.b + coeff * rep[i].b;
        sum.c = sum.c + coeff * rep[i].c;
        sum.d = sum.d + coeff * rep[i].d;
    }
    CycloInt det = sum.a * sum.d - sum.b * sum.c;
    // Always a rational integer, including the Gaussian case.
    out.quadratic_det = det.to_integer();
    return out;
}

}  // namespace groupdet::cyclo
