#include "groupdet/bigint.hpp"

#include <cctype>

#include "groupdet/errors.hpp"

namespace groupdet {

BigInt math_mod(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt exact_div(const BigInt& num, const BigInt& den) {
    if (den == 0) throw InternalError("exact_div: zero divisor");
    BigInt q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw InternalError("exact_div: division is not exact");
    return q;
}

BigInt pow_big(const BigInt& base, std::uint64_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

BigInt parse_bigint(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    if (i == text.size()) throw ParseError("not an integer: '" + text + "'");
    for (; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ParseError("not an integer: '" + text + "'");
    return BigInt(text, 10);
}

}  // namespace groupdet
