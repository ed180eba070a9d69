#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace hts {

// mpq_class keeps itself canonical (lowest terms, positive denominator) after
// every arithmetic operation; the only way to break that is mpq_set_* without
// canonicalize, which parse_rational guards against.
using BigInt = mpz_class;
using Rational = mpq_class;

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const BigInt& z) { return sgn(z); }

// "num/den" with an explicit denominator, always.
inline std::string to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }

// Accepts "num/den" or a bare integer.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    const auto slash = s.find('/');
    BigInt num;
    BigInt den = 1;
    auto read = [&](const std::string& part, BigInt& out) {
        if (part.empty() || out.set_str(part, 10) != 0) {
            throw ValidationError("malformed rational '" + s + "'");
        }
    };
    if (slash == std::string::npos) {
        read(s, num);
    } else {
        read(s.substr(0, slash), num);
        read(s.substr(slash + 1), den);
        if (den == 0) {
            throw ValidationError("zero denominator in rational '" + s + "'");
        }
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline BigInt ipow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline Rational ipow(const Rational& base, unsigned long exponent) {
    Rational r(ipow(base.get_num(), exponent), ipow(base.get_den(), exponent));
    return r;
}

inline BigInt floor(const Rational& q) {
    BigInt r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Decimal rendering with `digits` significant fraction digits; presentation only.
inline std::string to_decimal(const Rational& q, int digits = 15) {
    mpf_class f(q, 64 + static_cast<mp_bitcnt_t>(digits * 4));
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
    if (mant.empty() || mant == "0") return "0";
    std::string out;
    if (mant[0] == '-') {
        out = "-";
        mant.erase(0, 1);
    }
    if (exp <= 0) {
        out += "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
    } else if (static_cast<std::size_t>(exp) >= mant.size()) {
        out += mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
    } else {
        out += mant.substr(0, static_cast<std::size_t>(exp)) + "." +
               mant.substr(static_cast<std::size_t>(exp));
    }
    return out;
}

}  // namespace hts
