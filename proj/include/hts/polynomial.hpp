#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace hts {

// Univariate polynomial in λ with exact rational coefficients, ascending degree.
// Trailing zeros are always stripped, so equality is coefficient-wise equality.
class Polynomial {
public:
    static constexpr int kZeroDegree = -1;

    Polynomial() = default;

    explicit Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) {
        normalize();
    }

    Polynomial(std::initializer_list<Rational> coefficients) : c_(coefficients) { normalize(); }

    static Polynomial constant(const Rational& value) { return Polynomial(std::vector<Rational>{value}); }

    static Polynomial monomial(const Rational& coefficient, std::size_t degree) {
        std::vector<Rational> c(degree + 1);
        c[degree] = coefficient;
        return Polynomial(std::move(c));
    }

    // λ
    static Polynomial identity() { return monomial(1, 1); }

    // λ − root
    static Polynomial linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }

    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    const std::vector<Rational>& coefficients() const { return c_; }

    Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    const Rational& leading() const {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    // Horner.
    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    Polynomial& operator+=(const Polynomial& rhs) {
        if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
        for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
        normalize();
        return *this;
    }

    Polynomial& operator-=(const Polynomial& rhs) {
        if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size());
        for (std::size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
        normalize();
        return *this;
    }

    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= s;
        return *this;
    }

    Polynomial& operator*=(const Polynomial& rhs) {
        *this = *this * rhs;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator-(Polynomial a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
        mpq_class t;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                mpq_mul(t.get_mpq_t(), a.c_[i].get_mpq_t(), b.c_[j].get_mpq_t());
                out[i + j] += t;
            }
        }
        return Polynomial(std::move(out));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline Polynomial pow(const Polynomial& base, long long exponent) {
    if (exponent < 0) throw DomainError("negative exponent " + std::to_string(exponent));
    Polynomial result = Polynomial::constant(1);
    Polynomial b = base;
    auto e = static_cast<unsigned long long>(exponent);
    while (e != 0) {
        if (e & 1U) result *= b;
        e >>= 1U;
        if (e != 0) b *= b;
    }
    return result;
}

inline Polynomial derivative(const Polynomial& p) {
    const auto& c = p.coefficients();
    if (c.size() <= 1) return {};
    std::vector<Rational> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<unsigned long>(i);
    return Polynomial(std::move(d));
}

// Euclidean division over Q: a = q·b + r with deg r < deg b.
inline std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<Rational> r = a.coefficients();
    const auto& bc = b.coefficients();
    const std::size_t db = bc.size() - 1;
    std::vector<Rational> q(r.size() - db);
    const Rational inv_lead = 1 / bc.back();
    mpq_class t;
    for (std::size_t i = r.size(); i-- > db;) {
        if (r[i] == 0) continue;
        const Rational factor = r[i] * inv_lead;
        q[i - db] = factor;
        for (std::size_t j = 0; j <= db; ++j) {
            mpq_mul(t.get_mpq_t(), factor.get_mpq_t(), bc[j].get_mpq_t());
            r[i - db + j] -= t;
        }
    }
    r.resize(db);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) {
        throw DivisibilityError("exact_divide: remainder of degree " + std::to_string(r.degree()));
    }
    return q;
}

inline Polynomial monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * (1 / p.leading());
}

namespace detail {

using IntPoly = std::vector<BigInt>;  // ascending, trailing zeros stripped

inline void strip(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline BigInt content(const IntPoly& p) {
    BigInt g = 0;
    for (const auto& x : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// Primitive part with positive leading coefficient.
inline IntPoly primitive(IntPoly p) {
    strip(p);
    if (p.empty()) return p;
    BigInt g = content(p);
    if (sgn(p.back()) < 0) g = -g;
    for (auto& x : p) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return p;
}

// Scales p by the lcm of its denominators; the result has integer coefficients
// and the same sign as p (positive scale factor).
inline IntPoly to_integer(const Polynomial& p) {
    BigInt l = 1;
    for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    IntPoly out;
    out.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) {
        BigInt v = l / c.get_den();
        out.emplace_back(v * c.get_num());
    }
    return out;
}

inline Polynomial to_rational(const IntPoly& p) {
    std::vector<Rational> c;
    c.reserve(p.size());
    for (const auto& x : p) c.emplace_back(x);
    return Polynomial(std::move(c));
}

// lc(b)^(deg a − deg b + 1)·a mod b, computed without fractions.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    const BigInt& lc = b.back();
    long long pending = static_cast<long long>(a.size()) - static_cast<long long>(db);
    BigInt t;
    while (a.size() > db && !a.empty()) {
        const BigInt lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (auto& x : a) x *= lc;
        for (std::size_t j = 0; j <= db; ++j) {
            mpz_mul(t.get_mpz_t(), lead.get_mpz_t(), b[j].get_mpz_t());
            a[shift + j] -= t;
        }
        strip(a);
        --pending;
    }
    if (pending > 0 && !a.empty()) {
        const BigInt f = ipow(lc, static_cast<unsigned long>(pending));
        for (auto& x : a) x *= f;
    }
    return a;
}

}  // namespace detail

// Monic gcd over Q, by primitive pseudo-remainder sequences over Z. gcd(0, 0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    detail::IntPoly x = detail::primitive(detail::to_integer(a));
    detail::IntPoly y = detail::primitive(detail::to_integer(b));
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        if (y.size() == 1) return Polynomial::constant(1);
        detail::IntPoly r = detail::primitive(detail::pseudo_remainder(x, y));
        x = std::move(y);
        y = std::move(r);
    }
    return monic(detail::to_rational(x));
}

struct SquarefreeFactor {
    Polynomial factor;  // monic, square-free, non-constant
    int multiplicity;
};

// Yun's algorithm. The product of factor^multiplicity equals monic(p).
inline std::vector<SquarefreeFactor> squarefree_decomposition(const Polynomial& p) {
    if (p.is_zero()) throw DomainError("square-free decomposition of the zero polynomial");
    std::vector<SquarefreeFactor> out;
    if (p.degree() == 0) return out;
    const Polynomial f = monic(p);
    const Polynomial df = derivative(f);
    const Polynomial a0 = gcd(f, df);
    Polynomial b = exact_divide(f, a0);
    Polynomial c = exact_divide(df, a0);
    Polynomial d = c - derivative(b);
    for (int i = 1; b.degree() > 0; ++i) {
        const Polynomial a = gcd(b, d);
        if (a.degree() > 0) out.push_back({a, i});
        b = exact_divide(b, a);
        c = exact_divide(d, a);
        d = c - derivative(b);
    }
    return out;
}

// Monic product of the distinct irreducible factors (the radical).
inline Polynomial squarefree_part(const Polynomial& p) {
    if (p.is_zero()) throw DomainError("square-free part of the zero polynomial");
    if (p.degree() == 0) return Polynomial::constant(1);
    return exact_divide(monic(p), gcd(p, derivative(p)));
}

// Largest m with (λ − x)^m | p.
inline int root_multiplicity_at(const Polynomial& p, const Rational& x) {
    if (p.is_zero()) throw DomainError("root multiplicity in the zero polynomial");
    std::vector<Rational> c = p.coefficients();
    int m = 0;
    while (c.size() > 1) {
        // synthetic division by (λ − x)
        std::vector<Rational> q(c.size() - 1);
        Rational carry = 0;
        for (std::size_t i = c.size(); i-- > 1;) {
            carry = carry * x + c[i];
            q[i - 1] = carry;
        }
        if (carry * x + c[0] != 0) break;
        c = std::move(q);
        ++m;
    }
    return m;
}

// True iff p and q vanish on exactly the same set of complex numbers.
inline bool same_root_set(const Polynomial& p, const Polynomial& q) {
    return squarefree_part(p) == squarefree_part(q);
}

// Coefficient strings "num/den", ascending degree; the zero polynomial is [].
inline std::vector<std::string> serialize(const Polynomial& p) {
    std::vector<std::string> out;
    out.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) out.push_back(to_string(c));
    return out;
}

inline Polynomial deserialize_polynomial(const std::vector<std::string>& coefficients) {
    std::vector<Rational> c;
    c.reserve(coefficients.size());
    for (const auto& s : coefficients) c.push_back(parse_rational(s));
    if (!c.empty() && c.back() == 0) {
        throw ValidationError("polynomial document has a trailing zero coefficient");
    }
    return Polynomial(std::move(c));
}

// Human-readable form in λ, highest degree first.
inline std::string to_display_string(const Polynomial& p, const std::string& var = "λ") {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coefficients();
    for (std::size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        Rational a = c[i];
        const bool negative = sgn(a) < 0;
        if (negative) a = -a;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const bool unit = a == 1;
        if (!unit || i == 0) out += a.get_str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_display_string(p); }

}  // namespace hts
