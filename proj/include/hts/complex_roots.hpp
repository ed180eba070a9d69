#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace hts {

// Approximate complex root. re and im are the exact binary values of the
// approximation; residual_bound is a proven upper bound on |p(re + i·im)| for the
// monic square-free part p.
struct ComplexRoot {
    Rational re;
    Rational im;
    Rational residual_bound;
};

class RootConvergenceError : public ConvergenceError {
public:
    RootConvergenceError(const std::string& what, std::vector<ComplexRoot> best)
        : ConvergenceError(what), best_(std::move(best)) {}

    const std::vector<ComplexRoot>& best_iterate() const noexcept { return best_; }

private:
    std::vector<ComplexRoot> best_;
};

namespace detail {

// All mpf_class values here are created with an explicit precision so that no
// global default precision is read or written.
struct Complex {
    mpf_class re;
    mpf_class im;
};

class ComplexArith {
public:
    explicit ComplexArith(mp_bitcnt_t prec) : prec_(prec) {}

    mpf_class real(double v) const { return mpf_class(v, prec_); }
    mpf_class real(const Rational& v) const { return mpf_class(v, prec_); }
    Complex make(double re, double im) const { return {real(re), real(im)}; }

    Complex add(const Complex& a, const Complex& b) const {
        return {mpf_class(a.re + b.re, prec_), mpf_class(a.im + b.im, prec_)};
    }
    Complex sub(const Complex& a, const Complex& b) const {
        return {mpf_class(a.re - b.re, prec_), mpf_class(a.im - b.im, prec_)};
    }
    Complex mul(const Complex& a, const Complex& b) const {
        return {mpf_class(a.re * b.re - a.im * b.im, prec_), mpf_class(a.re * b.im + a.im * b.re, prec_)};
    }
    mpf_class norm2(const Complex& a) const { return mpf_class(a.re * a.re + a.im * a.im, prec_); }
    Complex div(const Complex& a, const Complex& b) const {
        const mpf_class d = norm2(b);
        return {mpf_class((a.re * b.re + a.im * b.im) / d, prec_), mpf_class((a.im * b.re - a.re * b.im) / d, prec_)};
    }
    bool is_zero(const Complex& a) const { return sgn(a.re) == 0 && sgn(a.im) == 0; }

    // p(z) and p'(z) by Horner.
    void eval(const std::vector<mpf_class>& c, const Complex& z, Complex& value, Complex& slope) const {
        value = make(0, 0);
        slope = make(0, 0);
        for (std::size_t i = c.size(); i-- > 0;) {
            slope = add(mul(slope, z), value);
            value = mul(value, z);
            value.re += c[i];
        }
    }

    mp_bitcnt_t precision() const { return prec_; }

private:
    mp_bitcnt_t prec_;
};

// |p(re + i·im)|² exactly, for rational coefficients.
inline Rational exact_residual_squared(const Polynomial& p, const Rational& re, const Rational& im) {
    Rational ar = 0, ai = 0;
    const auto& c = p.coefficients();
    for (std::size_t i = c.size(); i-- > 0;) {
        Rational nr = ar * re - ai * im + c[i];
        Rational ni = ar * im + ai * re;
        ar = std::move(nr);
        ai = std::move(ni);
    }
    return ar * ar + ai * ai;
}

inline Rational certified_bound(const Rational& squared, mp_bitcnt_t prec) {
    if (squared == 0) return 0;
    mpf_class s(squared, prec);
    mpf_class root(0, prec);
    mpf_sqrt(root.get_mpf_t(), s.get_mpf_t());
    mpf_class scale(1, prec);
    scale += mpf_class(std::ldexp(1.0, -20), prec);
    Rational bound(mpf_class(root * scale, prec));
    while (bound * bound < squared) bound *= 2;
    return bound;
}

}  // namespace detail

// Simultaneous (Aberth–Ehrlich) iteration on the monic square-free part of p,
// carried out in `precision_bits` + guard bits. Roots come back sorted by (re, im).
inline std::vector<ComplexRoot> approx_complex_roots(const Polynomial& p, int precision_bits) {
    if (p.is_zero()) throw DomainError("approx_complex_roots of the zero polynomial");
    if (precision_bits < 64) throw DomainError("precision_bits must be at least 64");
    const Polynomial q = squarefree_part(p);
    const int d = q.degree();
    std::vector<ComplexRoot> out;
    if (d <= 0) return out;
    if (d == 1) {
        out.push_back({-q.coefficient(0), 0, 0});
        return out;
    }

    const auto prec = static_cast<mp_bitcnt_t>(precision_bits + 64);
    detail::ComplexArith ar(prec);
    std::vector<mpf_class> c;
    c.reserve(q.coefficients().size());
    for (const auto& x : q.coefficients()) c.push_back(ar.real(x));

    // Fujiwara bound for the starting circle.
    double radius = 0;
    for (int i = 0; i < d; ++i) {
        const double a = std::abs(to_double(q.coefficient(static_cast<std::size_t>(i))));
        if (a == 0) continue;
        radius = std::max(radius, 2 * std::pow(a, 1.0 / (d - i)));
    }
    if (radius == 0) radius = 1;

    std::vector<detail::Complex> z;
    z.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        const double theta = 2 * std::numbers::pi * j / d + 0.4;
        z.push_back(ar.make(radius * std::cos(theta), radius * std::sin(theta)));
    }

    const mpf_class eps2 = [&] {
        mpf_class e(1, prec);
        mpf_div_2exp(e.get_mpf_t(), e.get_mpf_t(), static_cast<mp_bitcnt_t>(2 * precision_bits));
        return e;
    }();
    const int cap = 200 + 20 * d + precision_bits;
    mpf_class worst(0, prec);
    int settled = 0;
    detail::Complex value = ar.make(0, 0), slope = ar.make(0, 0);
    for (int iter = 0; iter < cap; ++iter) {
        worst = 0;
        for (int i = 0; i < d; ++i) {
            auto& zi = z[static_cast<std::size_t>(i)];
            ar.eval(c, zi, value, slope);
            if (ar.is_zero(value)) continue;
            if (ar.is_zero(slope)) {
                zi.re += mpf_class(1e-3, prec);
                worst = 1;
                continue;
            }
            const detail::Complex ratio = ar.div(value, slope);
            detail::Complex sum = ar.make(0, 0);
            for (int j = 0; j < d; ++j) {
                if (j == i) continue;
                const detail::Complex diff = ar.sub(zi, z[static_cast<std::size_t>(j)]);
                if (ar.is_zero(diff)) continue;
                sum = ar.add(sum, ar.div(ar.make(1, 0), diff));
            }
            const detail::Complex denom = ar.sub(ar.make(1, 0), ar.mul(ratio, sum));
            const detail::Complex corr = ar.is_zero(denom) ? ratio : ar.div(ratio, denom);
            zi = ar.sub(zi, corr);
            mpf_class scale = ar.norm2(zi);
            if (scale < 1) scale = mpf_class(1, prec);
            const mpf_class rel = mpf_class(ar.norm2(corr) / scale, prec);
            if (rel > worst) worst = rel;
        }
        // one extra sweep after convergence polishes the last bits
        if (worst <= eps2) {
            if (++settled == 2) break;
        } else {
            settled = 0;
        }
    }

    for (const auto& zi : z) {
        ComplexRoot r;
        r.re = Rational(zi.re);
        r.im = Rational(zi.im);
        r.residual_bound = detail::certified_bound(detail::exact_residual_squared(q, r.re, r.im), prec);
        out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    });
    if (settled < 2) {
        throw RootConvergenceError("approx_complex_roots: no convergence after " + std::to_string(cap) +
                                       " sweeps (last relative correction² " + std::to_string(worst.get_d()) + ")",
                                   out);
    }
    return out;
}

}  // namespace hts
