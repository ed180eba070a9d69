#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "polynomial.hpp"

namespace hts {

struct IsolatingInterval {
    Rational lower;  // open interval (lower, upper), one distinct root inside
    Rational upper;
    int multiplicity;
};

struct ExactRealRoot {
    Rational root;
    int multiplicity;
};

struct RootIsolation {
    std::vector<IsolatingInterval> intervals;    // sorted, pairwise disjoint
    std::vector<ExactRealRoot> exact_rational_roots;  // sorted

    int real_root_count() const {
        int n = 0;
        for (const auto& i : intervals) n += i.multiplicity;
        for (const auto& r : exact_rational_roots) n += r.multiplicity;
        return n;
    }

    int distinct_count() const { return static_cast<int>(intervals.size() + exact_rational_roots.size()); }
};

// Sturm chain of a square-free polynomial, stored as primitive integer polynomials.
class SturmSequence {
public:
    explicit SturmSequence(const Polynomial& squarefree) {
        if (squarefree.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
        using detail::IntPoly;
        IntPoly p0 = detail::primitive(detail::to_integer(squarefree));
        chain_.push_back(p0);
        if (p0.size() <= 1) return;
        IntPoly p1(p0.size() - 1);
        for (std::size_t i = 1; i < p0.size(); ++i) p1[i - 1] = p0[i] * static_cast<unsigned long>(i);
        chain_.push_back(detail::primitive(p1));
        while (chain_.back().size() > 1) {
            const IntPoly& a = chain_[chain_.size() - 2];
            const IntPoly& b = chain_.back();
            IntPoly r = detail::pseudo_remainder(a, b);
            if (r.empty()) break;
            // prem = lc(b)^δ·rem; we need −rem up to a positive factor.
            const long long delta = static_cast<long long>(a.size()) - static_cast<long long>(b.size()) + 1;
            const bool flip = !(sgn(b.back()) < 0 && (delta % 2 == 1));
            if (flip) {
                for (auto& x : r) x = -x;
            }
            BigInt g = detail::content(r);
            for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
            chain_.push_back(std::move(r));
        }
    }

    // Number of distinct roots in the half-open interval (a, b], a < b.
    int count_roots(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

    // Number of distinct roots in (−∞, b].
    int count_roots_below(const Rational& b) const { return variations_at_minus_infinity() - variations(b); }

    // Number of distinct roots in (a, +∞).
    int count_roots_above(const Rational& a) const { return variations(a) - variations_at_plus_infinity(); }

    int total_distinct() const { return variations_at_minus_infinity() - variations_at_plus_infinity(); }

    int variations(const Rational& x) const {
        int v = 0;
        int last = 0;
        for (const auto& p : chain_) {
            const int s = sign_at(p, x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    const detail::IntPoly& base() const { return chain_.front(); }

    // sign of p(x), via Horner on the homogenised form p(n/d)·d^deg
    static int sign_at(const detail::IntPoly& p, const Rational& x) {
        if (p.empty()) return 0;
        const BigInt& n = x.get_num();
        const BigInt& d = x.get_den();
        BigInt acc = p.back();
        BigInt dpow = 1;
        for (std::size_t i = p.size() - 1; i-- > 0;) {
            acc *= n;
            dpow *= d;
            acc += p[i] * dpow;
        }
        return sgn(acc);
    }

private:
    int variations_at_plus_infinity() const {
        int v = 0, last = 0;
        for (const auto& p : chain_) {
            const int s = sgn(p.back());
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    int variations_at_minus_infinity() const {
        int v = 0, last = 0;
        for (const auto& p : chain_) {
            int s = sgn(p.back());
            if ((p.size() - 1) % 2 == 1) s = -s;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    std::vector<detail::IntPoly> chain_;
};

namespace detail {

// Simplest rational (smallest denominator, then smallest |numerator|) strictly inside (lo, hi).
// hi == nullopt means +∞.
inline Rational simplest_between(const Rational& lo, const std::optional<Rational>& hi) {
    if (!hi && sgn(lo) < 0) return 0;
    if (hi && sgn(lo) < 0 && sgn(*hi) > 0) return 0;
    if (hi && sgn(*hi) <= 0) return -simplest_between(-*hi, Rational(-lo));
    const BigInt fl = hts::floor(lo);
    const Rational next(fl + 1);
    if (!hi || next < *hi) return next;
    // (lo, hi) ⊂ [fl, fl+1]
    const Rational frac_lo = lo - Rational(fl);
    const Rational frac_hi = *hi - Rational(fl);
    std::optional<Rational> inv_hi;
    if (frac_lo != 0) inv_hi = 1 / frac_lo;
    const Rational inner = simplest_between(1 / frac_hi, inv_hi);
    return Rational(fl) + 1 / inner;
}

inline Rational cauchy_bound(const IntPoly& p) {
    BigInt m = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        BigInt a = abs(p[i]);
        if (a > m) m = a;
    }
    BigInt lead = abs(p.back());
    BigInt q = m / lead + 2;  // strict bound, integer
    return Rational(q);
}

class Isolator {
public:
    explicit Isolator(const Polynomial& squarefree) : sturm_(squarefree), base_(sturm_.base()) {}

    void run(std::vector<Rational>& exact, std::vector<std::pair<Rational, Rational>>& open) {
        if (base_.size() <= 1) return;
        const Rational bound = cauchy_bound(base_);
        split_at(Rational(-bound), Rational(0), bound, exact, open);
    }

    const SturmSequence& sturm() const { return sturm_; }

    int sign_at(const Rational& x) const { return SturmSequence::sign_at(base_, x); }

    // Shrinks (lo, hi), which holds exactly one root and non-root endpoints, until
    // width < limit. Returns the root if a bisection point hits it exactly.
    std::optional<Rational> refine(Rational& lo, Rational& hi, const Rational& limit) const {
        int slo = sign_at(lo);
        while (hi - lo >= limit) {
            const Rational mid = (lo + hi) / 2;
            const int s = sign_at(mid);
            if (s == 0) return mid;
            if (s == slo) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return std::nullopt;
    }

    // Decide whether the single root in (lo, hi) is rational; narrows the interval.
    std::optional<Rational> rational_root_in(Rational& lo, Rational& hi) const {
        const BigInt lead = abs(base_.back());
        const Rational limit(BigInt(1), lead * lead);
        if (auto hit = refine(lo, hi, limit)) return hit;
        const Rational candidate = simplest_between(lo, hi);
        if (candidate.get_den() <= lead && sign_at(candidate) == 0) return candidate;
        return std::nullopt;
    }

private:
    void isolate(const Rational& lo, const Rational& hi, std::vector<Rational>& exact,
                 std::vector<std::pair<Rational, Rational>>& open) {
        const int count = sturm_.count_roots(lo, hi);
        if (count == 0) return;
        if (count == 1) {
            open.emplace_back(lo, hi);
            return;
        }
        split_at(lo, (lo + hi) / 2, hi, exact, open);
    }

    // Recurse on (lo, c) and (c, hi); if c is itself a root, record it and step
    // off it far enough that no other root sits between.
    void split_at(const Rational& lo, const Rational& c, const Rational& hi, std::vector<Rational>& exact,
                  std::vector<std::pair<Rational, Rational>>& open) {
        if (sign_at(c) != 0) {
            isolate(lo, c, exact, open);
            isolate(c, hi, exact, open);
            return;
        }
        exact.push_back(c);
        Rational delta = std::min(c - lo, hi - c) / 2;
        while (sign_at(c - delta) == 0 || sign_at(c + delta) == 0 ||
               sturm_.count_roots(c - delta, c + delta) != 1) {
            delta /= 2;
        }
        isolate(lo, c - delta, exact, open);
        isolate(c + delta, hi, exact, open);
    }

    SturmSequence sturm_;
    IntPoly base_;
};

}  // namespace detail

// Real roots with multiplicity. Rational roots come out exactly; every isolating
// interval lies strictly on one side of zero.
inline RootIsolation isolate_real_roots(const Polynomial& p) {
    if (p.is_zero()) throw DomainError("isolate_real_roots of the zero polynomial");
    RootIsolation result;
    struct Pending {
        Rational lo, hi;
        int multiplicity;
        const detail::Isolator* owner;
    };
    std::vector<detail::Isolator> isolators;
    const auto factors = squarefree_decomposition(p);
    isolators.reserve(factors.size());
    for (const auto& f : factors) isolators.emplace_back(f.factor);

    std::vector<Pending> pending;
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
        std::vector<Rational> exact;
        std::vector<std::pair<Rational, Rational>> open;
        isolators[fi].run(exact, open);
        for (auto& r : exact) result.exact_rational_roots.push_back({r, factors[fi].multiplicity});
        for (auto& [lo, hi] : open) {
            Rational l = lo, h = hi;
            if (auto r = isolators[fi].rational_root_in(l, h)) {
                result.exact_rational_roots.push_back({*r, factors[fi].multiplicity});
            } else {
                pending.push_back({l, h, factors[fi].multiplicity, &isolators[fi]});
            }
        }
    }

    std::sort(result.exact_rational_roots.begin(), result.exact_rational_roots.end(),
              [](const auto& a, const auto& b) { return a.root < b.root; });

    // Keep intervals clear of the exact roots and of each other.
    auto shrink_past = [](Pending& iv, const Rational& point) {
        if (!(iv.lo < point && point < iv.hi)) return;
        const int s = iv.owner->sign_at(point);
        if (s == iv.owner->sign_at(iv.lo)) {
            iv.lo = point;
        } else {
            iv.hi = point;
        }
    };
    for (auto& iv : pending) {
        for (const auto& r : result.exact_rational_roots) shrink_past(iv, r.root);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) { return a.lo < b.lo; });
        for (std::size_t i = 0; i + 1 < pending.size(); ++i) {
            auto& a = pending[i];
            auto& b = pending[i + 1];
            if (b.lo < a.hi) {
                for (auto* iv : {&a, &b}) {
                    const Rational mid = (iv->lo + iv->hi) / 2;
                    if (iv->owner->sign_at(mid) == 0) {
                        // cannot happen for irrational roots; keep the invariant anyway
                        throw DomainError("isolate_real_roots: rational root escaped detection");
                    }
                    shrink_past(*iv, mid);
                }
                changed = true;
            }
        }
    }
    for (auto& iv : pending) {
        // strictly one side of zero, with nonzero endpoints
        while (sgn(iv.lo) == 0 || sgn(iv.hi) == 0) shrink_past(iv, (iv.lo + iv.hi) / 2);
        result.intervals.push_back({iv.lo, iv.hi, iv.multiplicity});
    }
    return result;
}

// Distinct real roots of p in (−∞, 0].
inline int count_nonpositive_real_roots(const Polynomial& p) {
    if (p.is_zero()) throw DomainError("root count of the zero polynomial");
    if (p.degree() == 0) return 0;
    SturmSequence s(squarefree_part(p));
    return s.count_roots_below(0);
}

// Distinct real roots of p in (0, +∞).
inline int count_positive_real_roots(const Polynomial& p) {
    if (p.is_zero()) throw DomainError("root count of the zero polynomial");
    if (p.degree() == 0) return 0;
    SturmSequence s(squarefree_part(p));
    return s.count_roots_above(0);
}

}  // namespace hts
