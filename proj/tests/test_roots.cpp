#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hts/complex_roots.hpp"
#include "hts/real_roots.hpp"

using hts::Polynomial;
using hts::Rational;

namespace {

Polynomial P(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long x : coeffs) c.emplace_back(x);
    return Polynomial(std::move(c));
}

// Discriminant of a·x³ + b·x² + c·x + d, used as an independent real-root oracle.
Rational cubic_discriminant(const Polynomial& p) {
    const Rational a = p.coefficient(3), b = p.coefficient(2), c = p.coefficient(1), d = p.coefficient(0);
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c - 27 * a * a * d * d;
}

double rd(const Rational& q) { return q.get_d(); }

}  // namespace

TEST_CASE("isolate λ³−3λ²+3λ: only the exact root 0") {
    const Polynomial f = P({0, 3, -3, 1});
    const auto iso = hts::isolate_real_roots(f);
    REQUIRE(iso.exact_rational_roots.size() == 1);
    CHECK(iso.exact_rational_roots[0].root == 0);
    CHECK(iso.exact_rational_roots[0].multiplicity == 1);
    CHECK(iso.intervals.empty());
    CHECK(iso.real_root_count() == 1);
}

TEST_CASE("isolate (λ−1)²") {
    const auto iso = hts::isolate_real_roots(pow(Polynomial::linear(1), 2));
    REQUIRE(iso.exact_rational_roots.size() == 1);
    CHECK(iso.exact_rational_roots[0].root == 1);
    CHECK(iso.exact_rational_roots[0].multiplicity == 2);
    CHECK(iso.intervals.empty());
}

TEST_CASE("isolate λ³−4λ²+5λ−1: one positive irrational root") {
    const Polynomial f = P({-1, 5, -4, 1});
    // Oracle: negative discriminant means a single real root; the sign change
    // between 0 and 1 places it there.
    CHECK(cubic_discriminant(f) == -23);
    CHECK(f(0) < 0);
    CHECK(f(1) > 0);

    const auto iso = hts::isolate_real_roots(f);
    CHECK(iso.exact_rational_roots.empty());
    REQUIRE(iso.intervals.size() == 1);
    CHECK(iso.intervals[0].lower > 0);
    CHECK(iso.intervals[0].upper <= 1);
    CHECK(iso.intervals[0].multiplicity == 1);
    CHECK(hts::count_positive_real_roots(f) == 1);
    CHECK(hts::count_nonpositive_real_roots(f) == 0);
}

TEST_CASE("isolation keeps rational roots exact and intervals disjoint") {
    // (2λ−3)²(λ²−2)(λ+5)(3λ−1)³ : rationals 3/2, −5, 1/3 plus ±√2
    const Polynomial f = pow(P({-3, 2}), 2) * P({-2, 0, 1}) * P({5, 1}) * pow(P({-1, 3}), 3);
    const auto iso = hts::isolate_real_roots(f);
    REQUIRE(iso.exact_rational_roots.size() == 3);
    CHECK(iso.exact_rational_roots[0].root == -5);
    CHECK(iso.exact_rational_roots[1].root == Rational(1, 3));
    CHECK(iso.exact_rational_roots[1].multiplicity == 3);
    CHECK(iso.exact_rational_roots[2].root == Rational(3, 2));
    CHECK(iso.exact_rational_roots[2].multiplicity == 2);
    REQUIRE(iso.intervals.size() == 2);
    CHECK(iso.intervals[0].upper < 0);
    CHECK(iso.intervals[1].lower > 0);
    CHECK(iso.intervals[0].upper <= iso.intervals[1].lower);
    CHECK(rd(iso.intervals[1].lower) < std::sqrt(2.0));
    CHECK(rd(iso.intervals[1].upper) > std::sqrt(2.0));
    CHECK(iso.real_root_count() == f.degree());
}

TEST_CASE("roots that coincide with bisection midpoints") {
    // bound for λ(λ−4)(λ+4)(λ−2) lands midpoints exactly on roots
    const Polynomial f = P({0, 1}) * P({-4, 1}) * P({4, 1}) * P({-2, 1});
    const auto iso = hts::isolate_real_roots(f);
    CHECK(iso.exact_rational_roots.size() == 4);
    CHECK(iso.intervals.empty());
}

TEST_CASE("isolate_real_roots rejects zero") {
    CHECK_THROWS_AS(hts::isolate_real_roots(Polynomial()), hts::DomainError);
    CHECK(hts::isolate_real_roots(P({4})).real_root_count() == 0);
}

TEST_CASE("complex roots of λ²−3λ+3") {
    const auto roots = hts::approx_complex_roots(P({3, -3, 1}), 128);
    REQUIRE(roots.size() == 2);
    // quadratic formula: 3/2 ± (√3/2) i
    for (const auto& r : roots) {
        CHECK(std::abs(rd(r.re) - 1.5) < 1e-15);
        CHECK(std::abs(std::abs(rd(r.im)) - std::sqrt(3.0) / 2) < 1e-15);
        CHECK(hts::detail::exact_residual_squared(P({3, -3, 1}), r.re, r.im) <= r.residual_bound * r.residual_bound);
        CHECK(r.residual_bound < Rational(hts::BigInt(1), hts::BigInt(1) << 100));
    }
    CHECK(roots[0].im < 0);
    CHECK(roots[1].im > 0);
}

TEST_CASE("complex roots of λ³−3λ²+3λ and (λ−1)⁴−1") {
    {
        const auto roots = hts::approx_complex_roots(P({0, 3, -3, 1}), 64);
        REQUIRE(roots.size() == 3);
        CHECK(std::abs(rd(roots[0].re)) < 1e-15);
        CHECK(std::abs(rd(roots[0].im)) < 1e-15);
    }
    {
        const Polynomial f = pow(Polynomial::linear(1), 4) - Polynomial::constant(1);
        const auto roots = hts::approx_complex_roots(f, 64);
        REQUIRE(roots.size() == 4);
        const double expect[4][2] = {{0, 0}, {1, -1}, {1, 1}, {2, 0}};
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(rd(roots[static_cast<std::size_t>(i)].re) - expect[i][0]) < 1e-15);
            CHECK(std::abs(rd(roots[static_cast<std::size_t>(i)].im) - expect[i][1]) < 1e-15);
        }
    }
}

TEST_CASE("complex roots preconditions") {
    CHECK_THROWS_AS(hts::approx_complex_roots(Polynomial(), 64), hts::DomainError);
    CHECK_THROWS_AS(hts::approx_complex_roots(P({1, 1}), 32), hts::DomainError);
    CHECK(hts::approx_complex_roots(P({7}), 64).empty());
}

TEST_CASE("real and complex root counts add up to the degree") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coef(-6, 6);
    for (int trial = 0; trial < 40; ++trial) {
        // random product of small factors, some repeated
        Polynomial f = Polynomial::constant(1);
        const int nf = 1 + trial % 4;
        for (int i = 0; i < nf; ++i) {
            const int deg = 1 + static_cast<int>(rng() % 3);
            std::vector<Rational> c(static_cast<std::size_t>(deg) + 1);
            for (auto& x : c) x = coef(rng);
            c.back() = 1 + static_cast<long>(rng() % 3);
            f *= pow(Polynomial(c), 1 + static_cast<long long>(rng() % 2));
        }
        const auto iso = hts::isolate_real_roots(f);
        int nonreal = 0;
        for (const auto& sf : hts::squarefree_decomposition(f)) {
            const auto roots = hts::approx_complex_roots(sf.factor, 96);
            REQUIRE(static_cast<int>(roots.size()) == sf.factor.degree());
            const hts::SturmSequence sturm(sf.factor);
            int near_real = 0;
            for (const auto& r : roots) {
                CHECK(hts::detail::exact_residual_squared(sf.factor, r.re, r.im) <=
                      r.residual_bound * r.residual_bound);
                if (std::abs(rd(r.im)) < 1e-20) ++near_real;
            }
            CHECK(near_real == sturm.total_distinct());
            nonreal += sf.multiplicity * (sf.factor.degree() - sturm.total_distinct());
        }
        CHECK(iso.real_root_count() + nonreal == f.degree());
        for (std::size_t i = 0; i + 1 < iso.intervals.size(); ++i) {
            CHECK(iso.intervals[i].upper <= iso.intervals[i + 1].lower);
        }
    }
}
