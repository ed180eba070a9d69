#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hts/interpolate.hpp"
#include "hts/polynomial.hpp"

using hts::Polynomial;
using hts::Rational;

namespace {

Polynomial P(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    for (long x : coeffs) c.emplace_back(x);
    return Polynomial(std::move(c));
}

const Polynomial lambda = Polynomial::identity();

Polynomial random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
    }
    if (c.back() == 0) c.back() = 1;
    return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("zero polynomial is canonical") {
    CHECK(Polynomial().degree() == Polynomial::kZeroDegree);
    CHECK(P({0, 0, 0}).is_zero());
    CHECK(P({1, 2, 0, 0}).degree() == 1);
    CHECK(Polynomial() == P({0}));
}

TEST_CASE("ring operations") {
    const Polynomial a = pow(lambda - Polynomial::constant(1), 2);
    SECTION("mul (λ−1)²(λ+1)") { CHECK(a * (lambda + Polynomial::constant(1)) == P({1, -1, -1, 1})); }
    SECTION("derivative of (λ−1)³+1") {
        const Polynomial f = pow(Polynomial::linear(1), 3) + Polynomial::constant(1);
        CHECK(derivative(f) == 3 * pow(Polynomial::linear(1), 2));
    }
    SECTION("exact divide") {
        const Polynomial q = exact_divide(P({0, 3, -3, 1}), lambda);
        CHECK(q == P({3, -3, 1}));
        CHECK(q * lambda == P({0, 3, -3, 1}));
    }
    SECTION("exact divide with remainder throws") {
        CHECK_THROWS_AS(exact_divide(P({1, 0, 1}), lambda), hts::DivisibilityError);
    }
    SECTION("negative power throws") { CHECK_THROWS_AS(pow(lambda, -1), hts::DomainError); }
    SECTION("pow 0 is one") { CHECK(pow(P({5, 7}), 0) == P({1})); }
    SECTION("division by zero") { CHECK_THROWS_AS(divmod(lambda, Polynomial()), hts::DomainError); }
}

TEST_CASE("evaluation") {
    const Polynomial f = pow(Polynomial::linear(1), 3) + Polynomial::constant(1);
    CHECK(f(0) == 0);
    CHECK(f(1) == 1);
    const Polynomial g = Polynomial::linear(2) * pow(Polynomial::linear(1), 4) + 2 * pow(Polynomial::linear(1), 2);
    CHECK(g(0) == 0);
    CHECK(f(Rational(1, 2)) == Rational(7, 8));
}

TEST_CASE("root multiplicity") {
    CHECK(root_multiplicity_at(pow(lambda, 5), 0) == 5);
    const Polynomial cube = pow(Polynomial::linear(1), 3);
    const Polynomial one_edge = cube * pow(cube + Polynomial::constant(1), 3);
    CHECK(root_multiplicity_at(one_edge, 0) == 3);
    CHECK(root_multiplicity_at(one_edge, 1) == 3);
    const Polynomial g = Polynomial::linear(2) * pow(Polynomial::linear(1), 4) + 2 * pow(Polynomial::linear(1), 2);
    CHECK(root_multiplicity_at(g, 0) == 1);
    CHECK(derivative(g)(0) == 5);
    CHECK(root_multiplicity_at(P({1, 1}), 0) == 0);
    CHECK_THROWS_AS(root_multiplicity_at(Polynomial(), 0), hts::DomainError);
}

TEST_CASE("gcd and square-free decomposition") {
    const Polynomial a = pow(Polynomial::linear(1), 3) * pow(Polynomial::linear(-2), 2) * Polynomial::linear(5);
    const Polynomial b = pow(Polynomial::linear(1), 2) * Polynomial::linear(7);
    CHECK(gcd(a, b) == pow(Polynomial::linear(1), 2));
    CHECK(gcd(a, Polynomial()) == monic(a));

    const auto sf = squarefree_decomposition(3 * a);
    REQUIRE(sf.size() == 3);
    CHECK(sf[0].multiplicity == 1);
    CHECK(sf[0].factor == Polynomial::linear(5));
    CHECK(sf[1].multiplicity == 2);
    CHECK(sf[1].factor == Polynomial::linear(-2));
    CHECK(sf[2].multiplicity == 3);
    CHECK(sf[2].factor == Polynomial::linear(1));
    CHECK(squarefree_part(a) == Polynomial::linear(1) * Polynomial::linear(-2) * Polynomial::linear(5));
}

TEST_CASE("same_root_set ignores multiplicity and scale") {
    const Polynomial a = pow(Polynomial::linear(1), 3) * Polynomial::linear(4);
    CHECK(same_root_set(a, 7 * Polynomial::linear(1) * pow(Polynomial::linear(4), 5)));
    CHECK_FALSE(same_root_set(a, Polynomial::linear(1)));
}

TEST_CASE("interpolation") {
    SECTION("λ²+1") {
        CHECK(hts::interpolate({{0, 1}, {1, 2}, {2, 5}}) == P({1, 0, 1}));
    }
    SECTION("all zero") { CHECK(hts::interpolate({{0, 0}, {1, 0}, {2, 0}}).is_zero()); }
    SECTION("13 samples of the one-edge k=3 characteristic polynomial") {
        const Polynomial cube = pow(Polynomial::linear(1), 3);
        const Polynomial f = cube * pow(cube + Polynomial::constant(1), 3);
        std::vector<hts::SamplePoint> pts;
        for (int i = 0; i < 13; ++i) pts.push_back({Rational(i * 3 - 7, 2), f(Rational(i * 3 - 7, 2))});
        CHECK(hts::interpolate(pts) == f);
    }
    SECTION("duplicate abscissa") {
        CHECK_THROWS_AS(hts::interpolate({{1, 1}, {1, 2}}), hts::DomainError);
    }
}

TEST_CASE("serialization") {
    const Polynomial f = P({0, 3, -3, 1}) * Rational(1, 6);
    const auto doc = serialize(f);
    CHECK(doc == std::vector<std::string>{"0/1", "1/2", "-1/2", "1/6"});
    CHECK(hts::deserialize_polynomial(doc) == f);
    CHECK(hts::deserialize_polynomial({"3", "-4/8"}) == P({6, -1}) * Rational(1, 2));
    CHECK_THROWS_AS(hts::deserialize_polynomial({"1/0"}), hts::ValidationError);
    CHECK_THROWS_AS(hts::deserialize_polynomial({"x"}), hts::ValidationError);
    CHECK_THROWS_AS(hts::deserialize_polynomial({"1", "0"}), hts::ValidationError);
}

TEST_CASE("ring properties on random polynomials") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        const Polynomial p = random_poly(rng, 7);
        const Polynomial q = random_poly(rng, 7);
        const Polynomial pq = p * q;
        CHECK(pq.degree() == p.degree() + q.degree());
        CHECK(derivative(pq) == derivative(p) * q + p * derivative(q));
        CHECK(exact_divide(pq, q) == p);

        std::vector<hts::SamplePoint> pts;
        for (int i = 0; i <= pq.degree(); ++i) {
            const Rational x(i * 5 - 11, 3);
            pts.push_back({x, pq(x)});
        }
        CHECK(hts::interpolate(pts) == pq);

        const Rational r(static_cast<long>(trial % 7) - 3, 1 + trial % 3);
        const Polynomial with_root = pq * pow(Polynomial::linear(r), trial % 3);
        CHECK((root_multiplicity_at(with_root, r) > 0) == (with_root(r) == 0));
    }
}
