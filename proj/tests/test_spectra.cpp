#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hts/generators.hpp"
#include "hts/spectra.hpp"

using hts::BigInt;
using hts::Polynomial;
using hts::Rational;
using hts::TreeKind;
using hts::UniformHypergraph;
using Kind = hts::EigenvalueEntry::Kind;

namespace {

std::vector<UniformHypergraph> battery(int max_k, int max_m, int randoms_per_cell) {
    std::vector<UniformHypergraph> out;
    for (int k = 2; k <= max_k; ++k) {
        for (int m = 1; m <= max_m; ++m) {
            out.push_back(hts::generate(TreeKind::hyperstar, k, m));
            out.push_back(hts::generate(TreeKind::hyperpath, k, m));
            for (int r = 0; r < randoms_per_cell; ++r) {
                out.push_back(hts::generate(TreeKind::random, k, m, static_cast<std::uint64_t>(100 * k + 10 * m + r)));
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("zero multiplicity closed form") {
    CHECK(hts::zero_multiplicity_closed_form(hts::generate(TreeKind::one_edge, 3, 1)) == 3);
    CHECK(hts::zero_multiplicity_closed_form(hts::generate(TreeKind::hyperstar, 3, 2)) == 9);
    for (int m = 1; m <= 6; ++m) CHECK(hts::zero_multiplicity_closed_form(hts::generate(TreeKind::hyperpath, 2, m)) == 1);
    CHECK(hts::zero_multiplicity_closed_form(4, 3) == 4096);
    for (int k = 2; k <= 5; ++k) {
        for (int m = 1; m <= 6; ++m) {
            BigInt expect = 1;
            for (int i = 0; i < m * (k - 2); ++i) expect *= k;
            CHECK(hts::zero_multiplicity_closed_form(k, m) == expect);
        }
    }
    CHECK_THROWS_AS(hts::zero_multiplicity_closed_form(3, 0), hts::DomainError);
    CHECK_THROWS_AS(hts::zero_multiplicity_closed_form(UniformHypergraph::build(3, 1, {})), hts::DomainError);
    CHECK_THROWS_AS(hts::zero_multiplicity_closed_form(UniformHypergraph::build(3, 6, {{1, 2, 3}, {4, 5, 6}})),
                    hts::DomainError);
}

TEST_CASE("verify_simple_zero examples") {
    const auto one = hts::verify_simple_zero(hts::generate(TreeKind::one_edge, 3, 1));
    CHECK(one.phi_at_zero == 0);
    CHECK(one.phi_derivative_at_zero == 3);
    CHECK(one.proper_subtree_values.empty());
    CHECK(one.passed());

    auto star = hts::verify_simple_zero(hts::generate(TreeKind::hyperstar, 3, 2));
    CHECK(star.closed_form == 9);
    CHECK(star.phi_at_zero == 0);
    CHECK(star.phi_derivative_at_zero == 5);
    REQUIRE(star.proper_subtree_values.size() == 2);
    for (const auto& [id, value] : star.proper_subtree_values) CHECK(value == -1);
    CHECK(star.passed());
    star.set_oracle_multiplicity(8);
    CHECK_FALSE(star.passed());
    star.set_oracle_multiplicity(9);
    CHECK(star.passed());

    CHECK_THROWS_AS(hts::verify_simple_zero(UniformHypergraph::build(3, 1, {})), hts::DomainError);
}

TEST_CASE("eigenvalue set of one_edge(3)") {
    const auto t = hts::generate(TreeKind::one_edge, 3, 1);
    const auto report = hts::laplacian_eigenvalue_set(t);
    // independent: roots of (λ−1)³((λ−1)³+1)³ are the eigenvalues
    const Polynomial cube = pow(Polynomial::linear(1), 3);
    CHECK(hts::same_root_set(report.root_set, cube * pow(cube + Polynomial::constant(1), 3)));

    REQUIRE(report.eigenvalues.size() == 4);
    CHECK(report.eigenvalues[0].kind == Kind::exact);
    CHECK(report.eigenvalues[0].value == 0);
    CHECK(report.eigenvalues[0].witness == "T");
    CHECK(report.eigenvalues[0].multiplicity == BigInt(3));
    CHECK(report.eigenvalues[1].value == 1);
    CHECK(report.eigenvalues[1].witness == "v1");
    CHECK_FALSE(report.eigenvalues[1].multiplicity);
    for (int i = 2; i < 4; ++i) {
        const auto& z = report.eigenvalues[static_cast<std::size_t>(i)];
        CHECK(z.kind == Kind::complex);
        CHECK(std::abs(z.approx.re.get_d() - 1.5) < 1e-12);
        CHECK(std::abs(std::abs(z.approx.im.get_d()) - std::sqrt(3.0) / 2) < 1e-12);
        CHECK(z.witness == "T");
    }
    CHECK(report.eigenvalues[2].approx.im < 0);
}

TEST_CASE("eigenvalue set of hyperstar(3,2)") {
    const auto t = hts::generate(TreeKind::hyperstar, 3, 2);
    const auto report = hts::laplacian_eigenvalue_set(t);
    std::vector<Rational> exact;
    for (const auto& e : report.eigenvalues) {
        if (e.kind == Kind::exact) exact.push_back(e.value);
    }
    for (int d : {0, 1, 2}) CHECK(std::count(exact.begin(), exact.end(), Rational(d)) == 1);
    // the one-edge sub-hypertree λ³−4λ²+5λ−1 has one real root in (0,1)
    int intervals = 0;
    for (const auto& e : report.eigenvalues) {
        if (e.kind != Kind::interval) continue;
        ++intervals;
        CHECK(e.lower > 0);
    }
    CHECK(intervals >= 1);
    CHECK_THROWS_AS(hts::laplacian_eigenvalue_set(hts::generate(TreeKind::hyperstar, 2, 2)), hts::Unsupported);
}

TEST_CASE("eigenvalue set entries are exactly the roots of root_set") {
    for (const auto& t : battery(4, 3, 1)) {
        if (t.k() == 2) continue;
        INFO(t.canonical_key());
        const auto report = hts::laplacian_eigenvalue_set(t, 96);
        CHECK(report.root_set.is_monic());
        CHECK(static_cast<int>(report.eigenvalues.size()) == report.root_set.degree());
        int zeros = 0;
        for (int v = 1; v <= t.n(); ++v) CHECK(report.root_set(t.degree(v)) == 0);
        const hts::SturmSequence sturm(report.root_set);
        for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
            const auto& e = report.eigenvalues[i];
            switch (e.kind) {
                case Kind::exact:
                    CHECK(report.root_set(e.value) == 0);
                    if (e.value == 0) {
                        ++zeros;
                        CHECK(e.witness == "T");
                        CHECK(e.multiplicity == hts::zero_multiplicity_closed_form(t));
                    }
                    break;
                case Kind::interval:
                    CHECK(sturm.count_roots(e.lower, e.upper) == 1);
                    CHECK(e.lower > 0);
                    if (i + 1 < report.eigenvalues.size() && report.eigenvalues[i + 1].kind == Kind::interval) {
                        CHECK(e.upper <= report.eigenvalues[i + 1].lower);
                    }
                    break;
                case Kind::complex:
                    CHECK(e.approx.im != 0);
                    CHECK(e.approx.residual_bound < Rational(1, 1000000));
                    break;
            }
        }
        CHECK(zeros == 1);
    }
}

TEST_CASE("laplacian_apply") {
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    const auto y = hts::laplacian_apply(one, {1, 1, -1});
    CHECK(y[0] == 2);
    CHECK(y[2] == 0);
    CHECK(hts::laplacian_apply(one, {0, 0, 0}) == std::vector<Rational>(3, 0));
    CHECK_THROWS_AS(hts::laplacian_apply(one, {1, 1}), hts::DomainError);
    for (const auto& t : battery(5, 6, 2)) {
        CHECK(hts::laplacian_apply(t, std::vector<Rational>(static_cast<std::size_t>(t.n()), 1)) ==
              std::vector<Rational>(static_cast<std::size_t>(t.n()), 0));
    }
}

TEST_CASE("positivity check") {
    CHECK(hts::positivity_check(hts::generate(TreeKind::hyperstar, 3, 2)));
    CHECK(hts::positivity_check(hts::generate(TreeKind::one_edge, 3, 1)));
    CHECK(hts::positivity_check(hts::generate(TreeKind::hyperpath, 3, 3)));
    CHECK_THROWS_AS(hts::positivity_check(hts::generate(TreeKind::hyperpath, 2, 3)), hts::Unsupported);
}

TEST_CASE("rational identity examples") {
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    for (int w = 1; w <= 3; ++w) CHECK(hts::rational_identity_check(one, w));
    const auto star = hts::generate(TreeKind::hyperstar, 3, 2);
    CHECK(hts::rational_identity_check(star, 1));
    CHECK(hts::rational_identity_check(star, 4));
    CHECK_THROWS_AS(hts::rational_identity_check(star, 6), hts::DomainError);
}

TEST_CASE("spectral invariants on the generator battery") {
    for (const auto& t : battery(5, 5, 2)) {
        INFO(t.canonical_key());
        const auto r = hts::verify_simple_zero(t, 2);
        for (const auto& c : r.checks) {
            INFO(c.name);
            CHECK(c.passed);
        }
        for (int w = 1; w <= t.n(); ++w) CHECK(hts::rational_identity_check(t, w));
        if (t.k() >= 3) CHECK(hts::positivity_check(t));
    }
}
