#include <catch2/catch_amalgamated.hpp>

#include "hts/generators.hpp"
#include "hts/hypertree.hpp"
#include "hts/matchpoly.hpp"
#include "hts/parallel.hpp"

using hts::Polynomial;
using hts::Rational;
using hts::SubHypergraph;
using hts::TreeKind;
using hts::UniformHypergraph;

namespace {

const Polynomial L1 = Polynomial::linear(1);
const Polynomial L2 = Polynomial::linear(2);

// φ evaluated at x by summing over every edge subset that happens to be a matching.
Rational brute_force_value(const SubHypergraph& sub, const Rational& x) {
    const auto& h = sub.host();
    const auto& es = sub.edges();
    Rational total = 0;
    for (unsigned mask = 0; mask < (1u << es.size()); ++mask) {
        std::vector<int> hits(static_cast<std::size_t>(h.n()) + 1, 0);
        int size = 0;
        bool ok = true;
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (!(mask >> i & 1u)) continue;
            ++size;
            for (int v : h.edge(es[i])) ok = ok && ++hits[static_cast<std::size_t>(v)] == 1;
        }
        if (!ok) continue;
        Rational term = (h.k() - 1) * size % 2 == 0 ? 1 : -1;
        for (int v : sub.vertices()) {
            if (hits[static_cast<std::size_t>(v)] == 0) term *= x - h.degree(v);
        }
        total += term;
    }
    return total;
}

struct Instance {
    UniformHypergraph host;
    std::uint64_t seed;
};

std::vector<Instance> hosts(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) {
        const int k = 2 + static_cast<int>(hts::bounded_draw(rng, 4));
        const int m = 1 + static_cast<int>(hts::bounded_draw(rng, 6));
        const auto kind = static_cast<TreeKind>(hts::bounded_draw(rng, 4));
        out.push_back({hts::generate(kind, k, m, rng()), rng()});
    }
    return out;
}

SubHypergraph random_sub(const UniformHypergraph& h, std::mt19937_64& rng) {
    std::vector<int> vs;
    for (int v = 1; v <= h.n(); ++v) {
        if (hts::bounded_draw(rng, 10) < 7) vs.push_back(v);
    }
    const auto induced = SubHypergraph::induced(h, vs);
    std::vector<int> es;
    for (int e : induced.edges()) {
        if (hts::bounded_draw(rng, 10) < 8) es.push_back(e);
    }
    return SubHypergraph(h, vs, es);
}

}  // namespace

TEST_CASE("enumerate_matchings") {
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    CHECK(hts::enumerate_matchings(SubHypergraph::whole(one)).size() == 2);
    const auto star = hts::generate(TreeKind::hyperstar, 3, 2);
    CHECK(hts::enumerate_matchings(SubHypergraph::whole(star)).size() == 3);
    const auto path = hts::generate(TreeKind::hyperpath, 3, 3);
    const auto ms = hts::enumerate_matchings(SubHypergraph::whole(path));
    REQUIRE(ms.size() == 5);
    CHECK(ms[0].edges.empty());
    CHECK(std::count_if(ms.begin(), ms.end(), [](const auto& m) { return m.edges == std::vector<int>{0, 2}; }) == 1);
}

TEST_CASE("Laplacian matching polynomial examples") {
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    const auto whole_one = SubHypergraph::whole(one);
    CHECK(hts::laplacian_matching_poly(one, whole_one) == pow(L1, 3) + Polynomial::constant(1));
    CHECK(hts::laplacian_matching_poly(one, whole_one) == Polynomial({0, 3, -3, 1}));

    const auto star = hts::generate(TreeKind::hyperstar, 3, 2);
    CHECK(hts::laplacian_matching_poly(star, SubHypergraph::singleton(star, 4)) == L1);
    const Polynomial star_phi = L2 * pow(L1, 4) + 2 * pow(L1, 2);
    CHECK(hts::laplacian_matching_poly(star, SubHypergraph::whole(star)) == star_phi);

    // host degrees, not local ones
    CHECK(hts::laplacian_matching_poly(star, SubHypergraph::spanned(star, {0})) == Polynomial({-1, 5, -4, 1}));
    CHECK_THROWS_AS(hts::laplacian_matching_poly(one, SubHypergraph::whole(star)), hts::DomainError);
}

TEST_CASE("weighted matching polynomial") {
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    const auto whole = SubHypergraph::whole(one);
    CHECK(hts::weighted_matching_poly(whole, hts::WeightFunction::uniform(one, 1, -1)) == pow(L1, 3) + Polynomial::constant(1));
    CHECK(hts::weighted_matching_poly(whole, hts::WeightFunction::uniform(one, 0, 0)) == pow(Polynomial::identity(), 3));
    const auto lone = UniformHypergraph::build(3, 1, {});
    hts::WeightFunction w;
    w.vertex_weight[1] = 5;
    CHECK(hts::weighted_matching_poly(SubHypergraph::whole(lone), w) == Polynomial::linear(5));

    hts::WeightFunction partial = hts::WeightFunction::uniform(one, 1, -1);
    partial.edge_weight.clear();
    CHECK_THROWS_AS(hts::weighted_matching_poly(whole, partial), hts::DomainError);
    partial = hts::WeightFunction::uniform(one, 1, -1);
    partial.vertex_weight.erase(2);
    CHECK_THROWS_AS(hts::weighted_matching_poly(whole, partial), hts::DomainError);
}

TEST_CASE("recursive engine examples") {
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    CHECK(hts::matching_poly_recursive(one, SubHypergraph::whole(one)) == Polynomial({0, 3, -3, 1}));
    CHECK(hts::matching_poly_recursive(one, SubHypergraph(one, {}, {})) == Polynomial::constant(1));
    const auto star = hts::generate(TreeKind::hyperstar, 3, 2);
    CHECK(hts::MatchingPolyEngine::pivot(SubHypergraph::whole(star)) == 1);
    CHECK(hts::matching_poly_recursive(star, SubHypergraph::whole(star)) == L2 * pow(L1, 4) + 2 * pow(L1, 2));
    hts::MatchingPolyEngine engine(one);
    CHECK_THROWS_AS(engine(SubHypergraph::whole(star)), hts::DomainError);
}

TEST_CASE("derivative identity examples") {
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    CHECK(hts::derivative_identity_check(one, SubHypergraph::whole(one)));
    CHECK(hts::derivative_identity_check(one, SubHypergraph::singleton(one, 2)));
    const auto star = hts::generate(TreeKind::hyperstar, 3, 2);
    CHECK(hts::derivative_identity_check(star, SubHypergraph::whole(star)));
    CHECK(hts::derivative_identity_check(hts::direct_evaluator(), SubHypergraph::whole(star)));
}

TEST_CASE("same labelled sub-hypergraph under different hosts") {
    // vertex 1 has degree 1 in one host and 2 in the other
    const auto one = hts::generate(TreeKind::one_edge, 3, 1);
    const auto star = hts::generate(TreeKind::hyperstar, 3, 2);
    hts::MatchingPolyEngine a(one), b(star);
    const auto pa = a(SubHypergraph::spanned(one, {0}));
    const auto pb = b(SubHypergraph::spanned(star, {0}));
    CHECK(pa != pb);
    CHECK(pa == a(SubHypergraph::whole(one)));
}

TEST_CASE("direct and recursive agree with a brute-force oracle") {
    std::mt19937_64 rng(4242);
    for (const auto& inst : hosts(60, 77)) {
        const auto& h = inst.host;
        hts::MatchingPolyEngine engine(h);
        for (int rep = 0; rep < 3; ++rep) {
            const auto sub = rep == 0 ? SubHypergraph::whole(h) : random_sub(h, rng);
            INFO(h.canonical_key() << " sub " << sub.id());
            const Polynomial direct = hts::laplacian_matching_poly(h, sub);
            CHECK(direct == engine(sub));
            CHECK(direct.degree() == static_cast<int>(sub.vertex_count()));
            CHECK((sub.empty() || direct.is_monic()));
            for (const Rational& x : {Rational(0), Rational(3, 2), Rational(-7, 3)}) {
                CHECK(direct(x) == brute_force_value(sub, x));
            }
            CHECK(hts::weighted_matching_poly(sub, hts::WeightFunction::laplacian(h)) == direct);

            Polynomial product = Polynomial::constant(1);
            for (const auto& part : sub.components()) product *= hts::laplacian_matching_poly(h, part);
            CHECK(product == direct);
        }
    }
}

TEST_CASE("recurrence identities on random instances") {
    std::mt19937_64 rng(31337);
    const auto phi = hts::direct_evaluator();
    for (const auto& inst : hosts(40, 78)) {
        const auto& h = inst.host;
        hts::MatchingPolyEngine engine(h);
        for (int rep = 0; rep < 2; ++rep) {
            const auto sub = rep == 0 ? SubHypergraph::whole(h) : random_sub(h, rng);
            INFO(h.canonical_key() << " sub " << sub.id());
            for (int e : sub.edges()) CHECK(hts::edge_deletion_check(phi, sub, e));
            for (int v : sub.vertices()) {
                CHECK(hts::vertex_recurrence_check(phi, sub, v));
                CHECK(hts::vertex_recurrence_check(engine, sub, v));
                const auto incident = sub.incident_edges(v);
                std::vector<int> subset;
                for (int e : incident) {
                    if (rng() & 1u) subset.push_back(e);
                }
                CHECK(hts::subset_identity_check(phi, sub, v, subset));
            }
            CHECK(hts::derivative_identity_check(phi, sub));
            CHECK(hts::derivative_identity_check(engine, sub));
        }
    }
}

TEST_CASE("subset identity rejects non-incident edges") {
    const auto star = hts::generate(TreeKind::hyperstar, 3, 2);
    const std::vector<int> bad{1};
    CHECK_THROWS_AS(hts::subset_identity_check(hts::direct_evaluator(), SubHypergraph::whole(star), 2, bad),
                    hts::DomainError);
}

TEST_CASE("shared engine under concurrent use") {
    const auto t = hts::generate(TreeKind::random, 3, 6, 5);
    const auto subs = hts::enumerate_sub_hypertrees(t);
    hts::MatchingPolyEngine shared(t);
    const auto parallel = hts::parallel_map(subs.size(), 4, [&](std::size_t i) { return shared(subs[i]); });
    for (std::size_t i = 0; i < subs.size(); ++i) CHECK(parallel[i] == hts::laplacian_matching_poly(t, subs[i]));
    CHECK(shared.memo_size() > 0);
}
