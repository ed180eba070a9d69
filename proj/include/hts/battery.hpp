#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "matchpoly.hpp"
#include "parallel.hpp"
#include "spectra.hpp"

namespace hts {

struct BatteryTree {
    UniformHypergraph tree;
    std::string label;
};

// Hyperstars and hyperpaths for every (k, m), then `randoms` random hypertrees
// cycling through the same cells with seeds seed, seed+1, ...
inline std::vector<BatteryTree> tree_battery(const std::vector<int>& ks, int max_m, int randoms, std::uint64_t seed) {
    if (ks.empty() || max_m < 1 || randoms < 0) throw DomainError("tree_battery: empty battery");
    std::vector<BatteryTree> out;
    auto label = [](TreeKind kind, int k, int m) {
        return std::string(to_string(kind)) + "(" + std::to_string(k) + "," + std::to_string(m) + ")";
    };
    for (int k : ks) {
        for (int m = 1; m <= max_m; ++m) {
            out.push_back({generate(TreeKind::hyperstar, k, m), label(TreeKind::hyperstar, k, m)});
            out.push_back({generate(TreeKind::hyperpath, k, m), label(TreeKind::hyperpath, k, m)});
        }
    }
    const auto cells = static_cast<int>(ks.size()) * max_m;
    for (int i = 0; i < randoms; ++i) {
        const int cell = i % cells;
        const int k = ks[static_cast<std::size_t>(cell % static_cast<int>(ks.size()))];
        const int m = 1 + cell / static_cast<int>(ks.size());
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        out.push_back({generate(TreeKind::random, k, m, s),
                       label(TreeKind::random, k, m) + "#" + std::to_string(s)});
    }
    return out;
}

// The sub-hypergraph is kept as vertex and edge lists so the pair can be moved freely.
struct HostSubPair {
    UniformHypergraph host;
    std::vector<Vertex> vertices;
    std::vector<EdgeIndex> edges;
    std::string label;

    SubHypergraph sub() const { return SubHypergraph(host, vertices, edges); }
};

// A sub-hypergraph keeping each vertex with probability 7/10 and each surviving edge with 8/10.
inline SubHypergraph random_subhypergraph(const UniformHypergraph& h, std::mt19937_64& rng) {
    std::vector<Vertex> vs;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (bounded_draw(rng, 10) < 7) vs.push_back(v);
    }
    const auto induced = SubHypergraph::induced(h, vs);
    std::vector<EdgeIndex> es;
    for (EdgeIndex e : induced.edges()) {
        if (bounded_draw(rng, 10) < 8) es.push_back(e);
    }
    return SubHypergraph(h, vs, es);
}

// Random hypertree hosts with k drawn from `ks` and 1 <= m <= max_m; every fourth pair
// uses the whole host.
inline std::vector<HostSubPair> host_sub_pairs(int count, const std::vector<int>& ks, int max_m, std::uint64_t seed) {
    if (ks.empty() || max_m < 1) throw DomainError("host_sub_pairs: need some k and max_m >= 1");
    std::mt19937_64 rng(seed);
    std::vector<HostSubPair> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const int k = ks[bounded_draw(rng, ks.size())];
        const int m = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(max_m)));
        const std::uint64_t s = rng();
        auto host = generate(TreeKind::random, k, m, s);
        const auto sub = i % 4 == 0 ? SubHypergraph::whole(host) : random_subhypergraph(host, rng);
        std::string label = "random(" + std::to_string(k) + "," + std::to_string(m) + ")#" + std::to_string(s) +
                            " sub " + sub.id();
        std::vector<Vertex> vs = sub.vertices();
        std::vector<EdgeIndex> es = sub.edges();
        out.push_back({std::move(host), std::move(vs), std::move(es), std::move(label)});
    }
    return out;
}

struct CheckTally {
    std::string name;
    long long cases = 0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

namespace detail {

class Tallies {
public:
    explicit Tallies(std::vector<std::string> names) {
        for (auto& n : names) tallies_.push_back({std::move(n), 0, {}});
    }

    void record(std::size_t check, bool ok, const std::string& where) {
        auto& t = tallies_[check];
        ++t.cases;
        if (!ok) t.failures.push_back(where);
    }

    void merge(const Tallies& other) {
        for (std::size_t i = 0; i < tallies_.size(); ++i) {
            tallies_[i].cases += other.tallies_[i].cases;
            tallies_[i].failures.insert(tallies_[i].failures.end(), other.tallies_[i].failures.begin(),
                                        other.tallies_[i].failures.end());
        }
    }

    std::vector<CheckTally> take() { return std::move(tallies_); }

private:
    std::vector<CheckTally> tallies_;
};

template <typename Item, typename Fn>
std::vector<CheckTally> tally_over(const std::vector<Item>& items, std::vector<std::string> names, int jobs, Fn&& fn) {
    auto parts = parallel_map(items.size(), jobs, [&](std::size_t i) {
        Tallies t(names);
        fn(items[i], i, t);
        return t;
    });
    Tallies total(names);
    for (const auto& p : parts) total.merge(p);
    return total.take();
}

}  // namespace detail

// Engine agreement and recurrence identities on each pair; subset choices are seeded per pair.
inline std::vector<CheckTally> matchpoly_suite(const std::vector<HostSubPair>& pairs, std::uint64_t seed, int jobs = 1) {
    return detail::tally_over(
        pairs, {"engine_equivalence", "edge_deletion", "vertex_recurrence", "subset_identity", "derivative_identity"},
        jobs, [&](const HostSubPair& p, std::size_t index, detail::Tallies& t) {
            enum : std::size_t { engine_equivalence, edge_deletion, vertex_recurrence, subset_identity, derivative_identity };
            std::mt19937_64 rng(seed + index);
            const auto sub = p.sub();
            const auto phi = direct_evaluator();
            MatchingPolyEngine engine(p.host);
            t.record(engine_equivalence, laplacian_matching_poly(p.host, sub) == engine(sub), p.label);
            for (EdgeIndex e : sub.edges()) {
                t.record(edge_deletion, edge_deletion_check(phi, sub, e), p.label + " e" + std::to_string(e));
            }
            for (Vertex v : sub.vertices()) {
                const std::string where = p.label + " v" + std::to_string(v);
                t.record(vertex_recurrence, vertex_recurrence_check(phi, sub, v), where);
                std::vector<EdgeIndex> subset;
                for (EdgeIndex e : sub.incident_edges(v)) {
                    if (rng() & 1u) subset.push_back(e);
                }
                t.record(subset_identity, subset_identity_check(phi, sub, v, subset), where);
            }
            t.record(derivative_identity, derivative_identity_check(phi, sub), p.label);
        });
}

// Spectral invariants on each tree; positivity only applies from k = 3.
inline std::vector<CheckTally> spectra_suite(const std::vector<BatteryTree>& trees, int jobs = 1) {
    return detail::tally_over(
        trees, {"simple_zero", "aggregate_identity", "positivity", "all_ones_residual"}, jobs,
        [&](const BatteryTree& b, std::size_t, detail::Tallies& t) {
            enum : std::size_t { simple_zero, aggregate_identity, positivity, all_ones_residual };
            const auto& tree = b.tree;
            t.record(simple_zero, verify_simple_zero(tree).passed(), b.label);
            for (Vertex w = 1; w <= tree.n(); ++w) {
                t.record(aggregate_identity, rational_identity_check(tree, w), b.label + " v" + std::to_string(w));
            }
            if (tree.k() >= 3) t.record(positivity, positivity_check(tree), b.label);
            const auto n = static_cast<std::size_t>(tree.n());
            t.record(all_ones_residual, laplacian_apply(tree, std::vector<Rational>(n, 1)) == std::vector<Rational>(n, 0),
                     b.label);
        });
}

}  // namespace hts
