#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hypergraph.hpp"

namespace hts {

enum class TreeKind { one_edge, hyperstar, hyperpath, random };

inline std::string_view to_string(TreeKind kind) {
    switch (kind) {
        case TreeKind::one_edge: return "one_edge";
        case TreeKind::hyperstar: return "hyperstar";
        case TreeKind::hyperpath: return "hyperpath";
        case TreeKind::random: return "random";
    }
    return "?";
}

inline std::optional<TreeKind> parse_tree_kind(std::string_view s) {
    for (TreeKind k : {TreeKind::one_edge, TreeKind::hyperstar, TreeKind::hyperpath, TreeKind::random}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

// Uniform draw in [0, bound) by rejection, so the stream is identical on every
// standard library.
inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw DomainError("bounded_draw: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// hyperstar: centre 1, edge i = {1, (i−1)(k−1)+2, …, i(k−1)+1}.
// hyperpath: edge i = {(i−1)(k−1)+1, …, i(k−1)+1}.
// random: edge 1 = {1..k}; each later edge joins one uniformly chosen existing
// vertex with k−1 fresh ones.
inline UniformHypergraph generate(TreeKind kind, int k, int m, std::uint64_t seed = 0) {
    if (k < 2) throw DomainError("generate: k must be at least 2");
    if (kind == TreeKind::one_edge) m = 1;
    if (m < 1) throw DomainError("generate: m must be at least 1");
    const int n = m * (k - 1) + 1;
    std::vector<std::vector<Vertex>> edges;
    switch (kind) {
        case TreeKind::one_edge:
        case TreeKind::hyperstar:
            for (int i = 0; i < m; ++i) {
                std::vector<Vertex> e{1};
                for (int j = 0; j < k - 1; ++j) e.push_back(i * (k - 1) + 2 + j);
                edges.push_back(std::move(e));
            }
            break;
        case TreeKind::hyperpath:
            for (int i = 0; i < m; ++i) {
                std::vector<Vertex> e;
                for (int j = 0; j < k; ++j) e.push_back(i * (k - 1) + 1 + j);
                edges.push_back(std::move(e));
            }
            break;
        case TreeKind::random: {
            std::mt19937_64 rng(seed);
            int used = 0;
            for (int i = 0; i < m; ++i) {
                std::vector<Vertex> e;
                if (i == 0) {
                    e.push_back(++used);
                } else {
                    e.push_back(static_cast<Vertex>(bounded_draw(rng, static_cast<std::uint64_t>(used))) + 1);
                }
                for (int j = 0; j < k - 1; ++j) e.push_back(++used);
                edges.push_back(std::move(e));
            }
            break;
        }
    }
    return UniformHypergraph::build(k, n, std::move(edges));
}

}  // namespace hts
