#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "hypergraph.hpp"

namespace hts {

struct Branch {
    SubHypergraph branch;
    Vertex anchor;
};

// Branches at w: components of the hypergraph obtained by deleting w and
// shrinking every edge through w to e∖{w}, each re-attached at w together with
// its original edges. Ordered by smallest non-anchor vertex.
inline std::vector<Branch> branches_at(const UniformHypergraph& h, Vertex w) {
    h.check_vertex(w);
    if (!is_connected(h)) throw DomainError("branches_at requires a connected hypergraph");
    const auto n = static_cast<std::size_t>(h.n());
    detail::DisjointSets ds(n + 1);
    for (const auto& e : h.edges()) {
        Vertex first = 0;
        for (Vertex v : e) {
            if (v == w) continue;
            if (first == 0) {
                first = v;
            } else {
                ds.unite(static_cast<std::size_t>(first), static_cast<std::size_t>(v));
            }
        }
    }
    std::vector<std::size_t> slot(n + 1, n + 1);
    std::vector<std::vector<Vertex>> vs;
    std::vector<std::vector<EdgeIndex>> es;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (v == w) continue;
        const std::size_t r = ds.find(static_cast<std::size_t>(v));
        if (slot[r] > n) {
            slot[r] = vs.size();
            vs.push_back({w});
            es.emplace_back();
        }
        vs[slot[r]].push_back(v);
    }
    for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
        const auto& e = h.edge(i);
        const Vertex other = e[0] == w ? e[1] : e[0];
        es[slot[ds.find(static_cast<std::size_t>(other))]].push_back(i);
    }
    std::vector<Branch> out;
    for (std::size_t c = 0; c < vs.size(); ++c) {
        out.push_back({SubHypergraph(h, std::move(vs[c]), std::move(es[c])), w});
    }
    return out;
}

struct PendantEdge {
    EdgeIndex edge;
    Vertex anchor;  // the one vertex of the edge whose degree is not 1
};

// Edges with exactly k−1 degree-one vertices.
inline std::vector<PendantEdge> pendant_edges(const UniformHypergraph& h) {
    std::vector<PendantEdge> out;
    for (EdgeIndex i = 0; i < h.edge_count(); ++i) {
        int leaves = 0;
        Vertex anchor = 0;
        for (Vertex v : h.edge(i)) {
            if (h.degree(v) == 1) {
                ++leaves;
            } else {
                anchor = v;
            }
        }
        if (leaves == h.k() - 1) out.push_back({i, anchor});
    }
    return out;
}

// Drops a pendant edge and its degree-one vertices; the rest is relabeled 1..n'.
inline UniformHypergraph remove_pendant_edge(const UniformHypergraph& h, const PendantEdge& p) {
    std::vector<Vertex> leaves;
    for (Vertex v : h.edge(p.edge)) {
        if (v != p.anchor) leaves.push_back(v);
    }
    return extract(delete_vertices(h, leaves)).first;
}

inline void require_hypertree(const UniformHypergraph& t, const char* who) {
    if (!is_hypertree(t)) throw DomainError(std::string(who) + ": input is not a hypertree");
}

// Singletons (by label), then every connected edge subset with the vertices it
// spans, ordered by size and then lexicographically. T itself is last.
inline std::vector<SubHypergraph> enumerate_sub_hypertrees(const UniformHypergraph& t) {
    require_hypertree(t, "enumerate_sub_hypertrees");
    std::vector<SubHypergraph> out;
    for (Vertex v = 1; v <= t.n(); ++v) out.push_back(SubHypergraph::singleton(t, v));

    const auto m = static_cast<std::size_t>(t.edge_count());
    std::vector<std::vector<EdgeIndex>> adj(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto& a = t.edges()[i];
            const auto& b = t.edges()[j];
            std::vector<Vertex> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (!common.empty()) {
                adj[i].push_back(static_cast<EdgeIndex>(j));
                adj[j].push_back(static_cast<EdgeIndex>(i));
            }
        }
    }

    // ESU enumeration of connected subsets in the line graph; each subset is
    // generated once, rooted at its smallest edge.
    std::vector<std::vector<EdgeIndex>> subsets;
    std::vector<EdgeIndex> current;
    std::vector<int> blocked(m, 0);  // >0: in current or adjacent to it
    auto block = [&](EdgeIndex e, int delta) {
        blocked[static_cast<std::size_t>(e)] += delta;
        for (EdgeIndex u : adj[static_cast<std::size_t>(e)]) blocked[static_cast<std::size_t>(u)] += delta;
    };
    std::function<void(std::vector<EdgeIndex>, EdgeIndex)> extend = [&](std::vector<EdgeIndex> ext, EdgeIndex root) {
        subsets.push_back(current);
        while (!ext.empty()) {
            const EdgeIndex w = ext.back();
            ext.pop_back();
            std::vector<EdgeIndex> next = ext;
            for (EdgeIndex u : adj[static_cast<std::size_t>(w)]) {
                if (u > root && blocked[static_cast<std::size_t>(u)] == 0) next.push_back(u);
            }
            current.push_back(w);
            block(w, 1);
            extend(std::move(next), root);
            block(w, -1);
            current.pop_back();
        }
    };
    for (std::size_t r = 0; r < m; ++r) {
        const auto root = static_cast<EdgeIndex>(r);
        current = {root};
        block(root, 1);
        std::vector<EdgeIndex> ext;
        for (EdgeIndex u : adj[r]) {
            if (u > root) ext.push_back(u);
        }
        extend(std::move(ext), root);
        block(root, -1);
    }
    for (auto& s : subsets) std::sort(s.begin(), s.end());
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (auto& s : subsets) out.push_back(SubHypergraph::spanned(t, std::move(s)));
    return out;
}

}  // namespace hts
