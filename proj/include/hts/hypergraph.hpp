#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace hts {

using Vertex = int;                // 1-based label
using EdgeIndex = int;             // position in the host's edge list
using Edge = std::vector<Vertex>;  // sorted ascending, k distinct labels

namespace detail {

inline std::string join(std::span<const int> xs, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(xs[i]);
    }
    return out;
}

// Reason a sorted vertex list is not a valid edge of a k-uniform hypergraph on 1..n.
inline std::optional<std::string> edge_problem(int k, int n, const std::vector<int>& sorted) {
    for (int v : sorted) {
        if (v < 1 || v > n) return "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n);
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::string("repeated vertex");
    if (static_cast<int>(sorted.size()) != k) {
        return "size " + std::to_string(sorted.size()) + " != k = " + std::to_string(k);
    }
    return std::nullopt;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

// k-uniform hypergraph on vertices 1..n. Edges keep their input order (that order
// defines EdgeIndex) and are stored with sorted vertex lists.
class UniformHypergraph {
public:
    static UniformHypergraph build(int k, int n, std::vector<std::vector<Vertex>> edges) {
        if (k < 2) throw ValidationError("k must be at least 2, got " + std::to_string(k));
        if (n < 1) throw ValidationError("n must be at least 1, got " + std::to_string(n));
        UniformHypergraph h;
        h.k_ = k;
        h.n_ = n;
        h.incidence_.assign(static_cast<std::size_t>(n) + 1, {});
        std::set<Edge> seen;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            Edge e = std::move(edges[i]);
            std::sort(e.begin(), e.end());
            const std::string where = "edge " + std::to_string(i + 1) + " {" + detail::join(e) + "}";
            if (auto problem = detail::edge_problem(k, n, e)) throw ValidationError(where + ": " + *problem);
            if (!seen.insert(e).second) throw ValidationError(where + ": duplicate edge");
            for (Vertex v : e) h.incidence_[static_cast<std::size_t>(v)].push_back(static_cast<EdgeIndex>(i));
            h.edges_.push_back(std::move(e));
        }
        return h;
    }

    int k() const { return k_; }
    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    const Edge& edge(EdgeIndex i) const {
        check_edge(i);
        return edges_[static_cast<std::size_t>(i)];
    }

    bool has_vertex(Vertex v) const { return v >= 1 && v <= n_; }

    int degree(Vertex v) const { return static_cast<int>(incident_edges(v).size()); }

    // E_H(v), as edge indices in ascending order.
    const std::vector<EdgeIndex>& incident_edges(Vertex v) const {
        check_vertex(v);
        return incidence_[static_cast<std::size_t>(v)];
    }

    void check_vertex(Vertex v) const {
        if (!has_vertex(v)) {
            throw DomainError("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n_));
        }
    }

    void check_edge(EdgeIndex i) const {
        if (i < 0 || i >= edge_count()) throw DomainError("edge index " + std::to_string(i) + " out of range");
    }

    // (k, n, sorted edge lists): equal keys iff equal labelled hypergraphs.
    std::string canonical_key() const {
        std::vector<Edge> sorted = edges_;
        std::sort(sorted.begin(), sorted.end());
        std::string key = "k=" + std::to_string(k_) + ";n=" + std::to_string(n_) + ";E=";
        for (const auto& e : sorted) key += "[" + detail::join(e) + "]";
        return key;
    }

    friend bool operator==(const UniformHypergraph& a, const UniformHypergraph& b) {
        return a.k_ == b.k_ && a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    UniformHypergraph() = default;

    int k_ = 0;
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeIndex>> incidence_;  // indexed by label, slot 0 unused
};

inline int degree(const UniformHypergraph& h, Vertex v) { return h.degree(v); }

inline const std::vector<EdgeIndex>& incident_edges(const UniformHypergraph& h, Vertex v) {
    return h.incident_edges(v);
}

// A vertex subset of a host together with host edges lying inside it. Labels are
// the host's; the host must outlive every SubHypergraph referring to it.
class SubHypergraph {
public:
    SubHypergraph(const UniformHypergraph& host, std::vector<Vertex> vertices, std::vector<EdgeIndex> edges)
        : host_(&host), vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::sort(vertices_.begin(), vertices_.end());
        std::sort(edges_.begin(), edges_.end());
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
            throw DomainError("sub-hypergraph lists a vertex twice");
        }
        if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
            throw DomainError("sub-hypergraph lists an edge twice");
        }
        for (Vertex v : vertices_) host.check_vertex(v);
        for (EdgeIndex e : edges_) {
            for (Vertex v : host.edge(e)) {
                if (!contains_vertex(v)) {
                    throw DomainError("edge " + std::to_string(e + 1) + " leaves the sub-hypergraph at vertex " +
                                      std::to_string(v));
                }
            }
        }
    }

    static SubHypergraph whole(const UniformHypergraph& host) {
        std::vector<Vertex> vs(static_cast<std::size_t>(host.n()));
        std::iota(vs.begin(), vs.end(), 1);
        std::vector<EdgeIndex> es(static_cast<std::size_t>(host.edge_count()));
        std::iota(es.begin(), es.end(), 0);
        return SubHypergraph(host, std::move(vs), std::move(es));
    }

    // Induced: every host edge inside `vertices`.
    static SubHypergraph induced(const UniformHypergraph& host, std::vector<Vertex> vertices) {
        std::sort(vertices.begin(), vertices.end());
        std::vector<EdgeIndex> es;
        for (EdgeIndex i = 0; i < host.edge_count(); ++i) {
            const auto& e = host.edges()[static_cast<std::size_t>(i)];
            if (std::includes(vertices.begin(), vertices.end(), e.begin(), e.end())) es.push_back(i);
        }
        return SubHypergraph(host, std::move(vertices), std::move(es));
    }

    // Edges plus exactly the vertices they cover.
    static SubHypergraph spanned(const UniformHypergraph& host, std::vector<EdgeIndex> edges) {
        std::set<Vertex> vs;
        for (EdgeIndex e : edges) {
            const auto& ev = host.edge(e);
            vs.insert(ev.begin(), ev.end());
        }
        return SubHypergraph(host, std::vector<Vertex>(vs.begin(), vs.end()), std::move(edges));
    }

    static SubHypergraph singleton(const UniformHypergraph& host, Vertex v) { return SubHypergraph(host, {v}, {}); }

    const UniformHypergraph& host() const { return *host_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<EdgeIndex>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool contains_vertex(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }
    bool contains_edge(EdgeIndex e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    // E_{H̃}(v)
    std::vector<EdgeIndex> incident_edges(Vertex v) const {
        std::vector<EdgeIndex> out;
        for (EdgeIndex e : host_->incident_edges(v)) {
            if (contains_edge(e)) out.push_back(e);
        }
        return out;
    }

    // H̃ − S: drop the vertices and every edge touching them.
    SubHypergraph minus_vertices(std::span<const Vertex> removed) const {
        std::vector<Vertex> drop(removed.begin(), removed.end());
        std::sort(drop.begin(), drop.end());
        for (Vertex v : drop) {
            if (!contains_vertex(v)) throw DomainError("vertex " + std::to_string(v) + " not in sub-hypergraph");
        }
        std::vector<Vertex> vs;
        std::set_difference(vertices_.begin(), vertices_.end(), drop.begin(), drop.end(), std::back_inserter(vs));
        std::vector<EdgeIndex> es;
        for (EdgeIndex e : edges_) {
            const auto& ev = host_->edges()[static_cast<std::size_t>(e)];
            bool hit = false;
            for (Vertex v : ev) hit = hit || std::binary_search(drop.begin(), drop.end(), v);
            if (!hit) es.push_back(e);
        }
        return SubHypergraph(*host_, std::move(vs), std::move(es), Trusted{});
    }

    SubHypergraph minus_vertex(Vertex v) const { return minus_vertices(std::span<const Vertex>(&v, 1)); }

    // H̃ ∖ I: drop the edges, keep every vertex.
    SubHypergraph minus_edges(std::span<const EdgeIndex> removed) const {
        std::vector<EdgeIndex> drop(removed.begin(), removed.end());
        std::sort(drop.begin(), drop.end());
        for (EdgeIndex e : drop) {
            if (!contains_edge(e)) throw DomainError("edge " + std::to_string(e + 1) + " not in sub-hypergraph");
        }
        std::vector<EdgeIndex> es;
        std::set_difference(edges_.begin(), edges_.end(), drop.begin(), drop.end(), std::back_inserter(es));
        return SubHypergraph(*host_, vertices_, std::move(es), Trusted{});
    }

    SubHypergraph minus_edge(EdgeIndex e) const { return minus_edges(std::span<const EdgeIndex>(&e, 1)); }

    // Connected components, ordered by smallest vertex label.
    std::vector<SubHypergraph> components() const {
        const std::size_t n = vertices_.size();
        detail::DisjointSets ds(n);
        auto pos = [&](Vertex v) {
            return static_cast<std::size_t>(std::lower_bound(vertices_.begin(), vertices_.end(), v) -
                                            vertices_.begin());
        };
        for (EdgeIndex e : edges_) {
            const auto& ev = host_->edges()[static_cast<std::size_t>(e)];
            for (std::size_t j = 1; j < ev.size(); ++j) ds.unite(pos(ev[0]), pos(ev[j]));
        }
        std::vector<std::size_t> slot(n, n);
        std::vector<std::vector<Vertex>> vs;
        std::vector<std::vector<EdgeIndex>> es;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = ds.find(i);
            if (slot[r] == n) {
                slot[r] = vs.size();
                vs.emplace_back();
                es.emplace_back();
            }
            vs[slot[r]].push_back(vertices_[i]);
        }
        for (EdgeIndex e : edges_) {
            const auto& ev = host_->edges()[static_cast<std::size_t>(e)];
            es[slot[ds.find(pos(ev[0]))]].push_back(e);
        }
        std::vector<SubHypergraph> out;
        out.reserve(vs.size());
        for (std::size_t c = 0; c < vs.size(); ++c) {
            out.push_back(SubHypergraph(*host_, std::move(vs[c]), std::move(es[c]), Trusted{}));
        }
        return out;
    }

    bool is_connected() const { return vertices_.size() <= 1 || components().size() == 1; }

    // Memo key, unique per (vertex set, edge set) under one host.
    std::string key() const { return detail::join(vertices_) + "|" + detail::join(edges_); }

    // Stable human-readable id: "v4" for a singleton, "e1+e3" (1-based) when the
    // vertices are exactly those the edges span, otherwise both lists.
    std::string id() const {
        if (edges_.empty() && vertices_.size() == 1) return "v" + std::to_string(vertices_[0]);
        std::set<Vertex> covered;
        for (EdgeIndex e : edges_) {
            const auto& ev = host_->edges()[static_cast<std::size_t>(e)];
            covered.insert(ev.begin(), ev.end());
        }
        std::string es;
        for (std::size_t i = 0; i < edges_.size(); ++i) es += (i ? "+e" : "e") + std::to_string(edges_[i] + 1);
        if (!edges_.empty() && covered.size() == vertices_.size()) return es;
        return "V{" + detail::join(vertices_) + "}E{" + es + "}";
    }

    friend bool operator==(const SubHypergraph& a, const SubHypergraph& b) {
        return a.host_ == b.host_ && a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
    }

private:
    struct Trusted {};

    // Internal constructor for results derived from an already-valid sub-hypergraph.
    SubHypergraph(const UniformHypergraph& host, std::vector<Vertex> vertices, std::vector<EdgeIndex> edges, Trusted)
        : host_(&host), vertices_(std::move(vertices)), edges_(std::move(edges)) {}

    const UniformHypergraph* host_;
    std::vector<Vertex> vertices_;
    std::vector<EdgeIndex> edges_;
};

// H − S
inline SubHypergraph delete_vertices(const UniformHypergraph& h, std::span<const Vertex> removed) {
    return SubHypergraph::whole(h).minus_vertices(removed);
}

// H ∖ I
inline SubHypergraph delete_edges(const UniformHypergraph& h, std::span<const EdgeIndex> removed) {
    return SubHypergraph::whole(h).minus_edges(removed);
}

inline bool is_connected(const UniformHypergraph& h) { return SubHypergraph::whole(h).is_connected(); }

// Connected, n = |E|(k−1)+1, and no two edges share more than one vertex.
inline bool is_hypertree(const UniformHypergraph& h) {
    if (static_cast<long long>(h.n()) != static_cast<long long>(h.edge_count()) * (h.k() - 1) + 1) return false;
    if (!is_connected(h)) return false;
    const auto& es = h.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            std::vector<Vertex> common;
            std::set_intersection(es[i].begin(), es[i].end(), es[j].begin(), es[j].end(), std::back_inserter(common));
            if (common.size() > 1) return false;
        }
    }
    return true;
}

// Relabels a sub-hypergraph into a standalone hypergraph, preserving label order.
// Returns the new hypergraph and new→old label map (index 0 unused).
inline std::pair<UniformHypergraph, std::vector<Vertex>> extract(const SubHypergraph& sub) {
    const auto& vs = sub.vertices();
    if (vs.empty()) throw DomainError("cannot extract an empty sub-hypergraph");
    std::vector<Vertex> old_of(vs.size() + 1, 0);
    for (std::size_t i = 0; i < vs.size(); ++i) old_of[i + 1] = vs[i];
    auto relabel = [&](Vertex v) {
        return static_cast<Vertex>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin()) + 1;
    };
    std::vector<std::vector<Vertex>> es;
    for (EdgeIndex e : sub.edges()) {
        std::vector<Vertex> ne;
        for (Vertex v : sub.host().edge(e)) ne.push_back(relabel(v));
        es.push_back(std::move(ne));
    }
    return {UniformHypergraph::build(sub.host().k(), static_cast<int>(vs.size()), std::move(es)), old_of};
}

}  // namespace hts
