#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "hypergraph.hpp"
#include "polynomial.hpp"

namespace hts {

struct Matching {
    std::vector<EdgeIndex> edges;  // ascending
    std::vector<Vertex> covered;   // V(M), ascending
};

// All matchings of the sub-hypergraph, the empty one first; backtracking over
// its edges in ascending index order.
inline std::vector<Matching> enumerate_matchings(const SubHypergraph& sub) {
    std::vector<Matching> out;
    const auto& es = sub.edges();
    const auto& host = sub.host();
    std::vector<EdgeIndex> chosen;
    std::vector<char> used(static_cast<std::size_t>(host.n()) + 1, 0);
    auto emit = [&] {
        Matching m;
        m.edges = chosen;
        for (EdgeIndex e : chosen) {
            const auto& ev = host.edge(e);
            m.covered.insert(m.covered.end(), ev.begin(), ev.end());
        }
        std::sort(m.covered.begin(), m.covered.end());
        out.push_back(std::move(m));
    };
    auto rec = [&](auto&& self, std::size_t from) -> void {
        emit();
        for (std::size_t i = from; i < es.size(); ++i) {
            const auto& ev = host.edge(es[i]);
            bool free = true;
            for (Vertex v : ev) free = free && !used[static_cast<std::size_t>(v)];
            if (!free) continue;
            for (Vertex v : ev) used[static_cast<std::size_t>(v)] = 1;
            chosen.push_back(es[i]);
            self(self, i + 1);
            chosen.pop_back();
            for (Vertex v : ev) used[static_cast<std::size_t>(v)] = 0;
        }
    };
    rec(rec, 0);
    return out;
}

namespace detail {

inline void require_host(const UniformHypergraph& host, const SubHypergraph& sub) {
    if (&sub.host() != &host) throw DomainError("sub-hypergraph does not belong to the given host");
}

// Π (λ − x) over the values, grouping equal factors.
inline Polynomial product_of_linears(const std::vector<Rational>& roots) {
    std::map<Rational, long long> counts;
    for (const auto& r : roots) ++counts[r];
    Polynomial out = Polynomial::constant(1);
    for (const auto& [r, c] : counts) out *= pow(Polynomial::linear(r), c);
    return out;
}

}  // namespace detail

// φ_H(H̃) = Σ_M (−1)^{(k−1)|M|} Π_{v∉V(M)} (λ − d_H(v)), degrees from the host.
inline Polynomial laplacian_matching_poly(const UniformHypergraph& host, const SubHypergraph& sub) {
    detail::require_host(host, sub);
    Polynomial out;
    for (const auto& m : enumerate_matchings(sub)) {
        std::vector<Rational> roots;
        for (Vertex v : sub.vertices()) {
            if (!std::binary_search(m.covered.begin(), m.covered.end(), v)) roots.emplace_back(host.degree(v));
        }
        Polynomial term = detail::product_of_linears(roots);
        if ((static_cast<long long>(host.k() - 1) * static_cast<long long>(m.edges.size())) % 2 == 1) term = -term;
        out += term;
    }
    return out;
}

struct WeightFunction {
    std::map<Vertex, Rational> vertex_weight;
    std::map<EdgeIndex, Rational> edge_weight;  // keyed by host edge index

    // w(v) = d_H(v), w(e) = −1
    static WeightFunction laplacian(const UniformHypergraph& host) {
        WeightFunction w;
        for (Vertex v = 1; v <= host.n(); ++v) w.vertex_weight[v] = host.degree(v);
        for (EdgeIndex e = 0; e < host.edge_count(); ++e) w.edge_weight[e] = -1;
        return w;
    }

    static WeightFunction uniform(const UniformHypergraph& host, const Rational& vertex, const Rational& edge) {
        WeightFunction w;
        for (Vertex v = 1; v <= host.n(); ++v) w.vertex_weight[v] = vertex;
        for (EdgeIndex e = 0; e < host.edge_count(); ++e) w.edge_weight[e] = edge;
        return w;
    }
};

// Σ_M (−1)^{|M|} Π_{e∈M} w(e)^k Π_{v∉V(M)} (λ − w(v))
inline Polynomial weighted_matching_poly(const SubHypergraph& sub, const WeightFunction& w) {
    auto vertex_weight = [&](Vertex v) -> const Rational& {
        auto it = w.vertex_weight.find(v);
        if (it == w.vertex_weight.end()) throw DomainError("no weight for vertex " + std::to_string(v));
        return it->second;
    };
    auto edge_weight = [&](EdgeIndex e) -> const Rational& {
        auto it = w.edge_weight.find(e);
        if (it == w.edge_weight.end()) throw DomainError("no weight for edge " + std::to_string(e + 1));
        return it->second;
    };
    for (Vertex v : sub.vertices()) vertex_weight(v);
    for (EdgeIndex e : sub.edges()) edge_weight(e);

    const auto k = static_cast<unsigned long>(sub.host().k());
    Polynomial out;
    for (const auto& m : enumerate_matchings(sub)) {
        Rational scale = m.edges.size() % 2 == 0 ? 1 : -1;
        for (EdgeIndex e : m.edges) scale *= ipow(edge_weight(e), k);
        if (scale == 0) continue;
        std::vector<Rational> roots;
        for (Vertex v : sub.vertices()) {
            if (!std::binary_search(m.covered.begin(), m.covered.end(), v)) roots.push_back(vertex_weight(v));
        }
        out += scale * detail::product_of_linears(roots);
    }
    return out;
}

// Recursive evaluation of φ_H(·) for sub-hypergraphs of one host:
// multiplicative over components, otherwise expanded at a pivot v by
// φ = (λ − d_H(v))·φ(H̃−v) + (−1)^{k−1} Σ_{e∈E_H̃(v)} φ(H̃−V(e)).
// The pivot is a vertex of maximum host degree, ties to the smallest label.
// Safe for concurrent use; the memo admits duplicate (identical) inserts.
class MatchingPolyEngine {
public:
    explicit MatchingPolyEngine(const UniformHypergraph& host) : host_(&host) {}

    MatchingPolyEngine(const MatchingPolyEngine&) = delete;
    MatchingPolyEngine& operator=(const MatchingPolyEngine&) = delete;

    const UniformHypergraph& host() const { return *host_; }

    Polynomial operator()(const SubHypergraph& sub) {
        detail::require_host(*host_, sub);
        return compute(sub);
    }

    std::size_t memo_size() const {
        std::shared_lock lock(mutex_);
        return memo_.size();
    }

    static Vertex pivot(const SubHypergraph& sub) {
        Vertex best = sub.vertices().front();
        for (Vertex v : sub.vertices()) {
            if (sub.host().degree(v) > sub.host().degree(best)) best = v;
        }
        return best;
    }

private:
    Polynomial compute(const SubHypergraph& sub) {
        if (sub.empty()) return Polynomial::constant(1);
        if (sub.edges().empty()) {
            std::vector<Rational> roots;
            for (Vertex v : sub.vertices()) roots.emplace_back(host_->degree(v));
            return detail::product_of_linears(roots);
        }
        const std::string key = sub.key();
        {
            std::shared_lock lock(mutex_);
            if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        }
        Polynomial result;
        auto parts = sub.components();
        if (parts.size() > 1) {
            result = Polynomial::constant(1);
            for (const auto& part : parts) result *= compute(part);
        } else {
            const Vertex v = pivot(sub);
            result = Polynomial::linear(host_->degree(v)) * compute(sub.minus_vertex(v));
            Polynomial tail;
            for (EdgeIndex e : sub.incident_edges(v)) tail += compute(sub.minus_vertices(host_->edge(e)));
            if (host_->k() % 2 == 1) {
                result += tail;
            } else {
                result -= tail;
            }
        }
        std::unique_lock lock(mutex_);
        return memo_.try_emplace(key, std::move(result)).first->second;
    }

    const UniformHypergraph* host_;
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, Polynomial> memo_;
};

inline Polynomial matching_poly_recursive(const UniformHypergraph& host, const SubHypergraph& sub) {
    MatchingPolyEngine engine(host);
    return engine(sub);
}

inline const Rational& sign_k_minus_1(const UniformHypergraph& h) {
    static const Rational plus(1), minus(-1);
    return h.k() % 2 == 1 ? plus : minus;
}

// The identity checks below take any evaluator phi(SubHypergraph) -> Polynomial,
// e.g. a MatchingPolyEngine or the direct formula.

// d/dλ φ_H(H̃) = Σ_{v∈V(H̃)} φ_H(H̃−v)
template <typename Phi>
bool derivative_identity_check(Phi&& phi, const SubHypergraph& sub) {
    Polynomial rhs;
    for (Vertex v : sub.vertices()) rhs += phi(sub.minus_vertex(v));
    return derivative(phi(sub)) == rhs;
}

inline bool derivative_identity_check(const UniformHypergraph& host, const SubHypergraph& sub) {
    MatchingPolyEngine engine(host);
    return derivative_identity_check(engine, sub);
}

// φ(H̃) = φ(H̃∖e) + (−1)^{k−1} φ(H̃−V(e))
template <typename Phi>
bool edge_deletion_check(Phi&& phi, const SubHypergraph& sub, EdgeIndex e) {
    const auto& h = sub.host();
    return phi(sub) == phi(sub.minus_edge(e)) + sign_k_minus_1(h) * phi(sub.minus_vertices(h.edge(e)));
}

// φ(H̃) = φ(H̃∖I) + (−1)^{k−1} Σ_{e∈I} φ(H̃−V(e)) for I ⊆ E_H̃(v)
template <typename Phi>
bool subset_identity_check(Phi&& phi, const SubHypergraph& sub, Vertex v, std::span<const EdgeIndex> subset) {
    const auto& h = sub.host();
    const auto incident = sub.incident_edges(v);
    Polynomial tail;
    for (EdgeIndex e : subset) {
        if (!std::binary_search(incident.begin(), incident.end(), e)) {
            throw DomainError("edge " + std::to_string(e + 1) + " is not incident to vertex " + std::to_string(v));
        }
        tail += phi(sub.minus_vertices(h.edge(e)));
    }
    return phi(sub) == phi(sub.minus_edges(subset)) + sign_k_minus_1(h) * tail;
}

// φ(H̃) = (λ − d_H(v)) φ(H̃−v) + (−1)^{k−1} Σ_{e∈E_H̃(v)} φ(H̃−V(e))
template <typename Phi>
bool vertex_recurrence_check(Phi&& phi, const SubHypergraph& sub, Vertex v) {
    const auto& h = sub.host();
    Polynomial tail;
    for (EdgeIndex e : sub.incident_edges(v)) tail += phi(sub.minus_vertices(h.edge(e)));
    return phi(sub) == Polynomial::linear(h.degree(v)) * phi(sub.minus_vertex(v)) + sign_k_minus_1(h) * tail;
}

inline auto direct_evaluator() {
    return [](const SubHypergraph& sub) { return laplacian_matching_poly(sub.host(), sub); };
}

}  // namespace hts
