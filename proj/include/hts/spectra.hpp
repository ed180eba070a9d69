#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "complex_roots.hpp"
#include "hypertree.hpp"
#include "matchpoly.hpp"
#include "parallel.hpp"
#include "real_roots.hpp"

namespace hts {

namespace detail {

inline void require_tree_with_edges(const UniformHypergraph& t, const char* who) {
    require_hypertree(t, who);
    if (t.edge_count() < 1) throw DomainError(std::string(who) + ": hypertree needs at least one edge");
}

inline std::string subtree_id(const UniformHypergraph& t, const SubHypergraph& sub) {
    return sub == SubHypergraph::whole(t) ? std::string("T") : sub.id();
}

}  // namespace detail

// k^{m(k−2)}
inline BigInt zero_multiplicity_closed_form(int k, int m) {
    if (k < 2) throw DomainError("zero_multiplicity_closed_form: k must be at least 2");
    if (m < 1) throw DomainError("zero_multiplicity_closed_form: m must be at least 1");
    return ipow(BigInt(k), static_cast<unsigned long>(m) * static_cast<unsigned long>(k - 2));
}

inline BigInt zero_multiplicity_closed_form(const UniformHypergraph& t) {
    detail::require_tree_with_edges(t, "zero_multiplicity_closed_form");
    return zero_multiplicity_closed_form(t.k(), t.edge_count());
}

// φ_T(T̃) for every sub-hypertree, in enumeration order.
struct SubtreePolynomials {
    std::vector<SubHypergraph> subtrees;
    std::vector<Polynomial> phi;
};

inline SubtreePolynomials subtree_polynomials(const UniformHypergraph& t, int jobs = 1) {
    SubtreePolynomials out{enumerate_sub_hypertrees(t), {}};
    MatchingPolyEngine engine(t);
    out.phi = parallel_map(out.subtrees.size(), jobs, [&](std::size_t i) { return engine(out.subtrees[i]); });
    return out;
}

struct ReportCheck {
    std::string name;
    bool passed;
};

struct ZeroMultReport {
    int k = 0;
    int m = 0;
    BigInt closed_form;
    Polynomial phi;
    Rational phi_at_zero;
    Rational phi_derivative_at_zero;
    std::vector<std::pair<std::string, Rational>> proper_subtree_values;
    std::optional<long long> oracle_multiplicity;
    std::vector<ReportCheck> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.passed; });
    }

    void set_oracle_multiplicity(long long multiplicity) {
        oracle_multiplicity = multiplicity;
        std::erase_if(checks, [](const ReportCheck& c) { return c.name == "oracle_multiplicity_matches"; });
        checks.push_back({"oracle_multiplicity_matches", BigInt(std::to_string(multiplicity)) == closed_form});
    }
};

// Zero is a simple root of φ_T(T) and no root of φ_T(T̃) for proper sub-hypertrees with an edge.
inline ZeroMultReport verify_simple_zero(const UniformHypergraph& t, int jobs = 1) {
    detail::require_tree_with_edges(t, "verify_simple_zero");
    ZeroMultReport r;
    r.k = t.k();
    r.m = t.edge_count();
    r.closed_form = zero_multiplicity_closed_form(t);
    const auto all = subtree_polynomials(t, jobs);
    r.phi = all.phi.back();
    r.phi_at_zero = r.phi(0);
    r.phi_derivative_at_zero = derivative(r.phi)(0);
    bool proper_ok = true;
    for (std::size_t i = 0; i + 1 < all.subtrees.size(); ++i) {
        if (all.subtrees[i].edges().empty()) continue;
        const Rational v = all.phi[i](0);
        proper_ok = proper_ok && v != 0;
        r.proper_subtree_values.emplace_back(all.subtrees[i].id(), v);
    }
    const int parity = (t.n() - 1) % 2 == 0 ? 1 : -1;
    r.checks = {
        {"phi_at_zero_is_zero", r.phi_at_zero == 0},
        {"derivative_at_zero_nonzero", r.phi_derivative_at_zero != 0},
        {"proper_subtrees_nonzero_at_zero", proper_ok},
        {"derivative_sign", parity * sign(r.phi_derivative_at_zero) > 0},
    };
    return r;
}

struct EigenvalueEntry {
    enum class Kind { exact, interval, complex };
    Kind kind;
    Rational value;  // exact
    Rational lower;  // interval, open
    Rational upper;
    ComplexRoot approx;  // complex
    std::string witness;
    std::optional<BigInt> multiplicity;  // known only for zero
};

inline const char* to_string(EigenvalueEntry::Kind kind) {
    switch (kind) {
        case EigenvalueEntry::Kind::exact: return "exact";
        case EigenvalueEntry::Kind::interval: return "interval";
        case EigenvalueEntry::Kind::complex: return "complex";
    }
    return "?";
}

struct SpectrumReport {
    int k = 0;
    int m = 0;
    int precision_bits = 0;
    std::vector<EigenvalueEntry> eigenvalues;  // real entries by value, then complex by (re, im)
    Polynomial root_set;                       // monic square-free; its roots are exactly the eigenvalues
};

// Union of the roots of φ_T(T̃) over all sub-hypertrees. Each sub-hypertree
// contributes the part of its square-free φ coprime to everything seen before,
// so every eigenvalue appears once, attributed to the first sub-hypertree
// (singletons, then edge sets by size) that produced it.
inline SpectrumReport laplacian_eigenvalue_set(const UniformHypergraph& t, int precision_bits = 128, int jobs = 1) {
    if (t.k() == 2) throw Unsupported("laplacian_eigenvalue_set: k = 2 is not supported");
    detail::require_tree_with_edges(t, "laplacian_eigenvalue_set");
    const auto all = subtree_polynomials(t, jobs);

    std::vector<Polynomial> fresh(all.phi.size());
    Polynomial seen = Polynomial::constant(1);
    for (std::size_t i = 0; i < all.phi.size(); ++i) {
        const Polynomial radical = squarefree_part(all.phi[i]);
        fresh[i] = monic(exact_divide(radical, gcd(radical, seen)));
        seen *= fresh[i];
    }

    SpectrumReport report;
    report.k = t.k();
    report.m = t.edge_count();
    report.precision_bits = precision_bits;
    report.root_set = seen;

    auto witness_of = [&](auto&& holds) -> std::string {
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            if (fresh[i].degree() > 0 && holds(fresh[i])) return detail::subtree_id(t, all.subtrees[i]);
        }
        throw DomainError("laplacian_eigenvalue_set: root without witness");
    };
    const BigInt zero_mult = zero_multiplicity_closed_form(t);

    const auto iso = isolate_real_roots(seen);
    for (const auto& r : iso.exact_rational_roots) {
        EigenvalueEntry e{};
        e.kind = EigenvalueEntry::Kind::exact;
        e.value = r.root;
        e.witness = witness_of([&](const Polynomial& f) { return f(r.root) == 0; });
        if (r.root == 0) e.multiplicity = zero_mult;
        report.eigenvalues.push_back(std::move(e));
    }
    for (const auto& iv : iso.intervals) {
        EigenvalueEntry e{};
        e.kind = EigenvalueEntry::Kind::interval;
        e.lower = iv.lower;
        e.upper = iv.upper;
        e.witness = witness_of([&](const Polynomial& f) {
            return SturmSequence(f).count_roots(iv.lower, iv.upper) - (f(iv.upper) == 0 ? 1 : 0) == 1;
        });
        report.eigenvalues.push_back(std::move(e));
    }
    std::stable_sort(report.eigenvalues.begin(), report.eigenvalues.end(),
                     [](const EigenvalueEntry& a, const EigenvalueEntry& b) {
                         const Rational& x = a.kind == EigenvalueEntry::Kind::exact ? a.value : a.lower;
                         const Rational& y = b.kind == EigenvalueEntry::Kind::exact ? b.value : b.lower;
                         return x < y;
                     });

    std::vector<EigenvalueEntry> nonreal;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
        const int degree = fresh[i].degree();
        if (degree <= 0) continue;
        const int real = SturmSequence(fresh[i]).total_distinct();
        if (real == degree) continue;
        auto roots = approx_complex_roots(fresh[i], precision_bits);
        std::stable_sort(roots.begin(), roots.end(),
                         [](const ComplexRoot& a, const ComplexRoot& b) { return abs(a.im) > abs(b.im); });
        roots.resize(static_cast<std::size_t>(degree - real));
        for (auto& z : roots) {
            EigenvalueEntry e{};
            e.kind = EigenvalueEntry::Kind::complex;
            e.approx = std::move(z);
            e.witness = detail::subtree_id(t, all.subtrees[i]);
            nonreal.push_back(std::move(e));
        }
    }
    std::stable_sort(nonreal.begin(), nonreal.end(), [](const EigenvalueEntry& a, const EigenvalueEntry& b) {
        return a.approx.re != b.approx.re ? a.approx.re < b.approx.re : a.approx.im < b.approx.im;
    });
    for (auto& e : nonreal) report.eigenvalues.push_back(std::move(e));
    return report;
}

// d_H(v)x_v^{k−1} − Σ_{e∋v} Π_{u∈e∖{v}} x_u, for each v
inline std::vector<Rational> laplacian_apply(const UniformHypergraph& h, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != h.n()) {
        throw DomainError("laplacian_apply: vector has " + std::to_string(x.size()) + " entries, expected " +
                          std::to_string(h.n()));
    }
    const auto km1 = static_cast<unsigned long>(h.k() - 1);
    std::vector<Rational> out(x.size());
    for (Vertex v = 1; v <= h.n(); ++v) {
        const auto vi = static_cast<std::size_t>(v - 1);
        Rational acc = h.degree(v) * ipow(x[vi], km1);
        for (EdgeIndex e : h.incident_edges(v)) {
            Rational prod = 1;
            for (Vertex u : h.edge(e)) {
                if (u != v) prod *= x[static_cast<std::size_t>(u - 1)];
            }
            acc -= prod;
        }
        out[vi] = std::move(acc);
    }
    return out;
}

// Every real root of φ_T(T̃), for proper sub-hypertrees with an edge, is positive.
// Ids of offending sub-hypertrees go to `failures` when given.
inline bool positivity_check(const UniformHypergraph& t, std::vector<std::string>* failures = nullptr, int jobs = 1) {
    if (t.k() < 3) throw Unsupported("positivity_check: requires k >= 3");
    detail::require_tree_with_edges(t, "positivity_check");
    const auto all = subtree_polynomials(t, jobs);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < all.subtrees.size(); ++i) {
        if (all.subtrees[i].edges().empty()) continue;
        if (count_nonpositive_real_roots(all.phi[i]) != 0) {
            ok = false;
            if (failures) failures->push_back(all.subtrees[i].id());
        }
    }
    return ok;
}

// (λ − d_T(w))·φ_T(T−w) + (−1)^{k−1} Σ_{e∈E_T(w)} φ_T(T−V(e)) = φ_T(T), all sides by the direct formula.
inline bool rational_identity_check(const UniformHypergraph& t, Vertex w) {
    t.check_vertex(w);
    return vertex_recurrence_check(direct_evaluator(), SubHypergraph::whole(t), w);
}

}  // namespace hts
