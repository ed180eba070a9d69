#pragma once

#include <gmp.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hypergraph.hpp"
#include "interpolate.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"

namespace hts::oracle {

// c + a·λ
struct LambdaLinear {
    Rational constant;
    Rational lambda_coefficient;

    Rational at(const Rational& lambda) const { return constant + lambda_coefficient * lambda; }
    bool is_zero() const { return constant == 0 && lambda_coefficient == 0; }

    LambdaLinear& operator+=(const LambdaLinear& o) {
        constant += o.constant;
        lambda_coefficient += o.lambda_coefficient;
        return *this;
    }
    friend bool operator==(const LambdaLinear& a, const LambdaLinear& b) {
        return a.constant == b.constant && a.lambda_coefficient == b.lambda_coefficient;
    }
};

using Exponent = std::vector<int>;
using Terms = std::map<Exponent, LambdaLinear>;

// A form: homogeneous polynomial of the given degree with λ-linear coefficients.
struct Form {
    int degree = 0;
    Terms terms;
};

// n homogeneous forms in variables x_0 … x_{n−1} (for a hypergraph, x_{v−1} is vertex v).
class PolySystem {
public:
    PolySystem(int num_vars, std::vector<Form> forms) : num_vars_(num_vars), forms_(std::move(forms)) {
        if (num_vars < 0) throw DomainError("PolySystem: negative variable count");
        for (std::size_t i = 0; i < forms_.size(); ++i) {
            auto& f = forms_[i];
            if (f.degree < 1) throw DomainError("PolySystem: form " + std::to_string(i) + " has degree < 1");
            std::erase_if(f.terms, [](const auto& t) { return t.second.is_zero(); });
            for (const auto& [e, c] : f.terms) {
                if (static_cast<int>(e.size()) != num_vars) {
                    throw DomainError("PolySystem: exponent vector of the wrong length in form " + std::to_string(i));
                }
                int total = 0;
                for (int x : e) {
                    if (x < 0) throw DomainError("PolySystem: negative exponent");
                    total += x;
                }
                if (total != f.degree) {
                    throw DomainError("PolySystem: form " + std::to_string(i) + " is not homogeneous of degree " +
                                      std::to_string(f.degree));
                }
            }
        }
    }

    int num_vars() const { return num_vars_; }
    const std::vector<Form>& forms() const { return forms_; }
    const Form& form(std::size_t i) const { return forms_.at(i); }

    std::vector<int> degrees() const {
        std::vector<int> d;
        for (const auto& f : forms_) d.push_back(f.degree);
        return d;
    }

    // Σ_i Π_{j≠i} d_j: the degree of the resultant in λ when λ sits only on x_i^{d_i} in form i.
    long long characteristic_degree() const {
        long long total = 0;
        for (std::size_t i = 0; i < forms_.size(); ++i) {
            long long p = 1;
            for (std::size_t j = 0; j < forms_.size(); ++j) {
                if (j != i) p *= forms_[j].degree;
            }
            total += p;
        }
        return total;
    }

    // {F_1 … F_n} in x and {G_1 … G_m} in y as one system in (x, y).
    static PolySystem block(const PolySystem& a, const PolySystem& b) {
        const int n = a.num_vars() + b.num_vars();
        std::vector<Form> forms;
        auto widen = [&](const PolySystem& s, int offset) {
            for (const auto& f : s.forms()) {
                Form g{f.degree, {}};
                for (const auto& [e, c] : f.terms) {
                    Exponent w(static_cast<std::size_t>(n), 0);
                    std::copy(e.begin(), e.end(), w.begin() + offset);
                    g.terms.emplace(std::move(w), c);
                }
                forms.push_back(std::move(g));
            }
        };
        widen(a, 0);
        widen(b, a.num_vars());
        return PolySystem(n, std::move(forms));
    }

private:
    int num_vars_;
    std::vector<Form> forms_;
};

// Dehomogenised system: x_w = 1 substituted, variable w removed; all n forms kept.
struct AffineSystem {
    int num_vars = 0;
    std::vector<int> original_index;  // remaining variable j was x_{original_index[j]}
    std::vector<Terms> polynomials;
};

inline Exponent unit_power(int n, int var, int power) {
    Exponent e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(var)] = power;
    return e;
}

// F_v = (λ − d_H(v)) x_v^{k−1} + Σ_{e∋v} x_{e∖{v}}
inline PolySystem build_eigensystem(const UniformHypergraph& h) {
    const int n = h.n();
    std::vector<Form> forms;
    for (Vertex v = 1; v <= n; ++v) {
        Form f{h.k() - 1, {}};
        f.terms[unit_power(n, v - 1, h.k() - 1)] += LambdaLinear{-h.degree(v), 1};
        for (EdgeIndex e : h.incident_edges(v)) {
            Exponent x(static_cast<std::size_t>(n), 0);
            for (Vertex u : h.edge(e)) {
                if (u != v) ++x[static_cast<std::size_t>(u - 1)];
            }
            f.terms[x] += LambdaLinear{1, 0};
        }
        forms.push_back(std::move(f));
    }
    return PolySystem(n, std::move(forms));
}

// F̄_i = F_i|_{x_w = 0} for i ≠ w: the system of the principal sub-tensor without w.
inline PolySystem restrict_set_zero(const PolySystem& sys, int w) {
    if (w < 0 || w >= sys.num_vars()) throw DomainError("restrict_system: unknown variable " + std::to_string(w));
    if (static_cast<int>(sys.forms().size()) != sys.num_vars()) throw DomainError("restrict_system: system is not square");
    std::vector<Form> forms;
    for (int i = 0; i < sys.num_vars(); ++i) {
        if (i == w) continue;
        const auto& f = sys.form(static_cast<std::size_t>(i));
        Form g{f.degree, {}};
        for (const auto& [e, c] : f.terms) {
            if (e[static_cast<std::size_t>(w)] != 0) continue;
            Exponent r = e;
            r.erase(r.begin() + w);
            g.terms.emplace(std::move(r), c);
        }
        forms.push_back(std::move(g));
    }
    return PolySystem(sys.num_vars() - 1, std::move(forms));
}

// f_i = F_i|_{x_w = 1} for every i.
inline AffineSystem restrict_set_one(const PolySystem& sys, int w) {
    if (w < 0 || w >= sys.num_vars()) throw DomainError("restrict_system: unknown variable " + std::to_string(w));
    AffineSystem out;
    out.num_vars = sys.num_vars() - 1;
    for (int i = 0; i < sys.num_vars(); ++i) {
        if (i != w) out.original_index.push_back(i);
    }
    for (const auto& f : sys.forms()) {
        Terms t;
        for (const auto& [e, c] : f.terms) {
            Exponent r = e;
            r.erase(r.begin() + w);
            t[r] += c;
        }
        std::erase_if(t, [](const auto& x) { return x.second.is_zero(); });
        out.polynomials.push_back(std::move(t));
    }
    return out;
}

// Fraction-free (Bareiss) determinant of a dense n×n integer matrix, row-major.
// The matrix is consumed.
inline BigInt bareiss_determinant(std::vector<BigInt>& a, std::size_t n) {
    if (a.size() != n * n) throw DomainError("bareiss_determinant: matrix is not square");
    if (n == 0) return 1;
    int sign = 1;
    BigInt prev = 1;
    auto at = [&](std::size_t i, std::size_t j) -> mpz_ptr { return a[i * n + j].get_mpz_t(); };
    std::vector<std::size_t> pivot_row_nonzero;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (mpz_sgn(at(k, k)) == 0) {
            std::size_t r = k + 1;
            while (r < n && mpz_sgn(at(r, k)) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = k; j < n; ++j) mpz_swap(at(k, j), at(r, j));
            sign = -sign;
        }
        pivot_row_nonzero.clear();
        for (std::size_t j = k + 1; j < n; ++j) {
            if (mpz_sgn(at(k, j)) != 0) pivot_row_nonzero.push_back(j);
        }
        const mpz_ptr akk = at(k, k);
        const bool divide = k > 0;
        for (std::size_t i = k + 1; i < n; ++i) {
            const mpz_ptr aik = at(i, k);
            if (mpz_sgn(aik) == 0) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    mpz_ptr x = at(i, j);
                    if (mpz_sgn(x) == 0) continue;
                    mpz_mul(x, x, akk);
                    if (divide) mpz_divexact(x, x, prev.get_mpz_t());
                }
            } else {
                std::size_t next = 0;
                for (std::size_t j = k + 1; j < n; ++j) {
                    mpz_ptr x = at(i, j);
                    const bool pivot_nonzero = next < pivot_row_nonzero.size() && pivot_row_nonzero[next] == j;
                    if (pivot_nonzero) ++next;
                    if (mpz_sgn(x) == 0 && !pivot_nonzero) continue;
                    mpz_mul(x, x, akk);
                    if (pivot_nonzero) mpz_submul(x, aik, at(k, j));
                    if (divide) mpz_divexact(x, x, prev.get_mpz_t());
                }
                mpz_set_ui(aik, 0);
            }
        }
        mpz_set(prev.get_mpz_t(), akk);
    }
    BigInt det(a[n * n - 1]);
    return sign < 0 ? BigInt(-det) : det;
}

// Determinant of a rational matrix: rows are scaled to integers first.
inline Rational rational_determinant(const std::vector<Rational>& a, std::size_t n) {
    std::vector<BigInt> z(a.size());
    BigInt scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i * n + j].get_den_mpz_t());
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& q = a[i * n + j];
            z[i * n + j] = q.get_num() * (l / q.get_den());
        }
        scale *= l;
    }
    Rational det(bareiss_determinant(z, n), scale);
    det.canonicalize();
    return det;
}

struct MacaulayEvaluation {
    Rational lambda_point;
    Rational numerator_det;
    Rational denominator_det;
    Rational resultant_value;
};

// Row/column order of the Macaulay matrix. The value does not depend on it.
enum class MonomialOrder { lex, reverse_lex };

// Exponent vectors of total degree `degree` in n variables, lexicographically descending.
inline std::vector<Exponent> monomials_of_degree(int n, int degree) {
    std::vector<Exponent> out;
    Exponent e(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
        if (var == n - 1) {
            e[static_cast<std::size_t>(var)] = left;
            out.push_back(e);
            return;
        }
        for (int x = left; x >= 0; --x) {
            e[static_cast<std::size_t>(var)] = x;
            self(self, var + 1, left - x);
        }
        e[static_cast<std::size_t>(var)] = 0;
    };
    if (n > 0) rec(rec, 0, degree);
    return out;
}

// λ-free layout of a Macaulay matrix: which form and shift produce each row, and
// which rows/columns form the extraneous minor.
struct MacaulayLayout {
    std::size_t size = 0;
    std::vector<std::size_t> row_form;  // form index claiming each row
    std::vector<std::vector<std::pair<std::size_t, const LambdaLinear*>>> row_entries;
    std::vector<std::size_t> minor;     // indices divisible by at least two x_i^{d_i}
};

inline MacaulayLayout macaulay_layout(const PolySystem& sys, MonomialOrder order = MonomialOrder::lex) {
    const int n = sys.num_vars();
    if (static_cast<int>(sys.forms().size()) != n) {
        throw DomainError("macaulay: " + std::to_string(sys.forms().size()) + " forms in " + std::to_string(n) +
                          " variables");
    }
    if (n == 0) throw DomainError("macaulay: empty system");
    const auto d = sys.degrees();
    int big_d = 1;
    for (int di : d) big_d += di - 1;
    auto mons = monomials_of_degree(n, big_d);
    if (order == MonomialOrder::reverse_lex) std::reverse(mons.begin(), mons.end());
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < mons.size(); ++i) index.emplace(mons[i], i);

    MacaulayLayout lay;
    lay.size = mons.size();
    lay.row_form.resize(lay.size);
    lay.row_entries.resize(lay.size);
    for (std::size_t r = 0; r < mons.size(); ++r) {
        const auto& alpha = mons[r];
        int claimed = -1;
        int divisible = 0;
        for (int i = 0; i < n; ++i) {
            if (alpha[static_cast<std::size_t>(i)] >= d[static_cast<std::size_t>(i)]) {
                ++divisible;
                if (claimed < 0) claimed = i;
            }
        }
        if (divisible >= 2) lay.minor.push_back(r);
        lay.row_form[r] = static_cast<std::size_t>(claimed);
        Exponent shift = alpha;
        shift[static_cast<std::size_t>(claimed)] -= d[static_cast<std::size_t>(claimed)];
        for (const auto& [gamma, c] : sys.form(static_cast<std::size_t>(claimed)).terms) {
            Exponent col = shift;
            for (int v = 0; v < n; ++v) col[static_cast<std::size_t>(v)] += gamma[static_cast<std::size_t>(v)];
            lay.row_entries[r].emplace_back(index.at(col), &c);
        }
    }
    return lay;
}

// Res = det M / det M′ at λ = λ0; nullopt when det M′ vanishes there.
inline std::optional<MacaulayEvaluation> macaulay_resultant_at(const MacaulayLayout& lay, const Rational& lambda0) {
    const std::size_t n = lay.size;
    std::vector<Rational> full(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (const auto& [c, coef] : lay.row_entries[r]) full[r * n + c] = coef->at(lambda0);
    }
    const std::size_t m = lay.minor.size();
    std::vector<Rational> sub(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) sub[i * m + j] = full[lay.minor[i] * n + lay.minor[j]];
    }
    MacaulayEvaluation ev;
    ev.lambda_point = lambda0;
    ev.denominator_det = rational_determinant(sub, m);
    if (ev.denominator_det == 0) return std::nullopt;
    ev.numerator_det = rational_determinant(full, n);
    ev.resultant_value = ev.numerator_det / ev.denominator_det;
    return ev;
}

inline std::optional<MacaulayEvaluation> macaulay_resultant_at(const PolySystem& sys, const Rational& lambda0,
                                                               MonomialOrder order = MonomialOrder::lex) {
    return macaulay_resultant_at(macaulay_layout(sys, order), lambda0);
}

struct OracleBudget {
    long long max_degree = 120;
};

struct ResultantPolynomial {
    Polynomial poly;               // monic
    Rational normalization;        // raw interpolant = normalization · poly
    long long degree_bound = 0;    // Σ_i Π_{j≠i} d_j
    std::vector<Rational> skipped; // sample points where det M′ vanished
    std::size_t samples = 0;
};

// Resultant of a λ-linear system as a polynomial in λ, by sampling λ0 = 0, 1, 2, …
// (skipping points where det M′ = 0) and interpolating exactly.
inline ResultantPolynomial resultant_polynomial(const PolySystem& sys, int jobs = 1) {
    ResultantPolynomial out;
    out.degree_bound = sys.characteristic_degree();
    const auto lay = macaulay_layout(sys);
    const auto needed = static_cast<std::size_t>(out.degree_bound + 1);
    const long long max_attempts = 3 * out.degree_bound + 1;
    std::vector<SamplePoint> points;
    long long next = 0;
    const auto batch = static_cast<long long>(std::max(jobs, 1));
    while (points.size() < needed) {
        if (next >= max_attempts) {
            throw OracleFailure("resultant oracle: only " + std::to_string(points.size()) + " of " +
                                std::to_string(needed) + " usable sample points in " + std::to_string(next) +
                                " attempts");
        }
        const long long count = std::min<long long>(
            {batch, max_attempts - next, static_cast<long long>(needed - points.size())});
        const long long base = next;
        auto evals = parallel_map(static_cast<std::size_t>(count), jobs, [&](std::size_t i) {
            return macaulay_resultant_at(lay, Rational(static_cast<long>(base) + static_cast<long>(i)));
        });
        for (long long i = 0; i < count; ++i) {
            const auto& ev = evals[static_cast<std::size_t>(i)];
            if (ev) {
                points.push_back({ev->lambda_point, ev->resultant_value});
            } else {
                out.skipped.emplace_back(static_cast<long>(base + i));
            }
        }
        next += count;
    }
    out.samples = points.size();
    const Polynomial raw = interpolate(points);
    if (raw.is_zero()) throw OracleFailure("resultant oracle: resultant vanishes identically in λ");
    out.normalization = raw.leading();
    out.poly = monic(raw);
    return out;
}

struct CharPolyResult {
    Polynomial poly;
    Rational normalization;
    long long degree = 0;
    std::vector<Rational> skipped;
    std::size_t samples = 0;
};

// Characteristic polynomial φ(L_H), degree n(k−1)^{n−1}.
inline long long characteristic_degree(const UniformHypergraph& h) {
    long long d = h.n();
    for (int i = 0; i < h.n() - 1; ++i) {
        d *= h.k() - 1;
        if (d > (1LL << 40)) return d;
    }
    return d;
}

inline CharPolyResult char_poly(const UniformHypergraph& h, const OracleBudget& budget = {}, int jobs = 1) {
    const long long degree = characteristic_degree(h);
    if (degree > budget.max_degree) throw BudgetExceeded(degree, budget.max_degree);
    auto res = resultant_polynomial(build_eigensystem(h), jobs);
    if (res.poly.degree() != degree) {
        throw OracleFailure("resultant oracle: interpolated degree " + std::to_string(res.poly.degree()) +
                            " differs from " + std::to_string(degree));
    }
    return {std::move(res.poly), res.normalization, degree, std::move(res.skipped), res.samples};
}

// φ(L) of a single edge: (λ−1)^{k(k−1)^{k−1}−k^{k−1}} ((λ−1)^k + (−1)^{k−1})^{k^{k−2}}
inline Polynomial one_edge_closed_form(int k) {
    if (k < 2) throw DomainError("one_edge_closed_form: k must be at least 2");
    const auto uk = static_cast<unsigned long>(k);
    const unsigned long total = uk * static_cast<unsigned long>(ipow(BigInt(k - 1), uk - 1).get_ui());
    const unsigned long inner = static_cast<unsigned long>(ipow(BigInt(k), uk - 2).get_ui());
    const Polynomial shifted = Polynomial::linear(1);
    const Polynomial factor = pow(shifted, uk) + Polynomial::constant(k % 2 == 0 ? -1 : 1);
    return pow(shifted, total - inner * uk) * pow(factor, inner);
}

// Res(A ∪ B) = Res(A)^{Π δ_j} · Res(B)^{Π d_i}, checked at `points` random rational λ.
inline bool product_formula_check(const PolySystem& a, const PolySystem& b, std::uint64_t seed = 1, int points = 5) {
    const PolySystem ab = PolySystem::block(a, b);
    const auto la = macaulay_layout(a);
    const auto lb = macaulay_layout(b);
    const auto lab = macaulay_layout(ab);
    unsigned long exp_a = 1, exp_b = 1;
    for (int dj : b.degrees()) exp_a *= static_cast<unsigned long>(dj);
    for (int di : a.degrees()) exp_b *= static_cast<unsigned long>(di);
    std::mt19937_64 rng(seed);
    int done = 0;
    for (int attempt = 0; done < points; ++attempt) {
        if (attempt > 20 * points) throw OracleFailure("product_formula_check: too many degenerate samples");
        Rational lam(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
        lam.canonicalize();
        const auto ra = macaulay_resultant_at(la, lam);
        const auto rb = macaulay_resultant_at(lb, lam);
        const auto rab = macaulay_resultant_at(lab, lam);
        if (!ra || !rb || !rab) continue;
        if (rab->resultant_value != ipow(ra->resultant_value, exp_a) * ipow(rb->resultant_value, exp_b)) return false;
        ++done;
    }
    return true;
}

}  // namespace hts::oracle
