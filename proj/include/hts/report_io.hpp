#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "battery.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "spectra.hpp"

namespace hts {

using Document = nlohmann::ordered_json;

// Two-space indentation, trailing newline; parse followed by emit reproduces the text.
inline std::string emit(const Document& doc) { return doc.dump(2) + "\n"; }

inline Document parse_document(const std::string& text) {
    try {
        return Document::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed document: ") + e.what());
    }
}

inline Document polynomial_json(const Polynomial& p) {
    Document out = Document::array();
    for (auto& c : serialize(p)) out.push_back(std::move(c));
    return out;
}

inline Polynomial polynomial_from_json(const Document& doc) {
    if (!doc.is_array()) throw ValidationError("polynomial: expected a list of coefficient strings");
    std::vector<std::string> coefficients;
    for (const auto& c : doc) {
        if (!c.is_string()) throw ValidationError("polynomial: coefficients must be \"num/den\" strings");
        coefficients.push_back(c.get<std::string>());
    }
    return deserialize_polynomial(coefficients);
}

inline Document polynomial_document(const Polynomial& p) {
    return Document{{"degree", p.degree()}, {"coefficients", polynomial_json(p)}};
}

inline Polynomial parse_polynomial_document(const std::string& text) {
    const auto doc = parse_document(text);
    if (!doc.is_object() || !doc.contains("coefficients")) {
        throw ValidationError("polynomial document: missing field coefficients");
    }
    auto p = polynomial_from_json(doc.at("coefficients"));
    if (doc.contains("degree") && doc.at("degree") != p.degree()) {
        throw ValidationError("polynomial document: degree field disagrees with coefficients");
    }
    return p;
}

inline int decimal_digits(int precision_bits) { return std::max(15, precision_bits * 3 / 10); }

inline std::string complex_string(const ComplexRoot& z, int digits) {
    const std::string im = to_decimal(abs(z.im), digits);
    return to_decimal(z.re, digits) + (z.im < 0 ? "-" : "+") + im + "i";
}

inline Document to_json(const SpectrumReport& r) {
    const int digits = decimal_digits(r.precision_bits);
    Document eigen = Document::array();
    for (const auto& e : r.eigenvalues) {
        Document d{{"kind", to_string(e.kind)}};
        switch (e.kind) {
            case EigenvalueEntry::Kind::exact: d["value"] = to_string(e.value); break;
            case EigenvalueEntry::Kind::interval:
                d["lower"] = to_string(e.lower);
                d["upper"] = to_string(e.upper);
                break;
            case EigenvalueEntry::Kind::complex:
                d["re"] = to_decimal(e.approx.re, digits);
                d["im"] = to_decimal(e.approx.im, digits);
                d["residual_bound"] = to_decimal(e.approx.residual_bound, 6);
                break;
        }
        d["witness"] = e.witness;
        if (e.multiplicity) d["multiplicity"] = to_string(*e.multiplicity);
        eigen.push_back(std::move(d));
    }
    return Document{{"k", r.k},
                    {"m", r.m},
                    {"precision_bits", r.precision_bits},
                    {"root_set", polynomial_json(r.root_set)},
                    {"eigenvalues", std::move(eigen)}};
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string eigenvalue_value(const EigenvalueEntry& e, int digits) {
    switch (e.kind) {
        case EigenvalueEntry::Kind::exact: return to_string(e.value);
        case EigenvalueEntry::Kind::interval: return "(" + to_string(e.lower) + ", " + to_string(e.upper) + ")";
        case EigenvalueEntry::Kind::complex: return complex_string(e.approx, digits);
    }
    return "";
}

}  // namespace detail

inline std::string to_csv(const SpectrumReport& r) {
    const int digits = decimal_digits(r.precision_bits);
    std::string out = "value_kind,value,witness_subtree_id,multiplicity_if_known\n";
    for (const auto& e : r.eigenvalues) {
        out += std::string(to_string(e.kind)) + "," + detail::csv_field(detail::eigenvalue_value(e, digits)) + "," +
               detail::csv_field(e.witness) + "," + (e.multiplicity ? to_string(*e.multiplicity) : "") + "\n";
    }
    return out;
}

inline std::string to_text(const SpectrumReport& r) {
    const int digits = decimal_digits(r.precision_bits);
    std::ostringstream os;
    os << "Laplacian eigenvalues of a " << r.k << "-uniform hypertree with " << r.m << " edges ("
       << r.eigenvalues.size() << " distinct)\n";
    for (const auto& e : r.eigenvalues) {
        os << "  " << to_string(e.kind) << "  " << detail::eigenvalue_value(e, digits);
        if (e.kind == EigenvalueEntry::Kind::interval) {
            os << " ~ " << to_decimal((e.lower + e.upper) / 2, 12);
        }
        os << "  [" << e.witness << "]";
        if (e.multiplicity) os << "  multiplicity " << to_string(*e.multiplicity);
        os << "\n";
    }
    return os.str();
}

inline Document to_json(const ZeroMultReport& r, bool verified) {
    Document d{{"k", r.k}, {"m", r.m}, {"closed_form", to_string(r.closed_form)}};
    if (verified) {
        d["phi"] = polynomial_json(r.phi);
        d["phi_at_zero"] = to_string(r.phi_at_zero);
        d["phi_derivative_at_zero"] = to_string(r.phi_derivative_at_zero);
        Document proper = Document::array();
        for (const auto& [id, value] : r.proper_subtree_values) {
            proper.push_back(Document{{"subtree", id}, {"phi_at_zero", to_string(value)}});
        }
        d["proper_subtrees"] = std::move(proper);
    }
    if (r.oracle_multiplicity) d["oracle_multiplicity"] = *r.oracle_multiplicity;
    Document checks = Document::array();
    for (const auto& c : r.checks) checks.push_back(Document{{"name", c.name}, {"passed", c.passed}});
    d["checks"] = std::move(checks);
    d["passed"] = r.passed();
    return d;
}

inline std::string to_text(const ZeroMultReport& r, bool verified) {
    std::ostringstream os;
    os << "zero eigenvalue multiplicity k^(m(k-2)) = " << r.k << "^" << r.m * (r.k - 2) << " = "
       << to_string(r.closed_form) << "\n";
    if (verified) {
        os << "phi_T(T) = " << r.phi << "\n";
        os << "phi_T(T)(0) = " << to_string(r.phi_at_zero) << ", phi_T'(T)(0) = " << to_string(r.phi_derivative_at_zero)
           << "\n";
        for (const auto& [id, value] : r.proper_subtree_values) {
            os << "  phi_T(" << id << ")(0) = " << to_string(value) << "\n";
        }
    }
    if (r.oracle_multiplicity) os << "oracle multiplicity = " << *r.oracle_multiplicity << "\n";
    for (const auto& c : r.checks) os << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
    return os.str();
}

inline std::string to_csv(const ZeroMultReport& r) {
    std::string out = "field,value\nclosed_form," + to_string(r.closed_form) + "\n";
    if (r.oracle_multiplicity) out += "oracle_multiplicity," + std::to_string(*r.oracle_multiplicity) + "\n";
    for (const auto& c : r.checks) out += c.name + "," + (c.passed ? "pass" : "fail") + "\n";
    return out;
}

inline Document to_json(const std::vector<CheckTally>& tallies) {
    Document out = Document::array();
    for (const auto& t : tallies) {
        Document d{{"name", t.name}, {"cases", t.cases}, {"passed", t.passed()}};
        d["failures"] = t.failures;
        out.push_back(std::move(d));
    }
    return out;
}

inline std::string to_text(const std::vector<CheckTally>& tallies) {
    std::ostringstream os;
    for (const auto& t : tallies) {
        os << (t.passed() ? "PASS " : "FAIL ") << t.name << " (" << t.cases << " cases";
        if (!t.passed()) os << ", " << t.failures.size() << " failed";
        os << ")\n";
        for (const auto& f : t.failures) os << "  " << f << "\n";
    }
    return os.str();
}

inline std::string to_csv(const std::vector<CheckTally>& tallies) {
    std::string out = "check,cases,failures\n";
    for (const auto& t : tallies) out += t.name + "," + std::to_string(t.cases) + "," + std::to_string(t.failures.size()) + "\n";
    return out;
}

inline std::string polynomial_csv(const Polynomial& p) {
    std::string out = "degree,coefficient\n";
    const auto& c = p.coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) out += std::to_string(i) + "," + to_string(c[i]) + "\n";
    return out;
}

}  // namespace hts
