#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hypergraph.hpp"
#include "json.hpp"

namespace hts {

// {"k": K, "n": N, "edges": [[...], ...]} with one edge per line; labels 1-based.
inline std::string to_document(const UniformHypergraph& h) {
    std::string out = "{\n  \"k\": " + std::to_string(h.k()) + ",\n  \"n\": " + std::to_string(h.n()) +
                      ",\n  \"edges\": [";
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        out += i ? ",\n    [" : "\n    [";
        out += detail::join(h.edges()[i], ", ");
        out += "]";
    }
    out += h.edges().empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

namespace detail {

inline int line_of(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Source lines of top-level keys and of the elements of the top-level "edges"
// array, found by a lexical scan of an already-valid JSON text.
struct DocumentLines {
    std::map<std::string, int> keys;
    std::vector<int> edges;

    int key(const std::string& name) const {
        auto it = keys.find(name);
        return it == keys.end() ? 1 : it->second;
    }
    int edge(std::size_t i) const { return i < edges.size() ? edges[i] : 1; }
};

inline DocumentLines scan_lines(const std::string& text) {
    DocumentLines lines;
    int line = 1;
    int depth = 0;
    bool in_edges = false;
    std::string last_string;
    bool expecting_key = false;
    bool expecting_edge = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (depth == 2 && in_edges && expecting_edge && !std::isspace(static_cast<unsigned char>(c)) && c != ']') {
            lines.edges.push_back(line);
            expecting_edge = false;
        }
        if (c == '\n') {
            ++line;
        } else if (c == '"') {
            std::string s;
            for (++i; i < text.size() && text[i] != '"'; ++i) {
                if (text[i] == '\\') ++i;
                if (i < text.size()) s += text[i];
            }
            if (depth == 1 && expecting_key) {
                lines.keys.emplace(s, line);
                last_string = s;
                expecting_key = false;
            }
        } else if (c == '{' || c == '[') {
            if (depth == 1 && c == '[') {
                in_edges = last_string == "edges";
                expecting_edge = in_edges;
            }
            ++depth;
            if (depth == 1) expecting_key = true;
        } else if (c == '}' || c == ']') {
            --depth;
            if (depth == 1) in_edges = false;
        } else if (c == ',' && depth == 1) {
            expecting_key = true;
        } else if (c == ',' && depth == 2) {
            expecting_edge = in_edges;
        } else if (c == ':' && depth == 1) {
            expecting_key = false;
        }
    }
    return lines;
}

[[noreturn]] inline void doc_error(int line, const std::string& field, const std::string& what) {
    throw ValidationError("line " + std::to_string(line) + ", field " + field + ": " + what);
}

inline int require_int(const nlohmann::json& doc, const std::string& name, const DocumentLines& lines) {
    if (!doc.contains(name)) doc_error(1, name, "missing");
    const auto& v = doc.at(name);
    if (!v.is_number_integer()) doc_error(lines.key(name), name, "expected an integer");
    const auto x = v.get<long long>();
    if (x < INT32_MIN || x > INT32_MAX) doc_error(lines.key(name), name, "out of range");
    return static_cast<int>(x);
}

}  // namespace detail

// Parses a hypergraph document; ValidationError messages name the line and field.
inline UniformHypergraph parse_hypergraph_document(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("line " + std::to_string(detail::line_of(text, e.byte > 0 ? e.byte - 1 : 0)) +
                              ": malformed document: " + e.what());
    }
    if (!doc.is_object()) throw ValidationError("line 1: document must be an object with fields k, n, edges");
    const auto lines = detail::scan_lines(text);
    for (const auto& [name, value] : doc.items()) {
        if (name != "k" && name != "n" && name != "edges") detail::doc_error(lines.key(name), name, "unknown field");
    }
    const int k = detail::require_int(doc, "k", lines);
    const int n = detail::require_int(doc, "n", lines);
    if (k < 2) detail::doc_error(lines.key("k"), "k", "must be at least 2");
    if (n < 1) detail::doc_error(lines.key("n"), "n", "must be at least 1");
    if (!doc.contains("edges")) detail::doc_error(1, "edges", "missing");
    const auto& es = doc.at("edges");
    if (!es.is_array()) detail::doc_error(lines.key("edges"), "edges", "expected a list of vertex lists");

    std::vector<std::vector<Vertex>> edges;
    std::set<std::vector<Vertex>> seen;
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string field = "edges[" + std::to_string(i) + "]";
        const int line = lines.edge(i);
        if (!es[i].is_array()) detail::doc_error(line, field, "expected a list of vertex labels");
        std::vector<Vertex> e;
        for (const auto& v : es[i]) {
            if (!v.is_number_integer()) detail::doc_error(line, field, "vertex labels must be integers");
            const auto x = v.get<long long>();
            if (x < INT32_MIN || x > INT32_MAX) detail::doc_error(line, field, "vertex label out of range");
            e.push_back(static_cast<Vertex>(x));
        }
        std::vector<Vertex> sorted = e;
        std::sort(sorted.begin(), sorted.end());
        if (auto problem = detail::edge_problem(k, n, sorted)) detail::doc_error(line, field, *problem);
        if (!seen.insert(sorted).second) detail::doc_error(line, field, "duplicate edge");
        edges.push_back(std::move(e));
    }
    return UniformHypergraph::build(k, n, std::move(edges));
}

}  // namespace hts
