#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

#include "oracle.hpp"
#include "report_io.hpp"

namespace hts {

inline constexpr const char* kOracleEngineVersion = "macaulay-1";

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex16(std::uint64_t x) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, x >>= 4) out[static_cast<std::size_t>(i)] = digits[x & 15u];
    return out;
}

inline std::optional<std::string> read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

// Disk cache of oracle characteristic polynomials. One file per key; the file name
// is a hash and the full key is stored inside, so a collision reads as a miss.
class OracleCache {
public:
    explicit OracleCache(std::filesystem::path dir, std::string engine_version = kOracleEngineVersion)
        : dir_(std::move(dir)), version_(std::move(engine_version)) {}

    // --cache-dir if given, else HTS_CACHE_DIR, else $HOME/.cache/hts (./.hts-cache without HOME).
    static std::filesystem::path resolve_dir(const std::string& flag) {
        if (!flag.empty()) return flag;
        if (const char* env = std::getenv("HTS_CACHE_DIR"); env && *env) return env;
        if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "hts";
        return ".hts-cache";
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::string key(const UniformHypergraph& h) const { return h.canonical_key() + "|" + version_; }

    std::filesystem::path entry_path(const UniformHypergraph& h) const {
        return dir_ / ("charpoly-" + detail::hex16(detail::fnv1a(key(h))) + ".json");
    }

    std::optional<oracle::CharPolyResult> lookup(const UniformHypergraph& h) const {
        const auto path = entry_path(h);
        const auto text = detail::read_file(path);
        if (!text) return std::nullopt;
        try {
            const auto doc = Document::parse(*text);
            if (doc.at("key").get<std::string>() != key(h)) return std::nullopt;
            oracle::CharPolyResult r;
            r.poly = polynomial_from_json(doc.at("polynomial"));
            r.normalization = parse_rational(doc.at("normalization").get<std::string>());
            r.degree = doc.at("degree").get<long long>();
            for (const auto& s : doc.at("skipped")) r.skipped.push_back(parse_rational(s.get<std::string>()));
            r.samples = doc.at("samples").get<std::size_t>();
            if (r.poly.degree() != r.degree || r.degree != oracle::characteristic_degree(h)) {
                throw ValidationError("degree mismatch");
            }
            return r;
        } catch (const std::exception&) {
            quarantine(path);
            return std::nullopt;
        }
    }

    // Atomic: the entry is written under a unique temporary name and renamed into place.
    void store(const UniformHypergraph& h, const oracle::CharPolyResult& r) const {
        std::filesystem::create_directories(dir_);
        Document skipped = Document::array();
        for (const auto& s : r.skipped) skipped.push_back(to_string(s));
        const Document doc{{"key", key(h)},
                           {"engine_version", version_},
                           {"degree", r.degree},
                           {"normalization", to_string(r.normalization)},
                           {"samples", r.samples},
                           {"skipped", std::move(skipped)},
                           {"polynomial", polynomial_json(r.poly)}};
        const auto final_path = entry_path(h);
        auto tmp = final_path;
        tmp += ".tmp-" + unique_suffix();
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
            out << emit(doc);
            out.flush();
            if (!out) throw std::runtime_error("cache: short write to " + tmp.string());
        }
        std::filesystem::rename(tmp, final_path);
    }

private:
    static std::string unique_suffix() {
        static std::atomic<unsigned long> counter{0};
        std::ostringstream ss;
        ss << ::getpid() << "-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-" << counter++;
        return ss.str();
    }

    static void quarantine(const std::filesystem::path& p) {
        std::error_code ec;
        auto target = p;
        target += ".corrupt";
        std::filesystem::rename(p, target, ec);
    }

    std::filesystem::path dir_;
    std::string version_;
};

// Cached char_poly; `hit` reports whether the cache answered.
inline oracle::CharPolyResult cached_char_poly(const OracleCache* cache, const UniformHypergraph& h,
                                               const oracle::OracleBudget& budget, int jobs, bool* hit = nullptr) {
    const long long degree = oracle::characteristic_degree(h);
    if (degree > budget.max_degree) throw BudgetExceeded(degree, budget.max_degree);
    if (cache) {
        if (auto r = cache->lookup(h)) {
            if (hit) *hit = true;
            return *r;
        }
    }
    if (hit) *hit = false;
    auto r = oracle::char_poly(h, budget, jobs);
    if (cache) cache->store(h, r);
    return r;
}

}  // namespace hts
