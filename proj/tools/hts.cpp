#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hts/battery.hpp"
#include "hts/cache.hpp"
#include "hts/generators.hpp"
#include "hts/hypergraph_io.hpp"
#include "hts/oracle.hpp"
#include "hts/report_io.hpp"
#include "hts/spectra.hpp"

namespace {

using namespace hts;

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string in;
    std::string kind;
    int k = 3;
    int m = 1;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string out;
    std::string cache_dir;
    bool no_cache = false;
    long long budget = 120;
    int precision = 128;
    int jobs = default_jobs();

    // command flags
    bool verify = false;
    bool oracle = false;
    bool compare_closed_form = false;
    bool subtrees = false;
    std::string engine = "recursive";
    std::string suite = "all";
    std::vector<int> ks;
    int max_m = 5;
    int randoms = 10;
    int pairs = 100;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write " + cfg.out);
    out << text;
}

UniformHypergraph load_input(const RunConfig& cfg) {
    const bool from_file = !cfg.in.empty();
    const bool from_kind = !cfg.kind.empty();
    if (from_file == from_kind) throw UsageError("give exactly one input source: --in FILE or --kind KIND");
    if (from_file) {
        try {
            return parse_hypergraph_document(read_text(cfg.in));
        } catch (const ValidationError& e) {
            throw ValidationError(cfg.in + ": " + e.what());
        }
    }
    const auto kind = parse_tree_kind(cfg.kind);
    if (!kind) throw UsageError("unknown --kind '" + cfg.kind + "' (one_edge, hyperstar, hyperpath, random)");
    return generate(*kind, cfg.k, cfg.m, cfg.seed);
}

void require_format(const RunConfig& cfg) {
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text") {
        throw UsageError("--format must be json, csv or text");
    }
}

std::optional<OracleCache> open_cache(const RunConfig& cfg) {
    if (cfg.no_cache) return std::nullopt;
    return OracleCache(OracleCache::resolve_dir(cfg.cache_dir));
}

int run_gen(const RunConfig& cfg) {
    if (!cfg.in.empty()) throw UsageError("gen takes --kind, not --in");
    if (cfg.kind.empty()) throw UsageError("gen needs --kind");
    write_output(cfg, to_document(load_input(cfg)));
    return kOk;
}

int run_matchpoly(const RunConfig& cfg) {
    const auto h = load_input(cfg);
    if (cfg.engine != "recursive" && cfg.engine != "direct") throw UsageError("--engine must be recursive or direct");
    std::vector<SubHypergraph> subs;
    if (cfg.subtrees) {
        require_hypertree(h, "matchpoly --subtrees");
        subs = enumerate_sub_hypertrees(h);
    } else {
        subs.push_back(SubHypergraph::whole(h));
    }
    MatchingPolyEngine engine(h);
    const auto phi = parallel_map(subs.size(), cfg.jobs, [&](std::size_t i) {
        return cfg.engine == "direct" ? laplacian_matching_poly(h, subs[i]) : engine(subs[i]);
    });
    auto id_of = [&](std::size_t i) { return subs[i] == SubHypergraph::whole(h) ? std::string("H") : subs[i].id(); };

    if (cfg.format == "json") {
        Document list = Document::array();
        for (std::size_t i = 0; i < subs.size(); ++i) {
            list.push_back(Document{{"subgraph", id_of(i)}, {"phi", polynomial_json(phi[i])}});
        }
        write_output(cfg, emit(Document{{"k", h.k()}, {"n", h.n()}, {"m", h.edge_count()}, {"polynomials", list}}));
    } else if (cfg.format == "csv") {
        std::string out = "subgraph,degree,coefficient\n";
        for (std::size_t i = 0; i < subs.size(); ++i) {
            const auto& c = phi[i].coefficients();
            for (std::size_t j = 0; j < c.size(); ++j) {
                out += id_of(i) + "," + std::to_string(j) + "," + to_string(c[j]) + "\n";
            }
        }
        write_output(cfg, out);
    } else {
        std::string out;
        for (std::size_t i = 0; i < subs.size(); ++i) {
            out += "phi_H(" + id_of(i) + ") = " + to_display_string(phi[i]) + "\n";
        }
        write_output(cfg, out);
    }
    return kOk;
}

int run_spectrum(const RunConfig& cfg) {
    const auto t = load_input(cfg);
    const auto report = laplacian_eigenvalue_set(t, cfg.precision, cfg.jobs);
    if (cfg.format == "json") {
        write_output(cfg, emit(to_json(report)));
    } else if (cfg.format == "csv") {
        write_output(cfg, to_csv(report));
    } else {
        write_output(cfg, to_text(report));
    }
    return kOk;
}

int run_zeromult(const RunConfig& cfg) {
    const auto t = load_input(cfg);
    ZeroMultReport report;
    if (cfg.verify) {
        report = verify_simple_zero(t, cfg.jobs);
    } else {
        report.k = t.k();
        report.m = t.edge_count();
        report.closed_form = zero_multiplicity_closed_form(t);
    }
    if (cfg.oracle) {
        const auto cache = open_cache(cfg);
        const auto r = cached_char_poly(cache ? &*cache : nullptr, t, oracle::OracleBudget{cfg.budget}, cfg.jobs);
        report.set_oracle_multiplicity(root_multiplicity_at(r.poly, 0));
    }
    if (cfg.format == "json") {
        write_output(cfg, emit(to_json(report, cfg.verify)));
    } else if (cfg.format == "csv") {
        write_output(cfg, to_csv(report));
    } else {
        write_output(cfg, to_text(report, cfg.verify));
    }
    return report.passed() ? kOk : kVerificationFailure;
}

int run_charpoly(const RunConfig& cfg) {
    const auto h = load_input(cfg);
    const auto cache = open_cache(cfg);
    const auto r = cached_char_poly(cache ? &*cache : nullptr, h, oracle::OracleBudget{cfg.budget}, cfg.jobs);

    std::optional<std::string> comparison;
    bool match = true;
    if (cfg.compare_closed_form) {
        if (!is_hypertree(h) || h.edge_count() < 1) {
            throw UsageError("--compare-closed-form needs a hypertree with at least one edge");
        }
        if (h.edge_count() == 1) {
            comparison = "one_edge_polynomial";
            match = r.poly == oracle::one_edge_closed_form(h.k());
        } else {
            comparison = "zero_multiplicity";
            match = BigInt(std::to_string(root_multiplicity_at(r.poly, 0))) == zero_multiplicity_closed_form(h);
        }
    }
    const long long zero_mult = root_multiplicity_at(r.poly, 0);

    if (cfg.format == "json") {
        Document skipped = Document::array();
        for (const auto& s : r.skipped) skipped.push_back(to_string(s));
        Document d{{"k", h.k()},
                   {"n", h.n()},
                   {"degree", r.degree},
                   {"normalization", to_string(r.normalization)},
                   {"samples", r.samples},
                   {"skipped", skipped},
                   {"zero_multiplicity", zero_mult},
                   {"polynomial", polynomial_json(r.poly)}};
        if (comparison) {
            d["comparison"] = *comparison;
            d["match"] = match;
        }
        write_output(cfg, emit(d));
    } else if (cfg.format == "csv") {
        write_output(cfg, polynomial_csv(r.poly));
    } else {
        std::string out = "degree " + std::to_string(r.degree) + "\nphi(L) = " + to_display_string(r.poly) +
                          "\nzero multiplicity " + std::to_string(zero_mult) + "\n";
        if (comparison) out += std::string(match ? "MATCH" : "MISMATCH") + " (" + *comparison + ")\n";
        write_output(cfg, out);
    }
    return match ? kOk : kVerificationFailure;
}

int run_verify(const RunConfig& cfg) {
    if (!cfg.in.empty() || !cfg.kind.empty()) throw UsageError("verify builds its own battery; drop --in/--kind");
    if (cfg.suite != "all" && cfg.suite != "matchpoly" && cfg.suite != "spectra") {
        throw UsageError("--suite must be all, matchpoly or spectra");
    }
    std::vector<int> ks = cfg.ks.empty() ? std::vector<int>{2, 3, 4, 5} : cfg.ks;
    for (int k : ks) {
        if (k < 2) throw UsageError("--k values must be at least 2");
    }
    if (cfg.max_m < 1) throw UsageError("--max-m must be at least 1");

    std::vector<CheckTally> tallies;
    std::size_t trees = 0, pairs = 0;
    if (cfg.suite != "spectra") {
        const auto battery = host_sub_pairs(cfg.pairs, ks, cfg.max_m, cfg.seed);
        pairs = battery.size();
        for (auto& t : matchpoly_suite(battery, cfg.seed, cfg.jobs)) tallies.push_back(std::move(t));
    }
    if (cfg.suite != "matchpoly") {
        const auto battery = tree_battery(ks, cfg.max_m, cfg.randoms, cfg.seed);
        trees = battery.size();
        for (auto& t : spectra_suite(battery, cfg.jobs)) tallies.push_back(std::move(t));
    }
    const bool ok = std::all_of(tallies.begin(), tallies.end(), [](const CheckTally& t) { return t.passed(); });

    if (cfg.format == "json") {
        Document d{{"suite", cfg.suite}, {"k", ks}, {"max_m", cfg.max_m}, {"seed", cfg.seed},
                   {"trees", trees},     {"pairs", pairs}, {"checks", to_json(tallies)}, {"passed", ok}};
        write_output(cfg, emit(d));
    } else if (cfg.format == "csv") {
        write_output(cfg, to_csv(tallies));
    } else {
        std::string head = "suite " + cfg.suite + ": " + std::to_string(trees) + " hypertrees, " +
                           std::to_string(pairs) + " (host, sub) pairs\n";
        write_output(cfg, head + to_text(tallies) + (ok ? "all checks passed\n" : "verification FAILED\n"));
    }
    return ok ? kOk : kVerificationFailure;
}

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--in", cfg.in, "Hypergraph document");
    cmd->add_option("--kind", cfg.kind, "Generator: one_edge, hyperstar, hyperpath, random");
    cmd->add_option("--k", cfg.k, "Edge size for the generator")->check(CLI::Range(2, 64));
    cmd->add_option("--m", cfg.m, "Edge count for the generator")->check(CLI::Range(1, 1000));
    cmd->add_option("--seed", cfg.seed, "Seed for the random generator");
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", cfg.out, "Write output here instead of stdout");
    cmd->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1, 1024));
}

void add_oracle_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--budget", cfg.budget, "Largest characteristic degree the oracle attempts")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--cache-dir", cfg.cache_dir, "Oracle cache directory (default: HTS_CACHE_DIR or ~/.cache/hts)");
    cmd->add_flag("--no-cache", cfg.no_cache, "Bypass the oracle cache");
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Laplacian matching polynomials and spectra of uniform hypertrees"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    auto* gen = app.add_subcommand("gen", "Write a generated hypertree as a hypergraph document");
    add_input_options(gen, cfg);
    gen->add_option("--out", cfg.out, "Output path");

    auto* matchpoly = app.add_subcommand("matchpoly", "Laplacian matching polynomial phi_H(H)");
    add_input_options(matchpoly, cfg);
    add_common_options(matchpoly, cfg);
    matchpoly->add_flag("--subtrees", cfg.subtrees, "One polynomial per sub-hypertree");
    matchpoly->add_option("--engine", cfg.engine, "recursive or direct")->check(CLI::IsMember({"recursive", "direct"}));

    auto* spectrum = app.add_subcommand("spectrum", "Distinct Laplacian eigenvalues of a hypertree (k >= 3)");
    add_input_options(spectrum, cfg);
    add_common_options(spectrum, cfg);
    spectrum->add_option("--precision", cfg.precision, "Bits for complex approximations")->check(CLI::Range(64, 100000));

    auto* zeromult = app.add_subcommand("zeromult", "Multiplicity of the zero Laplacian eigenvalue");
    add_input_options(zeromult, cfg);
    add_common_options(zeromult, cfg);
    add_oracle_options(zeromult, cfg);
    zeromult->add_flag("--verify", cfg.verify, "Check that zero is a simple root of phi_T(T)");
    zeromult->add_flag("--oracle", cfg.oracle, "Cross-check against the resultant oracle");

    auto* charpoly = app.add_subcommand("charpoly", "Characteristic polynomial by the resultant oracle");
    add_input_options(charpoly, cfg);
    add_common_options(charpoly, cfg);
    add_oracle_options(charpoly, cfg);
    charpoly->add_flag("--compare-closed-form", cfg.compare_closed_form, "Compare with the known closed form");

    auto* verify = app.add_subcommand("verify", "Run the invariant battery");
    add_common_options(verify, cfg);
    verify->add_option("--suite", cfg.suite, "all, matchpoly or spectra")->check(CLI::IsMember({"all", "matchpoly", "spectra"}));
    verify->add_option("--k", cfg.ks, "Edge sizes (default 2 3 4 5)")->check(CLI::Range(2, 64));
    verify->add_option("--max-m", cfg.max_m, "Largest edge count")->check(CLI::Range(1, 64));
    verify->add_option("--randoms", cfg.randoms, "Random hypertrees in the battery")->check(CLI::NonNegativeNumber);
    verify->add_option("--pairs", cfg.pairs, "Random (host, sub) pairs")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", cfg.seed, "Battery seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        require_format(cfg);
        if (*gen) return run_gen(cfg);
        if (*matchpoly) return run_matchpoly(cfg);
        if (*spectrum) return run_spectrum(cfg);
        if (*zeromult) return run_zeromult(cfg);
        if (*charpoly) return run_charpoly(cfg);
        if (*verify) return run_verify(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
        return kUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << " (raise --budget to attempt it)\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerificationFailure;
    }
    return kUsage;
}
