#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "zsq/search.hpp"
#include "zsq/subsums.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode : int {
    kExitPass = 0,
    kExitCounterexample = 1,
    kExitUsage = 2,
    kExitInfeasible = 3,
    kExitInternal = 4,
};

struct CommonOpts {
    std::string format = "text";
    std::string cache_dir;
    bool no_cache = false;
    int threads = 1;
    std::uint64_t seed = 0;
    int max_exhaustive_n = 5;
    int max_aut_n = zsq::kDefaultAutGuard;
    int max_mult_mn = 4;
    int max_fixedprop_n = 4;

    zsq::SearchLimits limits() const {
        zsq::SearchLimits l;
        l.exhaustive_max_n = max_exhaustive_n;
        l.aut_max_n = max_aut_n;
        l.mult_exhaustive_max_mn = max_mult_mn;
        l.fixedprop_max_n = max_fixedprop_n;
        l.threads = threads;
        return l;
    }

    json limits_key() const {
        return json{{"exhaustive_max_n", max_exhaustive_n},
                    {"aut_max_n", max_aut_n},
                    {"mult_exhaustive_max_mn", max_mult_mn},
                    {"fixedprop_max_n", max_fixedprop_n}};
    }
};

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

fs::path resolve_cache_dir(const CommonOpts& opts) {
    if (!opts.cache_dir.empty()) return fs::path(opts.cache_dir);
    if (const char* env = std::getenv("ZSQ_CACHE_DIR")) return fs::path(env);
    if (const char* home = std::getenv("HOME")) return fs::path(home) / ".cache" / "zsq";
    return fs::path(".zsq-cache");
}

class Cache {
public:
    Cache(const CommonOpts& opts) : dir_(resolve_cache_dir(opts)), enabled_(!opts.no_cache) {}

    std::optional<json> lookup(const json& key) const {
        if (!enabled_) return std::nullopt;
        fs::path file = path_for(key);
        std::error_code ec;
        if (!fs::exists(file, ec)) return std::nullopt;
        std::ifstream in(file);
        if (!in) return std::nullopt;
        try {
            json entry = json::parse(in);
            if (entry.at("schema_version") != zsq::kReportSchemaVersion) return std::nullopt;
            if (entry.at("key") != key) return std::nullopt;
            return entry.at("report");
        } catch (const std::exception& e) {
            std::cerr << "warning: ignoring corrupt cache entry " << file << ": " << e.what() << "\n";
            return std::nullopt;
        }
    }

    void store(const json& key, const json& report) const {
        if (!enabled_) return;
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            std::cerr << "warning: cannot create cache directory " << dir_ << "\n";
            return;
        }
        json entry{{"schema_version", zsq::kReportSchemaVersion}, {"key", key}, {"report", report}};
        fs::path file = path_for(key);
        fs::path tmp = file;
        tmp += ".tmp";
        {
            std::ofstream out(tmp);
            if (!out) {
                std::cerr << "warning: cannot write cache entry " << tmp << "\n";
                return;
            }
            out << entry.dump(2) << "\n";
        }
        fs::rename(tmp, file, ec);
    }

private:
    fs::path path_for(const json& key) const {
        std::string task = key.at("task").get<std::string>();
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a(key.dump())));
        return dir_ / (task + "-" + buf + ".json");
    }

    fs::path dir_;
    bool enabled_;
};

void render_value(std::ostream& os, const json& v) {
    if (v.is_string()) {
        os << v.get<std::string>();
    } else {
        os << v.dump();
    }
}

void render_text(std::ostream& os, const json& report) {
    os << "task: " << report.at("task").get<std::string>() << "\n";
    os << "params:";
    for (const auto& [k, v] : report.at("params").items()) {
        os << " " << k << "=";
        render_value(os, v);
    }
    os << "\n";
    for (const auto& [k, v] : report.at("result").items()) {
        os << k << ": ";
        render_value(os, v);
        os << "\n";
    }
    const json& witnesses = report.at("witnesses");
    if (!witnesses.empty()) {
        os << "witnesses (" << witnesses.size() << "):\n";
        for (const auto& w : witnesses) os << "  " << w.get<std::string>() << "\n";
    }
    const json& cex = report.at("counterexamples");
    if (!cex.empty()) {
        os << "counterexamples (" << cex.size() << "):\n";
        for (const auto& w : cex) os << "  " << w.get<std::string>() << "\n";
    }
    for (const auto& note : report.at("notes")) {
        os << "note: " << note.get<std::string>() << "\n";
    }
    os << "counters: nodes=" << report.at("counters").at("nodes")
       << " pruned=" << report.at("counters").at("pruned") << "\n";
    os << "seed: " << report.at("seed") << "\n";
    os << "verdict: " << report.at("verdict").get<std::string>() << "\n";
}

int emit(const CommonOpts& opts, const json& report) {
    if (opts.format == "json") {
        std::cout << report.dump(2) << "\n";
    } else {
        render_text(std::cout, report);
    }
    return report.at("verdict") == "pass" ? kExitPass : kExitCounterexample;
}

int run_cached(const CommonOpts& opts, const std::string& task, const json& params,
               const std::function<zsq::SearchReport()>& compute) {
    Cache cache(opts);
    json key{{"schema_version", zsq::kReportSchemaVersion},
             {"task", task},
             {"params", params},
             {"limits", opts.limits_key()},
             {"seed", opts.seed}};
    if (auto hit = cache.lookup(key)) return emit(opts, *hit);
    zsq::SearchReport rep = compute();
    rep.seed = opts.seed;
    json j = rep.to_json();
    cache.store(key, j);
    return emit(opts, j);
}

std::string load_sequence_text(const std::string& inline_text, const std::string& file) {
    if (!inline_text.empty() && !file.empty()) {
        throw zsq::ArgumentError("give the sequence inline or via file, not both");
    }
    if (!inline_text.empty()) return inline_text;
    if (file.empty()) throw zsq::ArgumentError("a sequence is required (--seq or --file)");
    std::ifstream in(file);
    if (!in) throw zsq::ArgumentError("cannot read sequence file " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        out.push_back(std::stoi(part));
    }
    return out;
}

zsq::Basis parse_basis(const zsq::GroupCtx& ctx, const std::string& text) {
    auto split = text.find(')');
    if (split == std::string::npos) throw zsq::ArgumentError("basis must be two elements: \"(a,b) (c,d)\"");
    return {zsq::parse_element(ctx, text.substr(0, split + 1)),
            zsq::parse_element(ctx, text.substr(split + 1))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-sum invariants, extremal-structure verification and block decompositions "
                 "over C_n + C_n"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cache-dir", opts.cache_dir, "result cache directory (env ZSQ_CACHE_DIR)");
    app.add_flag("--no-cache", opts.no_cache, "bypass the result cache");
    app.add_option("--threads", opts.threads, "worker pool width")->check(CLI::PositiveNumber);
    app.add_option("--seed", opts.seed, "random seed (echoed in reports)");
    app.add_option("--max-exhaustive-n", opts.max_exhaustive_n, "guard for exhaustive searches");
    app.add_option("--max-aut-n", opts.max_aut_n, "guard for automorphism enumeration");
    app.add_option("--max-mult-mn", opts.max_mult_mn, "guard for the exhaustive multiplicative tier");
    app.add_option("--max-fixedprop-n", opts.max_fixedprop_n, "guard for the dichotomy search");

    // invariant
    auto* inv = app.add_subcommand("invariant", "compute D, eta or s_le by exhaustive search");
    std::string inv_kind;
    int inv_n = 0, inv_l = -1;
    inv->add_option("--kind", inv_kind, "davenport | eta | s-le")
        ->required()
        ->check(CLI::IsMember({"davenport", "eta", "s-le"}));
    inv->add_option("--n", inv_n, "modulus")->required();
    inv->add_option("--l", inv_l, "length bound for s-le");

    // enumerate
    auto* enu = app.add_subcommand("enumerate", "enumerate extremal orbit representatives");
    int enu_n = 0, enu_k = 0;
    enu->add_option("--n", enu_n)->required();
    enu->add_option("--k", enu_k)->required();

    // verify-conjecture
    auto* vc = app.add_subcommand("verify-conjecture", "match all extremal orbits against the conjectured forms");
    int vc_n = 0, vc_k = 0;
    vc->add_option("--n", vc_n)->required();
    vc->add_option("--k", vc_k)->required();

    // verify-mult
    auto* vm = app.add_subcommand("verify-mult", "construction and exhaustive tiers of the multiplicative reduction");
    int vm_m = 0, vm_n = 0, vm_km = 0, vm_kn = 0;
    vm->add_option("--m", vm_m)->required();
    vm->add_option("--n", vm_n)->required();
    vm->add_option("--km", vm_km)->required();
    vm->add_option("--kn", vm_kn)->required();

    // verify-hamidoune
    auto* vh = app.add_subcommand("verify-hamidoune", "randomized exact check of the subsum lower bound");
    int vh_n = 0, vh_trials = 10000;
    vh->add_option("--n", vh_n)->required();
    vh->add_option("--trials", vh_trials, "filtered trials to evaluate");

    // verify-fixedprop
    auto* vf = app.add_subcommand("verify-fixedprop", "exhaustive dichotomy check for zero-sum S with |S| = sn-1");
    int vf_n = 0, vf_s = 3;
    vf->add_option("--n", vf_n)->required();
    vf->add_option("--s", vf_s)->required();

    // decompose
    auto* dec = app.add_subcommand("decompose", "block-decompose a sequence over C_mn + C_mn");
    int dec_m = 0, dec_n = 0, dec_km = 0, dec_kn = 0;
    std::string dec_seq, dec_file;
    dec->add_option("--m", dec_m)->required();
    dec->add_option("--n", dec_n)->required();
    dec->add_option("--km", dec_km)->required();
    dec->add_option("--kn", dec_kn)->required();
    dec->add_option("--seq", dec_seq, "sequence inline");
    dec->add_option("--file", dec_file, "sequence file");

    // construct
    auto* con = app.add_subcommand("construct", "synthesize a conjectured extremal form");
    int con_n = 0, con_k = 0, con_item = 0, con_x = 1;
    std::string con_xs, con_basis, con_removed;
    con->add_option("--n", con_n)->required();
    con->add_option("--k", con_k)->required();
    con->add_option("--item", con_item, "conjecture item (defaults from k)");
    con->add_option("--x", con_x, "item 4 coefficient");
    con->add_option("--xs", con_xs, "item 1/2 coefficients, comma separated");
    con->add_option("--basis", con_basis, "basis \"(a,b) (c,d)\" (default standard)");
    con->add_option("--removed", con_removed, "item 1: removed element");

    // classify
    auto* cls = app.add_subcommand("classify", "zero-sum classification and structural properties");
    int cls_n = 0, cls_k = -1;
    std::string cls_seq, cls_file;
    cls->add_option("--n", cls_n)->required();
    cls->add_option("--seq", cls_seq, "sequence inline");
    cls->add_option("--file", cls_file, "sequence file");
    cls->add_option("--k", cls_k, "also match against the conjectured k-forms");

    // lemmas
    auto* lem = app.add_subcommand("lemmas", "verify both transfer directions between levels k and k+1");
    int lem_n = 0, lem_k = 0;
    lem->add_option("--n", lem_n)->required();
    lem->add_option("--k", lem_k)->required();

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    zsq::SearchLimits limits = opts.limits();
    try {
        if (*inv) {
            if (inv_kind == "s-le" && inv_l < 0) {
                std::cerr << "invariant --kind s-le requires --l\n";
                return kExitUsage;
            }
            json params{{"kind", inv_kind}, {"n", inv_n}};
            if (inv_kind == "s-le") params["l"] = inv_l;
            return run_cached(opts, "invariant", params, [&]() {
                if (inv_kind == "davenport") return zsq::compute_davenport_report(inv_n, limits);
                if (inv_kind == "eta") return zsq::compute_s_le_report(inv_n, inv_n, limits);
                return zsq::compute_s_le_report(inv_n, inv_l, limits);
            });
        }
        if (*enu) {
            return run_cached(opts, "enumerate", json{{"n", enu_n}, {"k", enu_k}},
                              [&]() { return zsq::enumerate_extremal_report(enu_n, enu_k, limits); });
        }
        if (*vc) {
            return run_cached(opts, "verify-conjecture", json{{"n", vc_n}, {"k", vc_k}},
                              [&]() { return zsq::verify_conjecture(vc_n, vc_k, limits); });
        }
        if (*vm) {
            return run_cached(
                opts, "verify-mult",
                json{{"m", vm_m}, {"n", vm_n}, {"km", vm_km}, {"kn", vm_kn}},
                [&]() { return zsq::verify_multiplicative(vm_m, vm_n, vm_km, vm_kn, limits); });
        }
        if (*vh) {
            return run_cached(opts, "verify-hamidoune", json{{"n", vh_n}, {"trials", vh_trials}},
                              [&]() { return zsq::verify_hamidoune(vh_n, vh_trials, opts.seed, limits); });
        }
        if (*vf) {
            return run_cached(opts, "verify-fixedprop", json{{"n", vf_n}, {"s", vf_s}},
                              [&]() { return zsq::verify_fixedprop(vf_n, vf_s, limits); });
        }
        if (*lem) {
            return run_cached(opts, "lemmas", json{{"n", lem_n}, {"k", lem_k}},
                              [&]() { return zsq::round_trip_lemmas(lem_n, lem_k, limits); });
        }
        if (*dec) {
            zsq::GroupCtx ctx(dec_m * dec_n);
            zsq::Sequence S = zsq::Sequence::parse(ctx, load_sequence_text(dec_seq, dec_file));
            zsq::SearchReport rep;
            rep.task = "decompose";
            rep.params = {{"m", dec_m}, {"n", dec_n}, {"k_m", dec_km}, {"k_n", dec_kn}};
            rep.seed = opts.seed;
            zsq::DecomposeResult result = zsq::block_decompose(S, dec_m, dec_n, dec_km, dec_kn);
            if (!result.ok()) {
                rep.pass = false;
                json extracted = json::array();
                for (const auto& w : result.failure->extracted) extracted.push_back(w.str());
                rep.result["failure"] = {
                    {"reason", result.failure->reason},
                    {"extracted", extracted},
                    {"remainder",
                     result.failure->remainder ? json(result.failure->remainder->str()) : json(nullptr)}};
                rep.counterexamples.push_back(S.str());
            } else {
                const zsq::BlockDecomposition& d = *result.value;
                zsq::DecompositionReport vr = zsq::verify_decomposition(d);
                rep.result["decomposition"] = zsq::to_json(d);
                rep.result["verification"] = zsq::to_json(vr);
                try {
                    rep.result["associated"] = zsq::to_json(zsq::associated_sequence(d));
                } catch (const zsq::Error& e) {
                    rep.result["associated"] = nullptr;
                    rep.notes.push_back(std::string("no associated sequence: ") + e.what());
                }
                rep.pass = vr.all_pass();
                if (!rep.pass) rep.counterexamples.push_back(S.str());
            }
            return emit(opts, rep.to_json());
        }
        if (*con) {
            zsq::GroupCtx ctx(con_n);
            if (con_item == 0) {
                con_item = con_k == 0 ? 1 : con_k == 1 ? 2 : con_k <= con_n - 2 ? 3 : 4;
            }
            zsq::ConjectureParams params;
            if (!con_basis.empty()) params.basis = parse_basis(ctx, con_basis);
            if (!con_xs.empty()) {
                params.xs = parse_int_list(con_xs);
            } else if (con_item <= 2) {
                params.xs.assign(static_cast<std::size_t>(con_n), 0);
                params.xs[0] = 1;
                std::sort(params.xs.begin(), params.xs.end());
            }
            params.x = con_x;
            if (!con_removed.empty()) params.removed = zsq::parse_element(ctx, con_removed);
            zsq::Sequence S = zsq::construct_conjectured(ctx, con_k, con_item, params);
            if (opts.format == "json") {
                zsq::SearchReport rep;
                rep.task = "construct";
                rep.params = {{"n", con_n}, {"k", con_k}, {"item", con_item}};
                rep.seed = opts.seed;
                rep.result = {{"sequence", S.str()}};
                return emit(opts, rep.to_json());
            }
            std::cout << S.str() << "\n";
            return kExitPass;
        }
        if (*cls) {
            zsq::GroupCtx ctx(cls_n);
            zsq::Sequence S = zsq::Sequence::parse(ctx, load_sequence_text(cls_seq, cls_file));
            zsq::SearchReport rep;
            rep.task = "classify";
            rep.params = {{"n", cls_n}};
            rep.seed = opts.seed;
            zsq::SequenceStats st = zsq::stats(S);
            rep.result = {{"class", zsq::to_string(zsq::zero_sum_classify(S))},
                          {"length", st.length},
                          {"height", st.height},
                          {"support", st.support},
                          {"sigma", zsq::to_string(st.sigma)}};
            try {
                auto basis = zsq::has_property_A(S, opts.max_aut_n);
                rep.result["property_a"] =
                    basis ? json::array({zsq::to_string(basis->first), zsq::to_string(basis->second)})
                          : json(nullptr);
            } catch (const zsq::FeasibilityError& e) {
                rep.result["property_a"] = nullptr;
                rep.notes.push_back(std::string("property A skipped: ") + e.what());
            }
            zsq::PropertyB pb = zsq::has_property_B(S);
            rep.result["property_b"] = {{"holds", pb.holds}, {"height_exceeds", pb.height_exceeds}};
            rep.result["property_c"] = zsq::has_property_C(S);
            if (cls_k >= 0) {
                rep.result["conjecture"] = zsq::to_json(zsq::match_conjecture(S, cls_k, opts.max_aut_n));
            }
            return emit(opts, rep.to_json());
        }
    } catch (const zsq::FeasibilityError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const zsq::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const zsq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
