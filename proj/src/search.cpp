#include "zsq/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <random>
#include <thread>

#include "zsq/subsums.hpp"

namespace zsq {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct DfsParams {
    GroupCtx ctx;
    int ell;                // prune any prefix with a zero-sum of length <= ell
    int max_len;            // depth cap
    bool collect_deepest;   // keep canonical reps at the deepest level reached
    bool collect_exact;     // keep canonical reps at exactly max_len
    bool require_zero_sum;  // keep only sigma = 0 leaves
    int aut_guard;
};

struct DfsOutcome {
    int max_depth = 0;
    std::vector<Sequence> reps;
    std::uint64_t nodes = 0;
    std::uint64_t pruned = 0;
};

// Depth-first enumeration of multisets in non-decreasing element order with
// an incrementally maintained per-length sum table. Zero-sum pruning happens
// before any canonicity filtering.
class DfsWorker {
public:
    explicit DfsWorker(const DfsParams& p)
        : p_(p),
          plan_(shift_plan_for(p.ctx.modulus())),
          R_(p.ctx.order()),
          elems_(p.ctx.elements()) {
        stack_.assign(static_cast<std::size_t>(p.max_len) + 1,
                      std::vector<SumSet>(static_cast<std::size_t>(p.ell) + 1, SumSet(p.ctx)));
        stack_[0][0].set(0);
        counts_.assign(static_cast<std::size_t>(R_), 0);
    }

    /// Explore the subtree whose first chosen element index is `first`.
    DfsOutcome run(int first) {
        out_ = DfsOutcome{};
        std::fill(counts_.begin(), counts_.end(), 0);
        counts_[static_cast<std::size_t>(first)] = 1;
        if (push(0, first)) {
            dfs(1, first);
        } else {
            ++out_.pruned;
        }
        return std::move(out_);
    }

private:
    bool push(int d, int e) {
        const auto& prev = stack_[static_cast<std::size_t>(d)];
        auto& next = stack_[static_cast<std::size_t>(d) + 1];
        const Element& g = elems_[static_cast<std::size_t>(e)];
        int keep = std::min(d, p_.ell);
        for (int t = 0; t <= keep; ++t) next[static_cast<std::size_t>(t)] = prev[static_cast<std::size_t>(t)];
        int top = std::min(d + 1, p_.ell);
        if (top > keep) next[static_cast<std::size_t>(top)].clear();
        bool zero = false;
        for (int t = top; t >= 1; --t) {
            plan_.or_rotated(next[static_cast<std::size_t>(t)], prev[static_cast<std::size_t>(t) - 1], g);
            if (next[static_cast<std::size_t>(t)].test(0)) zero = true;
        }
        return !zero;
    }

    void dfs(int d, int min_e) {
        ++out_.nodes;
        collect(d);
        if (d == p_.max_len) return;
        for (int e = min_e; e < R_; ++e) {
            ++counts_[static_cast<std::size_t>(e)];
            if (push(d, e)) {
                dfs(d + 1, e);
            } else {
                ++out_.pruned;
            }
            --counts_[static_cast<std::size_t>(e)];
        }
    }

    void collect(int d) {
        if (d > out_.max_depth) {
            out_.max_depth = d;
            if (p_.collect_deepest) out_.reps.clear();
        }
        bool want = (p_.collect_deepest && d == out_.max_depth && d > 0) ||
                    (p_.collect_exact && d == p_.max_len);
        if (!want) return;
        Sequence S(p_.ctx);
        for (int e = 0; e < R_; ++e) {
            if (counts_[static_cast<std::size_t>(e)] > 0) {
                S = S.concat(elems_[static_cast<std::size_t>(e)], counts_[static_cast<std::size_t>(e)]);
            }
        }
        if (p_.require_zero_sum && S.sigma() != p_.ctx.zero()) return;
        if (!is_canonical(S, p_.aut_guard)) return;
        out_.reps.push_back(std::move(S));
    }

    DfsParams p_;
    const ShiftPlan& plan_;
    int R_;
    std::vector<Element> elems_;
    std::vector<std::vector<SumSet>> stack_;
    std::vector<int> counts_;
    DfsOutcome out_;
};

// One task per first element; results merge in element order, so parallel and
// serial runs produce identical reports.
DfsOutcome run_search(const DfsParams& p, int threads) {
    int R = p.ctx.order();
    std::vector<DfsOutcome> slots(static_cast<std::size_t>(R));
    if (threads <= 1) {
        DfsWorker worker(p);
        for (int e = 0; e < R; ++e) slots[static_cast<std::size_t>(e)] = worker.run(e);
    } else {
        std::atomic<int> cursor{0};
        auto work = [&]() {
            DfsWorker worker(p);
            for (;;) {
                int e = cursor.fetch_add(1);
                if (e >= R) break;
                slots[static_cast<std::size_t>(e)] = worker.run(e);
            }
        };
        std::vector<std::thread> pool;
        int width = std::min(threads, R);
        pool.reserve(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    DfsOutcome out;
    out.nodes = 1;  // the empty root
    for (const DfsOutcome& slot : slots) {
        out.nodes += slot.nodes;
        out.pruned += slot.pruned;
        out.max_depth = std::max(out.max_depth, slot.max_depth);
    }
    for (const DfsOutcome& slot : slots) {
        if (p.collect_deepest && slot.max_depth != out.max_depth) continue;
        out.reps.insert(out.reps.end(), slot.reps.begin(), slot.reps.end());
    }
    return out;
}

void check_exhaustive_guard(int n, const SearchLimits& limits) {
    if (n > limits.exhaustive_max_n) {
        throw FeasibilityError("exhaustive search refused: n = " + std::to_string(n) +
                               " exceeds guard " + std::to_string(limits.exhaustive_max_n) +
                               " (raise the guard explicitly to override)");
    }
}

Sequence standard_conjectured(const GroupCtx& ctx, int k) {
    int n = ctx.modulus();
    Sequence S(ctx);
    S = S.concat(Element{1, 0}, n - 1);
    S = S.concat(Element{0, 1}, n - 1);
    if (k > 0) S = S.concat(Element{1, 1}, k);
    return S;
}

std::vector<std::string> rep_strings(const std::vector<Sequence>& reps) {
    std::vector<std::string> out;
    out.reserve(reps.size());
    for (const Sequence& S : reps) out.push_back(S.str());
    return out;
}

struct EnumerationRun {
    std::vector<Sequence> reps;
    DfsOutcome raw;
};

EnumerationRun enumerate_extremal_core(int n, int k, const SearchLimits& limits) {
    if (n < 2) throw ArgumentError("extremal enumeration requires n >= 2");
    if (k < 0 || k > n - 1) throw ArgumentError("k must lie in [0, n-1]");
    check_exhaustive_guard(n, limits);
    DfsParams p{GroupCtx(n), 2 * n - 1 - k, 2 * n - 2 + k, false, true, false, limits.aut_max_n};
    DfsOutcome out = run_search(p, limits.threads);
    std::sort(out.reps.begin(), out.reps.end(), Sequence::lex_less);
    return EnumerationRun{out.reps, std::move(out)};
}

bool fixedprop_item1(const Sequence& S, int guard) {
    const GroupCtx& ctx = S.ctx();
    int n = ctx.modulus();
    for (const Basis& basis : bases_for(ctx, guard)) {
        const auto& [e1, e2] = basis;
        if (S.multiplicity(e1) % n != n - 1) continue;
        bool ok = true;
        for (const Element& s : S.support()) {
            if (s == e1) continue;
            if (!discrete_log(ctx, e1, ctx.sub(s, e2))) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool fixedprop_item2(const Sequence& S, int s, int guard) {
    const GroupCtx& ctx = S.ctx();
    int n = ctx.modulus();
    if (S.support_size() != 4) return false;
    for (const Basis& basis : bases_for(ctx, guard)) {
        const auto& [e1, e2] = basis;
        int v1 = S.multiplicity(e1);
        int v2 = S.multiplicity(e2);
        if (v1 == 0 || v1 % n != 0) continue;
        if ((v2 + 1) % n != 0) continue;
        for (int x = 2; x <= n - 2; ++x) {
            if (std::gcd(x, n) != 1) continue;
            Element f3 = ctx.add(ctx.scalar(x, e1), e2);
            Element f4 = ctx.add(ctx.scalar(x, e1), ctx.scalar(2, e2));
            int v3 = S.multiplicity(f3);
            if ((v3 + 1) % n != 0 || S.multiplicity(f4) != 1) continue;
            int a = v1 / n, b = (v2 + 1) / n, c = (v3 + 1) / n;
            if (a >= 1 && b >= 1 && c >= 1 && a + b + c == s &&
                v1 + v2 + v3 + 1 == S.length()) {
                return true;
            }
        }
    }
    return false;
}

// S' extends to the level-(k+1) form with g as the cross term: there is a
// basis (e1,e2) with S' = e1^[n-1] e2^[n-1] (e1+e2)^[k+1] and g = e1+e2.
bool extension_has_form(const Sequence& Sp, const Element& g, int k_plus_1) {
    const GroupCtx& ctx = Sp.ctx();
    int n = ctx.modulus();
    if (Sp.multiplicity(g) != k_plus_1) return false;
    Sequence rest = Sp.remove(g, k_plus_1);
    if (rest.support_size() != 2) return false;
    std::vector<Element> supp = rest.support();
    if (rest.multiplicity(supp[0]) != n - 1 || rest.multiplicity(supp[1]) != n - 1) return false;
    if (ctx.add(supp[0], supp[1]) != g) return false;
    return is_basis(ctx, supp[0], supp[1]);
}

}  // namespace

SearchReport compute_s_le_report(int n, int ell, const SearchLimits& limits) {
    auto start = Clock::now();
    if (n < 1) throw ArgumentError("n must be >= 1");
    if (ell < n || ell > 2 * n - 1) {
        throw ArgumentError("ell must lie in [n, 2n-1]; below exp(G) the invariant is infinite, "
                            "above D(G) it is constant");
    }
    check_exhaustive_guard(n, limits);

    DfsParams p{GroupCtx(n), ell, 3 * n + 2, true, false, false, limits.aut_max_n};
    DfsOutcome out = run_search(p, limits.threads);
    if (out.max_depth >= p.max_len) {
        throw InternalError("avoiding sequences reached the safety cap; refusing an unsound value");
    }
    std::sort(out.reps.begin(), out.reps.end(), Sequence::lex_less);

    SearchReport report;
    report.task = "compute_s_le";
    report.params = {{"n", n}, {"ell", ell}};
    report.result = {{"value", out.max_depth + 1},
                     {"max_avoiding_length", out.max_depth},
                     {"orbits", out.reps.size()}};
    report.witnesses = rep_strings(out.reps);
    report.nodes = out.nodes;
    report.pruned = out.pruned;
    report.elapsed_ms = ms_since(start);
    return report;
}

int compute_s_le(int n, int ell, const SearchLimits& limits) {
    return compute_s_le_report(n, ell, limits).result.at("value").get<int>();
}

SearchReport compute_davenport_report(int n, const SearchLimits& limits) {
    auto start = Clock::now();
    if (n < 1) throw ArgumentError("n must be >= 1");
    check_exhaustive_guard(n, limits);

    int cap = 2 * n + 2;
    DfsParams p{GroupCtx(n), cap, cap, true, false, false, limits.aut_max_n};
    DfsOutcome out = run_search(p, limits.threads);
    if (out.max_depth >= cap) {
        throw InternalError("zero-sum-free sequences reached the safety cap; refusing an unsound value");
    }
    std::sort(out.reps.begin(), out.reps.end(), Sequence::lex_less);

    SearchReport report;
    report.task = "compute_davenport";
    report.params = {{"n", n}};
    report.result = {{"value", out.max_depth + 1},
                     {"max_zero_sum_free_length", out.max_depth},
                     {"orbits", out.reps.size()}};
    report.witnesses = rep_strings(out.reps);
    report.nodes = out.nodes;
    report.pruned = out.pruned;
    report.elapsed_ms = ms_since(start);
    return report;
}

int compute_davenport(int n, const SearchLimits& limits) {
    return compute_davenport_report(n, limits).result.at("value").get<int>();
}

std::vector<Sequence> enumerate_extremal(int n, int k, const SearchLimits& limits) {
    return enumerate_extremal_core(n, k, limits).reps;
}

SearchReport enumerate_extremal_report(int n, int k, const SearchLimits& limits) {
    auto start = Clock::now();
    EnumerationRun run = enumerate_extremal_core(n, k, limits);

    SearchReport report;
    report.task = "enumerate_extremal";
    report.params = {{"n", n}, {"k", k}};
    report.result = {{"orbits", run.reps.size()}, {"length", 2 * n - 2 + k}, {"ell", 2 * n - 1 - k}};
    report.witnesses = rep_strings(run.reps);
    report.nodes = run.raw.nodes;
    report.pruned = run.raw.pruned;
    report.elapsed_ms = ms_since(start);
    return report;
}

SearchReport verify_conjecture(int n, int k, const SearchLimits& limits) {
    auto start = Clock::now();
    EnumerationRun run = enumerate_extremal_core(n, k, limits);

    SearchReport report;
    report.task = "verify_conjecture";
    report.params = {{"n", n}, {"k", k}};
    std::size_t matched = 0;
    for (const Sequence& S : run.reps) {
        if (match_conjecture(S, k, limits.aut_max_n).matched) {
            ++matched;
        } else {
            report.counterexamples.push_back(S.str());
        }
    }
    report.pass = report.counterexamples.empty();
    report.result = {{"orbits", run.reps.size()}, {"matched", matched}};
    report.witnesses = rep_strings(run.reps);
    report.nodes = run.raw.nodes;
    report.pruned = run.raw.pruned;
    report.elapsed_ms = ms_since(start);
    return report;
}

SearchReport verify_multiplicative(int m, int n, int k_m, int k_n, const SearchLimits& limits) {
    auto start = Clock::now();
    if (m < 2 || n < 2) throw ArgumentError("verify_multiplicative requires m, n >= 2");
    if (k_m < 0 || k_m > m - 1) throw ArgumentError("k_m must lie in [0, m-1]");
    if (k_n < 0 || k_n > n - 1) throw ArgumentError("k_n must lie in [0, n-1]");
    const int mn = m * n;
    const int k = k_m * n + k_n;

    SearchReport report;
    report.task = "verify_multiplicative";
    report.params = {{"m", m}, {"n", n}, {"k_m", k_m}, {"k_n", k_n}, {"k", k}};

    GroupCtx ctx(mn);
    Sequence S = standard_conjectured(ctx, k);
    nlohmann::json construction = nlohmann::json::object();
    auto record = [&](const std::string& name, bool ok) {
        construction[name] = ok;
        if (!ok) report.pass = false;
    };

    record("extremal", !has_zero_sum_le(S, 2 * mn - 1 - k));
    DecomposeResult dr = block_decompose(S, m, n, k_m, k_n);
    record("decompose", dr.ok());
    if (dr.ok()) {
        const BlockDecomposition& d = *dr.value;
        DecompositionReport vr = verify_decomposition(d);
        record("decomposition_checks", vr.all_pass());
        for (const DecompositionCheck& c : vr.checks) construction["check_" + c.name] = c.pass;
        AssociatedSequence assoc = associated_sequence(d);
        record("assoc_length", assoc.seq.length() == 2 * m - 2 + k_m);
        record("assoc_extremal", !has_zero_sum_le(assoc.seq, 2 * m - 1 - k_m));
        record("assoc_matches_conjecture",
               match_conjecture(assoc.seq, k_m, limits.aut_max_n).matched);
        construction["associated_sequence"] = assoc.seq.str();
    }
    report.result["construction"] = construction;

    if (mn <= limits.mult_exhaustive_max_mn) {
        SearchReport sub = verify_conjecture(mn, k, limits);
        report.result["exhaustive"] = {{"ran", true},
                                       {"orbits", sub.result.at("orbits")},
                                       {"matched", sub.result.at("matched")}};
        report.nodes += sub.nodes;
        report.pruned += sub.pruned;
        if (!sub.pass) {
            report.pass = false;
            report.counterexamples.insert(report.counterexamples.end(),
                                          sub.counterexamples.begin(), sub.counterexamples.end());
        }
    } else {
        report.result["exhaustive"] = {{"ran", false}};
        report.notes.push_back("exhaustive tier skipped: mn = " + std::to_string(mn) +
                               " exceeds guard " + std::to_string(limits.mult_exhaustive_max_mn));
    }

    if (!report.pass && report.counterexamples.empty()) {
        report.counterexamples.push_back(S.str());
    }
    report.witnesses.push_back(S.str());
    report.elapsed_ms = ms_since(start);
    return report;
}

SearchReport verify_hamidoune(int n, int trials, std::uint64_t seed, const SearchLimits& limits) {
    auto start = Clock::now();
    if (n < 2) throw ArgumentError("verify_hamidoune requires n >= 2");
    if (trials < 1) throw ArgumentError("trials must be >= 1");
    if (n > limits.hamidoune_max_n) {
        throw FeasibilityError("verify_hamidoune refused: n = " + std::to_string(n) +
                               " exceeds guard " + std::to_string(limits.hamidoune_max_n));
    }

    GroupCtx ctx(n);
    const int order = ctx.order();
    std::mt19937_64 rng(seed);
    // Raw draws are reduced modulo the target range; std distributions are not
    // reproducible across standard libraries.
    auto draw = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };

    std::uint64_t raw = 0, filtered = 0, evaluated = 0, assertions = 0;
    const std::uint64_t raw_cap = static_cast<std::uint64_t>(trials) * 1000ull;
    SearchReport report;
    report.task = "verify_hamidoune";
    report.params = {{"n", n}, {"trials", trials}};
    report.seed = seed;

    while (evaluated < static_cast<std::uint64_t>(trials) && raw < raw_cap) {
        ++raw;
        int len = order + 1 + draw(4);
        Sequence S(ctx);
        for (int i = 0; i < len; ++i) S = S.concat(ctx.element_at(draw(order)), 1);

        SubsumTable table = SubsumTable::build(S, order);
        const SumSet& sums = table.layer(order);
        if (sums.test(0)) {
            ++filtered;
            continue;
        }
        int h = S.height();
        int kmax = std::min(S.support_size(), order - h + 2);
        if (kmax < 1) {
            ++filtered;
            continue;
        }
        int size = sums.count();
        ++evaluated;
        for (int kk = 1; kk <= kmax; ++kk) {
            ++assertions;
            if (size < len - order + kk - 1) {
                report.counterexamples.push_back(S.str() + " | k=" + std::to_string(kk) +
                                                 " |Sigma|=" + std::to_string(size) + " bound=" +
                                                 std::to_string(len - order + kk - 1));
            }
        }
    }

    report.pass = report.counterexamples.empty();
    report.result = {{"raw_trials", raw},
                     {"filtered_out", filtered},
                     {"evaluated", evaluated},
                     {"assertions", assertions},
                     {"violations", report.counterexamples.size()}};
    if (evaluated < static_cast<std::uint64_t>(trials)) {
        report.notes.push_back("raw trial cap reached before the requested number of filtered trials");
    }
    report.elapsed_ms = ms_since(start);
    return report;
}

SearchReport verify_fixedprop(int n, int s, const SearchLimits& limits) {
    auto start = Clock::now();
    if (n < 2) throw ArgumentError("verify_fixedprop requires n >= 2");
    if (s < 3) throw ArgumentError("verify_fixedprop requires s >= 3");
    if (n > limits.fixedprop_max_n) {
        throw FeasibilityError("verify_fixedprop refused: n = " + std::to_string(n) +
                               " exceeds guard " + std::to_string(limits.fixedprop_max_n));
    }
    const int len = s * n - 1;
    if (len > 24) {
        throw FeasibilityError("verify_fixedprop refused: sn-1 = " + std::to_string(len) +
                               " terms is beyond desk scale");
    }

    DfsParams p{GroupCtx(n), n - 1, len, false, true, true, limits.aut_max_n};
    DfsOutcome out = run_search(p, limits.threads);
    std::sort(out.reps.begin(), out.reps.end(), Sequence::lex_less);

    SearchReport report;
    report.task = "verify_fixedprop";
    report.params = {{"n", n}, {"s", s}};
    std::size_t item1 = 0, item2 = 0;
    for (const Sequence& S : out.reps) {
        bool m1 = fixedprop_item1(S, limits.aut_max_n);
        bool m2 = fixedprop_item2(S, s, limits.aut_max_n);
        if (m1) ++item1;
        if (m2) ++item2;
        if (!m1 && !m2) report.counterexamples.push_back(S.str());
    }
    report.pass = report.counterexamples.empty();
    report.result = {{"orbits", out.reps.size()}, {"item1", item1}, {"item2", item2}};
    report.witnesses = rep_strings(out.reps);
    report.nodes = out.nodes;
    report.pruned = out.pruned;
    report.elapsed_ms = ms_since(start);
    return report;
}

SearchReport round_trip_lemmas(int n, int k, const SearchLimits& limits) {
    auto start = Clock::now();
    if (n < 3) throw ArgumentError("round_trip_lemmas requires n >= 3");
    if (k < 1 || k > n - 2) throw ArgumentError("k must lie in [1, n-2]");

    EnumerationRun level_k = enumerate_extremal_core(n, k, limits);
    EnumerationRun level_k1 = enumerate_extremal_core(n, k + 1, limits);

    SearchReport report;
    report.task = "round_trip_lemmas";
    report.params = {{"n", n}, {"k", k}};
    GroupCtx ctx(n);
    std::uint64_t extensions = 0, removals = 0;

    // Extension direction: every g keeping S.g extremal one level up yields
    // the cross-term form with g = e1 + e2.
    for (const Sequence& S : level_k.reps) {
        for (const Element& g : ctx.elements()) {
            Sequence Sp = S.concat(g, 1);
            if (has_zero_sum_le(Sp, 2 * n - 2 - k)) continue;
            ++extensions;
            if (!extension_has_form(Sp, g, k + 1)) {
                report.counterexamples.push_back("extension " + S.str() + " + " + to_string(g));
            }
        }
    }

    // Removal direction: every term removal that stays extremal one level
    // down matches at level k, and the removed term is the cross term.
    for (const Sequence& Sp : level_k1.reps) {
        for (const Element& g : Sp.support()) {
            Sequence S = Sp.remove(g, 1);
            if (has_zero_sum_le(S, 2 * n - 1 - k)) continue;
            ++removals;
            if (!match_conjecture(S, k, limits.aut_max_n).matched ||
                !extension_has_form(Sp, g, k + 1)) {
                report.counterexamples.push_back("removal " + Sp.str() + " - " + to_string(g));
            }
        }
    }

    report.pass = report.counterexamples.empty();
    report.result = {{"orbits_k", level_k.reps.size()},
                     {"orbits_k_plus_1", level_k1.reps.size()},
                     {"extensions_checked", extensions},
                     {"removals_checked", removals}};
    report.nodes = level_k.raw.nodes + level_k1.raw.nodes;
    report.pruned = level_k.raw.pruned + level_k1.raw.pruned;
    report.elapsed_ms = ms_since(start);
    return report;
}

}  // namespace zsq
