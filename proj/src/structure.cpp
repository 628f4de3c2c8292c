#include "zsq/structure.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace zsq {

namespace {

using TermList = std::vector<std::pair<Element, int>>;

TermList term_list(const Sequence& S) {
    return TermList(S.terms().begin(), S.terms().end());
}

// Lexicographic comparison of the expanded term lists; entries must be sorted.
int cmp_expanded(const TermList& lhs, const TermList& rhs) {
    std::size_t li = 0, ri = 0;
    int lrem = lhs.empty() ? 0 : lhs[0].second;
    int rrem = rhs.empty() ? 0 : rhs[0].second;
    while (li < lhs.size() && ri < rhs.size()) {
        if (lhs[li].first != rhs[ri].first) return lhs[li].first < rhs[ri].first ? -1 : 1;
        int step = std::min(lrem, rrem);
        lrem -= step;
        rrem -= step;
        if (lrem == 0 && ++li < lhs.size()) lrem = lhs[li].second;
        if (rrem == 0 && ++ri < rhs.size()) rrem = rhs[ri].second;
    }
    if (li < lhs.size()) return 1;
    if (ri < rhs.size()) return -1;
    return 0;
}

TermList image_terms(const GroupCtx& ctx, const AutMatrix& psi, const TermList& terms) {
    TermList out;
    out.reserve(terms.size());
    for (const auto& [g, m] : terms) out.emplace_back(psi.apply(ctx, g), m);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<bool> subgroup_mask(const GroupCtx& ctx, const Element& g) {
    std::vector<bool> in(static_cast<std::size_t>(ctx.order()), false);
    Element cur = ctx.zero();
    do {
        in[static_cast<std::size_t>(ctx.index_of(cur))] = true;
        cur = ctx.add(cur, g);
    } while (cur != ctx.zero());
    return in;
}

struct Item2Match {
    Basis basis;
    std::vector<int> xs;
};

// S = e1^[n-1] * prod (x_i e1 + e2) with x_1 + ... + x_n = 1 mod n.
std::optional<Item2Match> match_item2(const Sequence& S) {
    const GroupCtx& ctx = S.ctx();
    int n = ctx.modulus();
    if (S.length() != 2 * n - 1) return std::nullopt;
    for (const Element& e1 : S.support()) {
        if (S.multiplicity(e1) < n - 1) continue;
        if (element_order(ctx, e1) != n) continue;
        Sequence rest = S.remove(e1, n - 1);
        std::vector<bool> in_h = subgroup_mask(ctx, e1);
        std::vector<Element> rest_supp = rest.support();
        const Element t0 = rest_supp.front();
        bool one_coset = true;
        for (const Element& t : rest_supp) {
            if (!in_h[static_cast<std::size_t>(ctx.index_of(ctx.sub(t, t0)))]) {
                one_coset = false;
                break;
            }
        }
        if (!one_coset) continue;
        std::vector<Element> coset;
        for (int j = 0; j < n; ++j) coset.push_back(ctx.add(t0, ctx.scalar(j, e1)));
        std::sort(coset.begin(), coset.end());
        for (const Element& e2 : coset) {
            if (!is_basis(ctx, e1, e2)) continue;
            std::vector<int> xs;
            long long total = 0;
            for (const auto& [t, m] : rest.terms()) {
                auto x = discrete_log(ctx, e1, ctx.sub(t, e2));
                if (!x) throw InternalError("coset coefficient not in <e1>");
                xs.insert(xs.end(), static_cast<std::size_t>(m), *x);
                total += static_cast<long long>(*x) * m;
            }
            if (total % n != 1 % n) continue;
            std::sort(xs.begin(), xs.end());
            return Item2Match{Basis{e1, e2}, xs};
        }
    }
    return std::nullopt;
}

// S = e1^[n-1] * e2^[n-1] * (e1+e2)^[k].
std::optional<Basis> match_item3(const Sequence& S, int k) {
    const GroupCtx& ctx = S.ctx();
    int n = ctx.modulus();
    if (S.support_size() != 3) return std::nullopt;
    std::vector<Element> supp = S.support();
    for (const Element& e1 : supp) {
        if (S.multiplicity(e1) != n - 1) continue;
        for (const Element& e2 : supp) {
            if (e2 == e1 || S.multiplicity(e2) != n - 1) continue;
            Element third = ctx.add(e1, e2);
            if (S.multiplicity(third) != k) continue;
            if (third == e1 || third == e2) continue;
            if (!is_basis(ctx, e1, e2)) continue;
            return Basis{e1, e2};
        }
    }
    return std::nullopt;
}

struct Item4Match {
    Basis basis;
    int x = 0;
};

// S = e1^[n-1] * e2^[n-1] * (x e1 + e2)^[n-1], gcd(x, n) = 1; the report is
// normalized to the least x over all witnessing bases.
std::optional<Item4Match> match_item4(const Sequence& S) {
    const GroupCtx& ctx = S.ctx();
    int n = ctx.modulus();
    if (S.support_size() != 3) return std::nullopt;
    std::vector<Element> supp = S.support();
    for (const Element& g : supp) {
        if (S.multiplicity(g) != n - 1) return std::nullopt;
    }
    std::optional<Item4Match> best;
    for (const Element& e1 : supp) {
        for (const Element& e2 : supp) {
            if (e2 == e1) continue;
            Element third{};
            for (const Element& g : supp) {
                if (g != e1 && g != e2) third = g;
            }
            if (!is_basis(ctx, e1, e2)) continue;
            auto x = discrete_log(ctx, e1, ctx.sub(third, e2));
            if (!x || *x < 1 || std::gcd(*x, n) != 1) continue;
            Item4Match cand{Basis{e1, e2}, *x};
            if (!best || cand.x < best->x ||
                (cand.x == best->x && cand.basis < best->basis)) {
                best = cand;
            }
        }
    }
    return best;
}

}  // namespace

const std::vector<AutMatrix>& automorphisms_for(const GroupCtx& ctx, int guard) {
    if (ctx.modulus() > guard) {
        throw FeasibilityError("automorphism enumeration refused: n = " +
                               std::to_string(ctx.modulus()) + " exceeds guard " +
                               std::to_string(guard));
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<std::vector<AutMatrix>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[ctx.modulus()];
    if (!slot) {
        slot = std::make_unique<std::vector<AutMatrix>>(
            enumerate_automorphisms(ctx, ctx.modulus()));
    }
    return *slot;
}

const std::vector<Basis>& bases_for(const GroupCtx& ctx, int guard) {
    if (ctx.modulus() > guard) {
        throw FeasibilityError("basis enumeration refused: n = " + std::to_string(ctx.modulus()) +
                               " exceeds guard " + std::to_string(guard));
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<std::vector<Basis>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[ctx.modulus()];
    if (!slot) {
        slot = std::make_unique<std::vector<Basis>>(enumerate_bases(ctx, ctx.modulus()));
    }
    return *slot;
}

std::optional<Basis> has_property_A(const Sequence& S, int guard) {
    const GroupCtx& ctx = S.ctx();
    std::vector<Element> supp = S.support();
    for (const Basis& basis : bases_for(ctx, guard)) {
        const auto& [e1, e2] = basis;
        std::vector<bool> in_h = subgroup_mask(ctx, e1);
        bool ok = true;
        for (const Element& s : supp) {
            if (s == e1) continue;
            if (!in_h[static_cast<std::size_t>(ctx.index_of(ctx.sub(s, e2)))]) {
                ok = false;
                break;
            }
        }
        if (ok) return basis;
    }
    return std::nullopt;
}

PropertyB has_property_B(const Sequence& S) {
    int n = S.ctx().modulus();
    int h = S.height();
    return PropertyB{h == n - 1, h >= n};
}

bool has_property_C(const Sequence& S) {
    int n = S.ctx().modulus();
    for (const auto& [g, m] : S.terms()) {
        if (m != n - 1) return false;
    }
    return true;
}

ConjectureReport match_conjecture(const Sequence& S, int k, int aut_guard) {
    const GroupCtx& ctx = S.ctx();
    int n = ctx.modulus();
    if (n < 2) throw ArgumentError("conjecture matching requires n >= 2");
    if (k < 0 || k > n - 1) throw ArgumentError("k must lie in [0, n-1]");
    if (S.length() != 2 * n - 2 + k) {
        throw ArgumentError("sequence length " + std::to_string(S.length()) +
                            " does not equal 2n-2+k = " + std::to_string(2 * n - 2 + k));
    }

    ConjectureReport report;
    report.modulus = n;
    if (k == 0) {
        Element g = ctx.neg(S.sigma());
        if (auto inner = match_item2(S.concat(g, 1))) {
            report.matched = true;
            report.item = 1;
            report.basis = inner->basis;
            report.xs = inner->xs;
            report.appended = g;
        }
    } else if (k == 1) {
        if (auto m2 = match_item2(S)) {
            report.matched = true;
            report.item = 2;
            report.basis = m2->basis;
            report.xs = m2->xs;
        }
    } else if (k <= n - 2) {
        if (auto m3 = match_item3(S, k)) {
            report.matched = true;
            report.item = 3;
            report.basis = *m3;
        }
    } else {  // k == n - 1, n >= 3
        if (auto m4 = match_item4(S)) {
            report.matched = true;
            report.item = 4;
            report.basis = m4->basis;
            report.x = m4->x;
        }
    }

    if (report.matched) {
        ConjectureParams params;
        params.basis = report.basis;
        params.xs = report.xs;
        params.x = report.x;
        params.removed = report.appended;
        if (construct_conjectured(ctx, k, report.item, params) != S) {
            throw InternalError("matched form does not re-synthesize the sequence");
        }
    }
    if (ctx.modulus() <= aut_guard) {
        report.canonical_form = canonicalize(S, aut_guard).str();
    }
    return report;
}

Sequence canonicalize(const Sequence& S, int guard) {
    const GroupCtx& ctx = S.ctx();
    TermList self = term_list(S);
    TermList best = self;
    for (const AutMatrix& psi : automorphisms_for(ctx, guard)) {
        TermList img = image_terms(ctx, psi, self);
        if (cmp_expanded(img, best) < 0) best = std::move(img);
    }
    Sequence out(ctx);
    for (const auto& [g, m] : best) out = out.concat(g, m);
    return out;
}

bool is_canonical(const Sequence& S, int guard) {
    const GroupCtx& ctx = S.ctx();
    TermList self = term_list(S);
    for (const AutMatrix& psi : automorphisms_for(ctx, guard)) {
        if (cmp_expanded(image_terms(ctx, psi, self), self) < 0) return false;
    }
    return true;
}

Sequence construct_conjectured(const GroupCtx& ctx, int k, int item, const ConjectureParams& params) {
    int n = ctx.modulus();
    if (n < 2) throw ArgumentError("construction requires n >= 2");
    if (k < 0 || k > n - 1) throw ArgumentError("k must lie in [0, n-1]");
    const auto& [e1, e2] = params.basis;
    if (!is_basis(ctx, e1, e2)) throw ArgumentError("(e1,e2) is not a basis");

    auto item2_form = [&](const std::vector<int>& xs) {
        if (static_cast<int>(xs.size()) != n) {
            throw ArgumentError("item 2 requires exactly n coset coefficients");
        }
        long long total = 0;
        for (int x : xs) {
            if (x < 0 || x > n - 1) throw ArgumentError("coset coefficients must lie in [0, n-1]");
            total += x;
        }
        if (total % n != 1 % n) {
            throw ArgumentError("item 2 requires x_1 + ... + x_n = 1 mod n");
        }
        Sequence out(ctx);
        out = out.concat(e1, n - 1);
        for (int x : xs) out = out.concat(ctx.add(ctx.scalar(x, e1), e2), 1);
        return out;
    };

    switch (item) {
        case 1: {
            if (k != 0) throw ArgumentError("item 1 applies to k = 0");
            Sequence full = item2_form(params.xs);
            Element removed = params.removed.value_or(ctx.add(e1, e2));
            if (full.multiplicity(removed) == 0) {
                throw ArgumentError("removed element " + to_string(removed) +
                                    " is not a term of the item-2 form");
            }
            return full.remove(removed, 1);
        }
        case 2: {
            if (k != 1) throw ArgumentError("item 2 applies to k = 1");
            return item2_form(params.xs);
        }
        case 3: {
            if (k < 2 || k > n - 2) throw ArgumentError("item 3 applies to k in [2, n-2]");
            Sequence out(ctx);
            out = out.concat(e1, n - 1);
            out = out.concat(e2, n - 1);
            out = out.concat(ctx.add(e1, e2), k);
            return out;
        }
        case 4: {
            if (k != n - 1) throw ArgumentError("item 4 applies to k = n-1");
            if (params.x < 1 || params.x > n - 1) throw ArgumentError("item 4 requires x in [1, n-1]");
            if (std::gcd(params.x, n) != 1) throw ArgumentError("item 4 requires gcd(x, n) = 1");
            Sequence out(ctx);
            out = out.concat(e1, n - 1);
            out = out.concat(e2, n - 1);
            out = out.concat(ctx.add(ctx.scalar(params.x, e1), e2), n - 1);
            return out;
        }
        default:
            throw ArgumentError("item must be 1, 2, 3 or 4");
    }
}

}  // namespace zsq
