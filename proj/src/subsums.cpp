#include "zsq/subsums.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

namespace zsq {

SumSet::SumSet(const GroupCtx& ctx) {
    int bits = ctx.order();
    if (bits > kMaxWords * 64) {
        throw FeasibilityError("sum sets support moduli up to n = 32; got n = " +
                               std::to_string(ctx.modulus()));
    }
    nbits_ = bits;
    nwords_ = (bits + 63) / 64;
}

bool SumSet::test(int idx) const {
    return (w_[static_cast<std::size_t>(idx >> 6)] >> (idx & 63)) & 1u;
}

void SumSet::set(int idx) { w_[static_cast<std::size_t>(idx >> 6)] |= 1ull << (idx & 63); }

bool SumSet::any() const {
    for (int i = 0; i < nwords_; ++i)
        if (w_[static_cast<std::size_t>(i)]) return true;
    return false;
}

int SumSet::count() const {
    int c = 0;
    for (int i = 0; i < nwords_; ++i) c += std::popcount(w_[static_cast<std::size_t>(i)]);
    return c;
}

void SumSet::clear() { w_.fill(0); }

SumSet& SumSet::operator|=(const SumSet& o) {
    for (int i = 0; i < nwords_; ++i) w_[static_cast<std::size_t>(i)] |= o.w_[static_cast<std::size_t>(i)];
    return *this;
}

ShiftPlan::ShiftPlan(int n) : n_(n), nbits_(n * n), nwords_((n * n + 63) / 64) {
    GroupCtx ctx(n);
    low_masks_.reserve(static_cast<std::size_t>(n));
    for (int gb = 0; gb < n; ++gb) {
        SumSet mask(ctx);
        for (int i = 0; i < nbits_; ++i) {
            if (i % n < n - gb) mask.set(i);
        }
        low_masks_.push_back(mask);
    }
}

void ShiftPlan::or_rotated(SumSet& dst, const SumSet& src, const Element& g) const {
    const int R = nbits_;
    if (nwords_ == 1) {
        // Adding g.b may overflow a row; the overflowing bits land one row too
        // far after a plain rotation and need a rotation shortened by n.
        const std::uint64_t rmask = R == 64 ? ~0ull : (1ull << R) - 1;
        auto rotl = [&](std::uint64_t v, int k) -> std::uint64_t {
            k %= R;
            if (k == 0) return v;
            return ((v << k) | (v >> (R - k))) & rmask;
        };
        std::uint64_t x = src.word(0);
        std::uint64_t lowmask = low_masks_[static_cast<std::size_t>(g.b)].word(0);
        int k1 = (g.a * n_ + g.b) % R;
        int k2 = (k1 + R - n_) % R;
        dst.or_word(0, rotl(x & lowmask, k1) | rotl(x & ~lowmask & rmask, k2));
        return;
    }
    for (int wi = 0; wi < nwords_; ++wi) {
        std::uint64_t word = src.word(wi);
        while (word) {
            int bit = std::countr_zero(word);
            word &= word - 1;
            int idx = wi * 64 + bit;
            int a = idx / n_ + g.a;
            int b = idx % n_ + g.b;
            if (a >= n_) a -= n_;
            if (b >= n_) b -= n_;
            dst.set(a * n_ + b);
        }
    }
}

const ShiftPlan& shift_plan_for(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<ShiftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<ShiftPlan>(n);
    return *slot;
}

SubsumTable::SubsumTable(const GroupCtx& ctx, int L)
    : ctx_(ctx), layers_(static_cast<std::size_t>(L) + 1, SumSet(ctx)) {
    layers_[0].set(ctx_.index_of(ctx_.zero()));
}

SubsumTable SubsumTable::build(const Sequence& S, int L) {
    if (L < 0 || L > S.length()) {
        throw ArgumentError("subsum table length bound must lie in [0, |S|]");
    }
    SubsumTable table(S.ctx(), L);
    const ShiftPlan& plan = shift_plan_for(S.ctx().modulus());
    for (const auto& [g, mult] : S.terms()) {
        for (int copy = 0; copy < mult; ++copy) {
            for (int t = L; t >= 1; --t) {
                plan.or_rotated(table.layers_[static_cast<std::size_t>(t)],
                                table.layers_[static_cast<std::size_t>(t) - 1], g);
            }
        }
    }
    return table;
}

const SumSet& SubsumTable::layer(int t) const {
    if (t < 0 || t > max_length()) throw ArgumentError("subsum layer index out of range");
    return layers_[static_cast<std::size_t>(t)];
}

bool SubsumTable::contains(int t, const Element& s) const { return layer(t).test(ctx_.index_of(s)); }

std::vector<Element> SubsumTable::sums_of_length(int t) const {
    const SumSet& l = layer(t);
    std::vector<Element> out;
    for (int idx = 0; idx < ctx_.order(); ++idx) {
        if (l.test(idx)) out.push_back(ctx_.element_at(idx));
    }
    return out;
}

SumSet sigma_le_set(const Sequence& S, int ell) {
    if (ell < 1) throw ArgumentError("length bound must be >= 1");
    int L = std::min(ell, S.length());
    SumSet out(S.ctx());
    if (L < 1) return out;
    SubsumTable table = SubsumTable::build(S, L);
    for (int t = 1; t <= L; ++t) out |= table.layer(t);
    return out;
}

std::vector<Element> sigma_le(const Sequence& S, int ell) {
    SumSet set = sigma_le_set(S, ell);
    std::vector<Element> out;
    for (int idx = 0; idx < S.ctx().order(); ++idx) {
        if (set.test(idx)) out.push_back(S.ctx().element_at(idx));
    }
    return out;
}

bool has_zero_sum_le(const Sequence& S, int ell) {
    if (ell < 1) throw ArgumentError("length bound must be >= 1");
    int L = std::min(ell, S.length());
    if (L < 1) return false;
    const GroupCtx& ctx = S.ctx();
    const ShiftPlan& plan = shift_plan_for(ctx.modulus());
    std::vector<SumSet> layers(static_cast<std::size_t>(L) + 1, SumSet(ctx));
    const int zero = ctx.index_of(ctx.zero());
    layers[0].set(zero);
    for (const auto& [g, mult] : S.terms()) {
        for (int copy = 0; copy < mult; ++copy) {
            for (int t = L; t >= 1; --t) {
                plan.or_rotated(layers[static_cast<std::size_t>(t)],
                                layers[static_cast<std::size_t>(t) - 1], g);
                if (layers[static_cast<std::size_t>(t)].test(zero)) return true;
            }
        }
    }
    return false;
}

namespace {

// True iff some T | S with |T| = t sums to target.
bool reachable(const Sequence& S, int t, const Element& target) {
    if (t == 0) return target == S.ctx().zero();
    if (t > S.length()) return false;
    return SubsumTable::build(S, t).contains(t, target);
}

}  // namespace

std::optional<Sequence> find_zero_sum_le(const Sequence& S, int ell, WitnessMode mode) {
    (void)mode;  // both modes return a shortest witness; Shortest guarantees it
    if (ell < 1) throw ArgumentError("length bound must be >= 1");
    int L = std::min(ell, S.length());
    if (L < 1) return std::nullopt;
    SubsumTable table = SubsumTable::build(S, L);
    const Element zero = S.ctx().zero();
    int tstar = -1;
    for (int t = 1; t <= L; ++t) {
        if (table.contains(t, zero)) {
            tstar = t;
            break;
        }
    }
    if (tstar < 0) return std::nullopt;

    // Back out a witness one term at a time, preferring the least element
    // whose removal keeps the residual target reachable.
    Sequence witness(S.ctx());
    Sequence cur = S;
    Element target = zero;
    for (int t = tstar; t >= 1; --t) {
        bool took = false;
        for (const Element& g : cur.support()) {
            Element rest = S.ctx().sub(target, g);
            if (reachable(cur.remove(g, 1), t - 1, rest)) {
                witness = witness.concat(g, 1);
                cur = cur.remove(g, 1);
                target = rest;
                took = true;
                break;
            }
        }
        if (!took) throw InternalError("witness reconstruction lost the trail");
    }
    return witness;
}

std::string to_string(ZeroSumClass c) {
    switch (c) {
        case ZeroSumClass::ZeroSumFree: return "zero_sum_free";
        case ZeroSumClass::MinimalZeroSum: return "minimal_zero_sum";
        case ZeroSumClass::ZeroSumReducible: return "zero_sum_reducible";
        case ZeroSumClass::NonzeroSum: return "nonzero_sum";
    }
    return "?";
}

ZeroSumClass zero_sum_classify(const Sequence& S) {
    if (S.empty()) return ZeroSumClass::ZeroSumFree;
    SubsumTable table = SubsumTable::build(S, S.length());
    const Element zero = S.ctx().zero();
    bool any_zero = false;
    bool proper_zero = false;
    for (int t = 1; t <= S.length(); ++t) {
        if (table.contains(t, zero)) {
            any_zero = true;
            if (t < S.length()) proper_zero = true;
        }
    }
    if (!any_zero) return ZeroSumClass::ZeroSumFree;
    if (S.sigma() == zero) {
        return proper_zero ? ZeroSumClass::ZeroSumReducible : ZeroSumClass::MinimalZeroSum;
    }
    return ZeroSumClass::NonzeroSum;
}

}  // namespace zsq
