#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsq/sequence.hpp"

namespace zsq {

/// Fixed-capacity bitset over the n^2 group elements, indexed by a*n + b.
class SumSet {
public:
    static constexpr int kMaxWords = 16;  // n^2 <= 1024, i.e. n <= 32

    SumSet() = default;
    explicit SumSet(const GroupCtx& ctx);

    int bits() const noexcept { return nbits_; }
    int word_count() const noexcept { return nwords_; }
    std::uint64_t word(int i) const { return w_[static_cast<std::size_t>(i)]; }
    void or_word(int i, std::uint64_t v) { w_[static_cast<std::size_t>(i)] |= v; }

    bool test(int idx) const;
    void set(int idx);
    bool any() const;
    int count() const;
    void clear();

    SumSet& operator|=(const SumSet& o);
    friend bool operator==(const SumSet&, const SumSet&) = default;

private:
    std::array<std::uint64_t, kMaxWords> w_{};
    std::int32_t nbits_ = 0;
    std::int32_t nwords_ = 0;
};

/// Precomputed masks for accumulating a sum-set shifted by a group element.
/// Shifting by g permutes bit indices: a*n+b -> ((a+g.a)%n)*n + (b+g.b)%n.
class ShiftPlan {
public:
    explicit ShiftPlan(int n);

    int modulus() const noexcept { return n_; }

    /// dst |= { s + g : s in src }
    void or_rotated(SumSet& dst, const SumSet& src, const Element& g) const;

private:
    int n_;
    int nbits_;
    int nwords_;
    std::vector<SumSet> low_masks_;  // indexed by g.b: bits with b < n - g.b
};

/// Process-wide plan cache; plans are immutable once built.
const ShiftPlan& shift_plan_for(int n);

/// Per-length reachable-sum table: layer(t) = Sigma_t(S) for t in [0, L].
class SubsumTable {
public:
    /// Multiplicity-aware layered DP; each copy of each support element is
    /// folded in exactly once with descending-length updates.
    static SubsumTable build(const Sequence& S, int L);

    const GroupCtx& ctx() const noexcept { return ctx_; }
    int max_length() const noexcept { return static_cast<int>(layers_.size()) - 1; }
    const SumSet& layer(int t) const;
    bool contains(int t, const Element& s) const;
    std::vector<Element> sums_of_length(int t) const;

private:
    SubsumTable(const GroupCtx& ctx, int L);

    GroupCtx ctx_;
    std::vector<SumSet> layers_;
};

/// Sigma_{<= ell}(S) as a sorted element list (ell clamps to |S|).
std::vector<Element> sigma_le(const Sequence& S, int ell);
SumSet sigma_le_set(const Sequence& S, int ell);

/// True iff some nontrivial T | S with |T| <= ell and sigma(T) = 0.
/// Short-circuits as soon as a zero sum appears in any layer.
bool has_zero_sum_le(const Sequence& S, int ell);

enum class WitnessMode { Any, Shortest };

/// Deterministic witness extraction: the shortest feasible length is used and
/// at each step the lexicographically least extending element is chosen.
std::optional<Sequence> find_zero_sum_le(const Sequence& S, int ell,
                                         WitnessMode mode = WitnessMode::Shortest);

enum class ZeroSumClass { ZeroSumFree, MinimalZeroSum, ZeroSumReducible, NonzeroSum };

std::string to_string(ZeroSumClass c);

ZeroSumClass zero_sum_classify(const Sequence& S);

}  // namespace zsq
