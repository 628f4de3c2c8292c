#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsq/sequence.hpp"

namespace zsq {

/// Which conjectured extremal form a sequence matched, with the witnessing
/// basis and item-specific parameters. Re-synthesizing the form from
/// (item, basis, params) reproduces the matched sequence exactly.
struct ConjectureReport {
    bool matched = false;
    int item = 0;  // 1..4 when matched
    int modulus = 0;
    Basis basis{Element{0, 0}, Element{0, 0}};
    std::vector<int> xs;              // items 1-2: coset coefficients, ascending
    int x = 0;                        // item 4: coefficient with gcd(x, n) = 1
    std::optional<Element> appended;  // item 1: g = -sigma(S)
    std::optional<std::string> canonical_form;
};

/// Basis (e1,e2) with supp(S) within {e1} plus the coset <e1>+e2, if any.
/// Bases are tried in lexicographic coordinate order; first witness returned.
std::optional<Basis> has_property_A(const Sequence& S, int guard = kDefaultAutGuard);

struct PropertyB {
    bool holds = false;           // height exactly n-1
    bool height_exceeds = false;  // height >= n: such S contains an n-term zero-sum
};

PropertyB has_property_B(const Sequence& S);

/// True iff every term has multiplicity exactly n-1 (vacuously true if empty).
bool has_property_C(const Sequence& S);

/// Decide whether S has the conjectured item form for the k-branch:
/// item 1 for k = 0, item 2 for k = 1, item 3 for k in [2, n-2], item 4 for
/// k = n-1. Requires |S| = 2n-2+k.
ConjectureReport match_conjecture(const Sequence& S, int k, int aut_guard = kDefaultAutGuard);

/// Lexicographically least automorphism image; idempotent.
Sequence canonicalize(const Sequence& S, int guard = kDefaultAutGuard);
bool is_canonical(const Sequence& S, int guard = kDefaultAutGuard);

struct ConjectureParams {
    Basis basis{Element{1, 0}, Element{0, 1}};
    std::vector<int> xs;              // item 2 (and the item-2 part of item 1)
    int x = 1;                        // item 4
    std::optional<Element> removed;   // item 1: term removed from the item-2 form
};

/// The exact multiset of the conjectured item form. Illegal parameters raise
/// ArgumentError naming the violated condition.
Sequence construct_conjectured(const GroupCtx& ctx, int k, int item, const ConjectureParams& params);

/// Cached per-modulus automorphism and basis lists (guarded).
const std::vector<AutMatrix>& automorphisms_for(const GroupCtx& ctx, int guard = kDefaultAutGuard);
const std::vector<Basis>& bases_for(const GroupCtx& ctx, int guard = kDefaultAutGuard);

}  // namespace zsq
