#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zsq/group.hpp"

namespace zsq {

/// A finite unordered multiset of group elements (the combinatorial notion of
/// a "sequence" over G). Immutable value type; edits return new sequences.
class Sequence {
public:
    explicit Sequence(const GroupCtx& ctx) : ctx_(ctx) {}

    /// Grammar: sequence := term (WS term)*; term := "(" int "," int ")" ("^" int)?
    /// Exponents must be >= 1; coordinates must lie in [0, n).
    static Sequence parse(const GroupCtx& ctx, std::string_view text);

    /// Canonical form: support in lexicographic order, "^k" printed for k >= 2.
    std::string str() const;

    const GroupCtx& ctx() const noexcept { return ctx_; }
    const std::map<Element, int>& terms() const noexcept { return mults_; }

    int length() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }
    int multiplicity(const Element& g) const;
    int height() const;
    std::vector<Element> support() const;
    int support_size() const noexcept { return static_cast<int>(mults_.size()); }
    Element sigma() const;

    /// True iff T | S (pointwise multiplicity dominance).
    bool contains(const Sequence& T) const;

    Sequence concat(const Sequence& T) const;
    Sequence concat(const Element& g, int count = 1) const;
    Sequence remove(const Sequence& T) const;
    Sequence remove(const Element& g, int count = 1) const;

    friend bool operator==(const Sequence&, const Sequence&) = default;

    /// Lexicographic order on the expanded, sorted term lists.
    static bool lex_less(const Sequence& lhs, const Sequence& rhs);

private:
    void add_term(const Element& g, int count);

    GroupCtx ctx_;
    std::map<Element, int> mults_;
    int length_ = 0;
};

struct SequenceStats {
    int length = 0;
    int height = 0;
    int support = 0;
    Element sigma{0, 0};
};

SequenceStats stats(const Sequence& S);

/// Parse a single "(a,b)" element.
Element parse_element(const GroupCtx& ctx, std::string_view text);

/// Termwise image under an automorphism (same group).
Sequence apply_map(const AutMatrix& psi, const Sequence& S);

/// Termwise image under the multiplication homomorphism; the image sequence
/// keeps the ambient C_mn coordinates.
Sequence apply_map(const MulHom& phi, const Sequence& S);

}  // namespace zsq
