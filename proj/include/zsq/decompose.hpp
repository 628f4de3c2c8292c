#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsq/sequence.hpp"

namespace zsq {

enum class DecompKind { Block, Weak, Augmented };

std::string to_string(DecompKind k);

/// Factorization S* = head . W_1 ... W_B into blocks whose phi-images are
/// nontrivial zero-sums, where phi is multiplication by m on C_mn + C_mn.
///
/// Kinds:
///  - Block: 1 <= |W_i| <= n for every block; head is the remainder.
///  - Weak, k_n <= 1: head is itself a phi-zero-sum part (indexed W_0).
///  - Weak, k_n >= 2: |head| >= n-1+2*k_n.
///  - Augmented (k_n >= 2): blocks[0] is the extra part W_0 with
///    |W_0| <= 3n-1-k_n and every later block has length exactly n.
struct BlockDecomposition {
    DecompKind kind = DecompKind::Block;
    MulHom hom;
    int k_m = 0;
    int k_n = 0;
    Sequence source;               // the decomposed extremal sequence S
    std::optional<Element> g0;     // appended term when k_n = 0
    Sequence head;
    std::vector<Sequence> blocks;
    std::optional<int> assoc_index;  // k_0 bookkeeping (0 = head, i = blocks[i-1]+...)

    /// S* = source, plus g0 when k_n = 0.
    Sequence star() const;
};

struct DecomposeFailure {
    std::string reason;
    std::vector<Sequence> extracted;
    std::optional<Sequence> remainder;
};

struct DecomposeResult {
    std::optional<BlockDecomposition> value;
    std::optional<DecomposeFailure> failure;

    bool ok() const noexcept { return value.has_value(); }
};

/// Greedy block extraction: repeatedly remove a shortest subsequence T of the
/// remainder with |T| <= n and phi(T) zero-sum, until 2m-2+k_m blocks exist.
/// Failure is a first-class result carrying the partial extraction.
DecomposeResult block_decompose(const Sequence& S, int m, int n, int k_m, int k_n);

/// Refactor a Block decomposition (k_n >= 2) into an Augmented one by pulling
/// a short phi-zero-sum W_0 out of the head.
DecomposeResult augment_decomposition(const BlockDecomposition& d);

struct DecompositionCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct DecompositionReport {
    std::vector<DecompositionCheck> checks;

    bool all_pass() const;
};

/// Structural verification per kind plus the size/extremality consequences
/// expected of decompositions of genuinely extremal inputs.
DecompositionReport verify_decomposition(const BlockDecomposition& d);

struct AssociatedSequence {
    Sequence seq;                 // over C_m + C_m (kernel coordinates)
    std::vector<int> provenance;  // contributing part indices (0 = head)
};

/// Kernel coordinates of the contributing block sums. For k_n <= 1 the part
/// at the associated index is excluded; the Augmented kind prepends sigma(W_0).
AssociatedSequence associated_sequence(const BlockDecomposition& d,
                                       const Basis& source_basis = {Element{1, 0}, Element{0, 1}});

/// True iff g is the only element of supp(S) in its phi-fiber.
bool is_good_term(const Sequence& S, const MulHom& hom, const Element& g);

}  // namespace zsq
