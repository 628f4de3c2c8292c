#include "zsq/decompose.hpp"

#include <algorithm>

#include "zsq/subsums.hpp"

namespace zsq {

namespace {

// Shortest T | S with |T| <= ell and phi(T) zero-sum, lifted back to source
// terms deterministically (least preimages first).
std::optional<Sequence> find_phi_zero_block(const Sequence& S, const MulHom& hom, int ell) {
    if (ell < 1 || S.empty()) return std::nullopt;
    Sequence image = apply_map(hom, S);
    auto witness = find_zero_sum_le(image, ell, WitnessMode::Shortest);
    if (!witness) return std::nullopt;
    Sequence block(S.ctx());
    for (const auto& [img, need_total] : witness->terms()) {
        int need = need_total;
        for (const auto& [g, mult] : S.terms()) {
            if (hom.map(g) != img) continue;
            int take = std::min(need, mult);
            if (take > 0) {
                block = block.concat(g, take);
                need -= take;
            }
            if (need == 0) break;
        }
        if (need != 0) throw InternalError("image witness cannot be lifted to source terms");
    }
    return block;
}

}  // namespace

std::string to_string(DecompKind k) {
    switch (k) {
        case DecompKind::Block: return "block";
        case DecompKind::Weak: return "weak";
        case DecompKind::Augmented: return "augmented";
    }
    return "?";
}

Sequence BlockDecomposition::star() const {
    if (k_n == 0 && g0) return source.concat(*g0, 1);
    return source;
}

DecomposeResult block_decompose(const Sequence& S, int m, int n, int k_m, int k_n) {
    if (m < 2 || n < 2) throw ArgumentError("block decomposition requires m, n >= 2");
    if (k_m < 0 || k_m > m - 1) throw ArgumentError("k_m must lie in [0, m-1]");
    if (k_n < 0 || k_n > n - 1) throw ArgumentError("k_n must lie in [0, n-1]");
    const GroupCtx& ctx = S.ctx();
    if (ctx.modulus() != m * n) {
        throw ArgumentError("sequence modulus " + std::to_string(ctx.modulus()) +
                            " does not equal m*n = " + std::to_string(m * n));
    }
    int k = k_m * n + k_n;
    if (S.length() != 2 * m * n - 2 + k) {
        throw ArgumentError("sequence length " + std::to_string(S.length()) +
                            " does not equal 2mn-2+k = " + std::to_string(2 * m * n - 2 + k));
    }

    MulHom hom(ctx, m);
    BlockDecomposition d{DecompKind::Block, hom, k_m, k_n, S, std::nullopt, Sequence(ctx), {}, std::nullopt};

    Sequence remainder = S;
    if (k_n == 0) {
        // g_0 is the least element of -sigma(S) + ker(phi); then phi(S*) is zero-sum.
        Element base = ctx.neg(S.sigma());
        Element best = ctx.add(base, hom.kernel_elements().front());
        for (const Element& kel : hom.kernel_elements()) {
            best = std::min(best, ctx.add(base, kel));
        }
        d.g0 = best;
        remainder = remainder.concat(best, 1);
    }

    const int wanted = 2 * m - 2 + k_m;
    for (int i = 0; i < wanted; ++i) {
        auto block = find_phi_zero_block(remainder, hom, n);
        if (!block) {
            DecomposeFailure fail;
            fail.reason = "no phi-zero-sum block of length <= " + std::to_string(n) +
                          " in the remainder of length " + std::to_string(remainder.length()) +
                          " after " + std::to_string(i) + " of " + std::to_string(wanted) +
                          " blocks; input violates the length hypotheses";
            fail.extracted = d.blocks;
            fail.remainder = remainder;
            return DecomposeResult{std::nullopt, std::move(fail)};
        }
        d.blocks.push_back(*block);
        remainder = remainder.remove(*block);
    }
    d.head = remainder;

    auto part_length = [&](int idx) {
        return idx == 0 ? d.head.length() : d.blocks[static_cast<std::size_t>(idx) - 1].length();
    };
    auto part_has = [&](int idx, const Element& g) {
        const Sequence& part = idx == 0 ? d.head : d.blocks[static_cast<std::size_t>(idx) - 1];
        return part.multiplicity(g) > 0;
    };
    if (k_n == 1) {
        for (int idx = 0; idx <= wanted; ++idx) {
            if (part_length(idx) > n) {
                d.assoc_index = idx;
                break;
            }
        }
    } else if (k_n == 0) {
        for (int idx = 0; idx <= wanted; ++idx) {
            if (part_has(idx, *d.g0)) {
                d.assoc_index = idx;
                break;
            }
        }
    }
    return DecomposeResult{std::move(d), std::nullopt};
}

DecomposeResult augment_decomposition(const BlockDecomposition& d) {
    if (d.kind != DecompKind::Block) throw ArgumentError("augmentation requires a block decomposition");
    int n = d.hom.image_modulus();
    if (d.k_n < 2 || d.k_n > n - 1) {
        throw ArgumentError("augmented decompositions are defined for k_n in [2, n-1]");
    }
    auto w0 = find_phi_zero_block(d.head, d.hom, 2 * n - d.k_n);
    if (!w0) {
        DecomposeFailure fail;
        fail.reason = "head carries no phi-zero-sum part of length <= 2n-k_n";
        fail.extracted = d.blocks;
        fail.remainder = d.head;
        return DecomposeResult{std::nullopt, std::move(fail)};
    }
    BlockDecomposition out = d;
    out.kind = DecompKind::Augmented;
    out.head = d.head.remove(*w0);
    out.blocks.clear();
    out.blocks.push_back(*w0);
    out.blocks.insert(out.blocks.end(), d.blocks.begin(), d.blocks.end());
    out.assoc_index = std::nullopt;
    return DecomposeResult{std::move(out), std::nullopt};
}

bool DecompositionReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const DecompositionCheck& c) { return c.pass; });
}

DecompositionReport verify_decomposition(const BlockDecomposition& d) {
    DecompositionReport report;
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        report.checks.push_back(DecompositionCheck{name, pass, detail});
    };

    const MulHom& hom = d.hom;
    int n = hom.image_modulus();
    int m = hom.multiplier();
    const int expected_blocks = 2 * m - 2 + d.k_m + (d.kind == DecompKind::Augmented ? 1 : 0);

    Sequence star = d.star();
    Sequence recomposed = d.head;
    for (const Sequence& w : d.blocks) recomposed = recomposed.concat(w);
    add("recomposition", recomposed == star, "head and blocks must concatenate to S*");

    add("block_count",
        static_cast<int>(d.blocks.size()) == expected_blocks,
        "expected " + std::to_string(expected_blocks) + " blocks, have " +
            std::to_string(d.blocks.size()));

    bool phi_zero = true;
    for (const Sequence& w : d.blocks) {
        if (w.empty() || !hom.in_kernel(w.sigma())) phi_zero = false;
    }
    add("blocks_phi_zero_sum", phi_zero, "each block must be nontrivial with phi-image zero-sum");

    switch (d.kind) {
        case DecompKind::Block: {
            bool sizes = true;
            for (const Sequence& w : d.blocks) {
                if (w.length() < 1 || w.length() > n) sizes = false;
            }
            add("kind_bounds", sizes, "block lengths must lie in [1, n]");
            break;
        }
        case DecompKind::Weak: {
            if (d.k_n <= 1) {
                add("kind_bounds", !d.head.empty() && hom.in_kernel(d.head.sigma()),
                    "weak head W_0 must be a nontrivial phi-zero-sum part");
            } else {
                add("kind_bounds", d.head.length() >= n - 1 + 2 * d.k_n,
                    "weak head must have length >= n-1+2*k_n");
            }
            break;
        }
        case DecompKind::Augmented: {
            bool ok = !d.blocks.empty() && d.blocks.front().length() <= 3 * n - 1 - d.k_n &&
                      !d.blocks.front().empty();
            for (std::size_t i = 1; i < d.blocks.size(); ++i) {
                if (d.blocks[i].length() != n) ok = false;
            }
            add("kind_bounds", ok, "|W_0| <= 3n-1-k_n and |W_i| = n for i >= 1");
            break;
        }
    }

    if (d.k_n <= 1) {
        add("assoc_index", d.assoc_index.has_value(),
            d.k_n == 1 ? "an index with part length > n must exist"
                       : "an index whose part contains g_0 must exist");
    }

    // Size and extremality consequences of decompositions of extremal inputs.
    if (d.kind == DecompKind::Block) {
        bool sizes = true;
        for (const Sequence& w : d.blocks) {
            if (w.length() != n) sizes = false;
        }
        add("block_sizes_exact", sizes, "all block lengths must equal n");

        Sequence phi_head = apply_map(hom, d.head);
        if (d.k_n >= 2) {
            add("head_length", d.head.length() == 2 * n - 2 + d.k_n,
                "head length must equal 2n-2+k_n");
            add("head_extremal", !has_zero_sum_le(phi_head, 2 * n - 1 - d.k_n),
                "phi(head) must avoid zero-sums of length <= 2n-1-k_n");
        } else {
            add("head_length", d.head.length() == 2 * n - 1, "head length must equal 2n-1");
            add("head_minimal_zero_sum",
                zero_sum_classify(phi_head) == ZeroSumClass::MinimalZeroSum,
                "phi(W_0) must be a minimal zero-sum sequence");
        }
        if (n >= 2) {
            add("phi_short_zero_free", !has_zero_sum_le(apply_map(hom, star), n - 1),
                "phi(S*) must avoid zero-sums of length <= n-1");
        }
    }

    return report;
}

AssociatedSequence associated_sequence(const BlockDecomposition& d, const Basis& source_basis) {
    const MulHom& hom = d.hom;
    std::vector<int> provenance;
    const int nparts = static_cast<int>(d.blocks.size()) + 1;
    if (d.k_n <= 1) {
        if (!d.assoc_index) {
            throw ArgumentError("decomposition carries no associated index (k_n <= 1)");
        }
        for (int idx = 0; idx < nparts; ++idx) {
            if (idx != *d.assoc_index) provenance.push_back(idx);
        }
    } else {
        for (int idx = 1; idx < nparts; ++idx) provenance.push_back(idx);
    }

    AssociatedSequence out{Sequence(hom.kernel_ctx()), provenance};
    for (int idx : provenance) {
        const Sequence& part = idx == 0 ? d.head : d.blocks[static_cast<std::size_t>(idx) - 1];
        out.seq = out.seq.concat(kernel_coords(hom, source_basis, part.sigma()), 1);
    }
    return out;
}

bool is_good_term(const Sequence& S, const MulHom& hom, const Element& g) {
    if (S.multiplicity(g) == 0) {
        throw ArgumentError("is_good_term: " + to_string(g) + " is not a term of the sequence");
    }
    Element image = hom.map(g);
    for (const Element& h : S.support()) {
        if (h != g && hom.map(h) == image) return false;
    }
    return true;
}

}  // namespace zsq
