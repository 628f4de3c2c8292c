#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "zsq/decompose.hpp"
#include "zsq/report.hpp"
#include "zsq/structure.hpp"
#include "zsq/subsums.hpp"

using namespace zsq;

namespace {

Sequence standard_form(const GroupCtx& ctx, int k) {
    Sequence S(ctx);
    S = S.concat(Element{1, 0}, ctx.modulus() - 1);
    S = S.concat(Element{0, 1}, ctx.modulus() - 1);
    if (k > 0) S = S.concat(Element{1, 1}, k);
    return S;
}

bool check_named(const DecompositionReport& r, const std::string& name) {
    for (const auto& c : r.checks) {
        if (c.name == name) return c.pass;
    }
    return false;
}

}  // namespace

TEST_CASE("greedy decomposition of the worked mn = 4 example") {
    GroupCtx c4(4);
    Sequence S = Sequence::parse(c4, "(1,0)^3 (0,1)^3 (1,1)^3");
    DecomposeResult r = block_decompose(S, 2, 2, 1, 1);
    REQUIRE(r.ok());
    const BlockDecomposition& d = *r.value;

    CHECK(d.head.length() == 3);
    CHECK(d.blocks.size() == 3);
    for (const Sequence& w : d.blocks) CHECK(w.length() == 2);

    // phi(head) consists of the three distinct nonzero doubled elements.
    MulHom phi(c4, 2);
    Sequence img = apply_map(phi, d.head);
    CHECK(img == Sequence::parse(c4, "(2,0) (0,2) (2,2)"));
    CHECK(zero_sum_classify(img) == ZeroSumClass::MinimalZeroSum);

    CHECK(d.assoc_index == 0);  // the head is the unique part longer than n

    DecompositionReport v = verify_decomposition(d);
    CHECK(v.all_pass());

    AssociatedSequence assoc = associated_sequence(d);
    CHECK(assoc.seq == Sequence::parse(GroupCtx(2), "(1,0) (0,1) (1,1)"));
    CHECK(assoc.provenance == std::vector<int>{1, 2, 3});
}

TEST_CASE("decomposition validates its argument ranges") {
    GroupCtx c4(4);
    Sequence S = standard_form(c4, 3);
    CHECK_THROWS_AS(block_decompose(S, 1, 4, 0, 3), ArgumentError);
    CHECK_THROWS_AS(block_decompose(S, 2, 2, 2, 1), ArgumentError);
    CHECK_THROWS_AS(block_decompose(S.concat(Element{1, 1}, 1), 2, 2, 1, 1), ArgumentError);
    CHECK_THROWS_AS(block_decompose(Sequence::parse(GroupCtx(6), "(1,1)^13"), 2, 3, 1, 1),
                    ArgumentError);
}

TEST_CASE("k_n = 0 path appends the least kernel-coset element") {
    GroupCtx c4(4);
    Sequence S = standard_form(c4, 2);  // k = 2 = k_m * n with (m, n) = (2, 2)
    DecomposeResult r = block_decompose(S, 2, 2, 1, 0);
    REQUIRE(r.ok());
    const BlockDecomposition& d = *r.value;
    REQUIRE(d.g0.has_value());
    CHECK(*d.g0 == Element{1, 1});
    CHECK(d.star().length() == S.length() + 1);
    CHECK(verify_decomposition(d).all_pass());

    AssociatedSequence assoc = associated_sequence(d);
    CHECK(assoc.seq.length() == 2 * 2 - 2 + 1);
    CHECK_FALSE(has_zero_sum_le(assoc.seq, 2 * 2 - 1 - 1));
    CHECK(match_conjecture(assoc.seq, 1).matched);
}

TEST_CASE("head length follows the k_n >= 2 regime") {
    GroupCtx c6(6);
    Sequence S = standard_form(c6, 2);  // (m, n) = (2, 3), k_m = 0, k_n = 2
    DecomposeResult r = block_decompose(S, 2, 3, 0, 2);
    REQUIRE(r.ok());
    CHECK(r.value->head.length() == 2 * 3 - 2 + 2);
    CHECK(r.value->blocks.size() == 2);
    CHECK(verify_decomposition(*r.value).all_pass());
}

TEST_CASE("size and extremality checks reject malformed decompositions") {
    GroupCtx c4(4);
    Sequence S = standard_form(c4, 3);
    DecomposeResult r = block_decompose(S, 2, 2, 1, 1);
    REQUIRE(r.ok());

    // Move one term of a block into the head: sizes and phi-zero-sums break.
    BlockDecomposition bad = *r.value;
    Element moved = bad.blocks[0].support().front();
    bad.blocks[0] = bad.blocks[0].remove(moved, 1);
    bad.head = bad.head.concat(moved, 1);
    DecompositionReport v = verify_decomposition(bad);
    CHECK_FALSE(v.all_pass());
    CHECK(check_named(v, "recomposition"));
    CHECK_FALSE(check_named(v, "block_sizes_exact"));

    // Tampering with the source breaks recomposition.
    BlockDecomposition tampered = *r.value;
    tampered.source = tampered.source.remove(Element{1, 0}, 1).concat(Element{3, 3}, 1);
    CHECK_FALSE(check_named(verify_decomposition(tampered), "recomposition"));
}

TEST_CASE("a structurally wrong input decomposes but fails the extremality checks") {
    GroupCtx c4(4);
    Sequence S = Sequence::parse(c4, "(2,0)^3 (1,0)^6");  // length 9, not extremal
    DecomposeResult r = block_decompose(S, 2, 2, 1, 1);
    REQUIRE(r.ok());
    DecompositionReport v = verify_decomposition(*r.value);
    CHECK_FALSE(v.all_pass());
    CHECK_FALSE(check_named(v, "phi_short_zero_free"));
}

TEST_CASE("augmentation pulls a short zero-sum part out of the head") {
    GroupCtx c6(6);
    Sequence S = standard_form(c6, 2);
    DecomposeResult r = block_decompose(S, 2, 3, 0, 2);
    REQUIRE(r.ok());
    DecomposeResult ar = augment_decomposition(*r.value);
    REQUIRE(ar.ok());
    const BlockDecomposition& a = *ar.value;
    CHECK(a.kind == DecompKind::Augmented);
    CHECK(a.blocks.size() == r.value->blocks.size() + 1);
    CHECK(a.blocks.front().length() <= 2 * 3 - 2);
    CHECK(verify_decomposition(a).all_pass());

    // The augmented associated sequence sits one level higher.
    AssociatedSequence assoc = associated_sequence(a);
    CHECK(assoc.seq.length() == 2 * 2 - 1 + 0);
    CHECK_FALSE(has_zero_sum_le(assoc.seq, 2 * 2 - 2 - 0));
    CHECK(match_conjecture(assoc.seq, 0 + 1).matched);

    CHECK_THROWS_AS(augment_decomposition(*block_decompose(standard_form(GroupCtx(4), 3), 2, 2, 1, 1)
                                               .value),
                    ArgumentError);
}

TEST_CASE("augmentation failure is a first-class result") {
    GroupCtx c6(6);
    Sequence S = standard_form(c6, 2);
    DecomposeResult r = block_decompose(S, 2, 3, 0, 2);
    REQUIRE(r.ok());
    BlockDecomposition d = *r.value;
    // Replace the head by terms whose phi-images cannot reach zero within the
    // allowed length; recomposition no longer holds but extraction is what is
    // being exercised.
    d.head = Sequence::parse(c6, "(1,0) (0,1)");
    DecomposeResult ar = augment_decomposition(d);
    CHECK_FALSE(ar.ok());
    CHECK_FALSE(ar.failure->reason.empty());
}

TEST_CASE("hand-built weak decompositions over the k_n <= 1 regime") {
    GroupCtx c4(4);
    MulHom phi(c4, 2);
    Sequence head = Sequence::parse(c4, "(1,1)^2");
    std::vector<Sequence> blocks{Sequence::parse(c4, "(1,0)^2"), Sequence::parse(c4, "(0,1)^2"),
                                 Sequence::parse(c4, "(3,0) (1,0)")};
    Sequence source = head;
    for (const Sequence& w : blocks) source = source.concat(w);
    BlockDecomposition d{DecompKind::Weak, phi, 1, 1, source, std::nullopt, head, blocks, 0};

    DecompositionReport v = verify_decomposition(d);
    CHECK(check_named(v, "recomposition"));
    CHECK(check_named(v, "blocks_phi_zero_sum"));
    CHECK(check_named(v, "kind_bounds"));

    AssociatedSequence assoc = associated_sequence(d);
    CHECK(assoc.provenance == std::vector<int>{1, 2, 3});
    CHECK(assoc.seq.multiplicity(Element{1, 0}) == 1);  // sigma(W_1) = (2,0)
    CHECK(assoc.seq.multiplicity(Element{0, 1}) == 1);  // sigma(W_2) = (0,2)
    CHECK(assoc.seq.multiplicity(Element{0, 0}) == 1);  // sigma(W_3) = (0,0)
}

TEST_CASE("swapping equal-phi-image terms preserves the associated sequence iff equal") {
    GroupCtx c4(4);
    MulHom phi(c4, 2);
    Sequence head = Sequence::parse(c4, "(1,0) (0,1) (1,1)");
    std::vector<Sequence> blocks{Sequence::parse(c4, "(3,0) (1,0)"), Sequence::parse(c4, "(0,1)^2"),
                                 Sequence::parse(c4, "(1,1)^2")};
    Sequence source = head;
    for (const Sequence& w : blocks) source = source.concat(w);
    BlockDecomposition d{DecompKind::Weak, phi, 1, 1, source, std::nullopt, head, blocks, 0};
    AssociatedSequence before = associated_sequence(d);

    // Swap the head's (1,0) with the block's (3,0): same phi-image, different
    // elements, so the block sum moves.
    BlockDecomposition swapped = d;
    swapped.head = swapped.head.remove(Element{1, 0}, 1).concat(Element{3, 0}, 1);
    swapped.blocks[0] = Sequence::parse(c4, "(1,0)^2");
    CHECK(swapped.head.concat(swapped.blocks[0]) == d.head.concat(d.blocks[0]));
    AssociatedSequence after = associated_sequence(swapped);
    CHECK_FALSE(after.seq == before.seq);

    // Swapping equal terms is the identity on the associated sequence.
    BlockDecomposition same = d;
    same.head = same.head.remove(Element{1, 1}, 1).concat(Element{1, 1}, 1);
    same.blocks[2] = Sequence::parse(c4, "(1,1)^2");
    CHECK(associated_sequence(same).seq == before.seq);
}

TEST_CASE("recomposition holds for every produced decomposition") {
    struct Config {
        int m, n, k_m, k_n;
    };
    for (const Config& c : {Config{2, 2, 0, 0}, Config{2, 2, 1, 1}, Config{2, 3, 0, 2},
                            Config{3, 2, 1, 1}, Config{2, 3, 1, 0}, Config{2, 4, 0, 2}}) {
        GroupCtx ctx(c.m * c.n);
        Sequence S = standard_form(ctx, c.k_m * c.n + c.k_n);
        DecomposeResult r = block_decompose(S, c.m, c.n, c.k_m, c.k_n);
        REQUIRE(r.ok());
        Sequence joined = r.value->head;
        for (const Sequence& w : r.value->blocks) joined = joined.concat(w);
        CHECK(joined == r.value->star());
    }
}

TEST_CASE("associated sequences satisfy the one-level-down conjecture") {
    for (int m : {2, 3}) {
        for (int n : {2, 3}) {
            for (int k_m = 0; k_m <= m - 1; ++k_m) {
                for (int k_n = 0; k_n <= n - 1; ++k_n) {
                    GroupCtx ctx(m * n);
                    Sequence S = standard_form(ctx, k_m * n + k_n);
                    DecomposeResult r = block_decompose(S, m, n, k_m, k_n);
                    REQUIRE(r.ok());
                    CHECK(verify_decomposition(*r.value).all_pass());
                    AssociatedSequence assoc = associated_sequence(*r.value);
                    CHECK(assoc.seq.length() == 2 * m - 2 + k_m);
                    CHECK_FALSE(has_zero_sum_le(assoc.seq, 2 * m - 1 - k_m));
                    CHECK(match_conjecture(assoc.seq, k_m).matched);
                }
            }
        }
    }
}

TEST_CASE("good terms are exactly the singleton phi-fibers") {
    GroupCtx c4(4), c6(6);
    MulHom phi42(c4, 2);
    Sequence S = Sequence::parse(c4, "(1,0)^3 (3,0)");
    CHECK_FALSE(is_good_term(S, phi42, Element{1, 0}));
    CHECK_FALSE(is_good_term(S, phi42, Element{3, 0}));

    Sequence T = Sequence::parse(c4, "(1,0)^3 (0,1)^3 (1,1)^3");
    for (const Element& g : T.support()) CHECK(is_good_term(T, phi42, g));

    MulHom phi63(c6, 3);
    Sequence U = Sequence::parse(c6, "(1,0) (3,0)");
    CHECK_FALSE(is_good_term(U, phi63, Element{1, 0}));

    CHECK_THROWS_AS(is_good_term(S, phi42, Element{0, 1}), ArgumentError);
}

TEST_CASE("decomposition JSON carries the full structure") {
    GroupCtx c4(4);
    DecomposeResult r = block_decompose(standard_form(c4, 3), 2, 2, 1, 1);
    REQUIRE(r.ok());
    nlohmann::json j = to_json(*r.value);
    for (const char* field : {"kind", "m", "n", "k_m", "k_n", "g0", "head", "blocks",
                              "assoc_index", "source"}) {
        CHECK(j.contains(field));
    }
    CHECK(j["kind"] == "block");
    CHECK(j["blocks"].size() == 3);
}
