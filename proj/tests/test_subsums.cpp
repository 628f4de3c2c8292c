#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "zsq/structure.hpp"
#include "zsq/subsums.hpp"

using namespace zsq;

namespace {

std::set<Element> layer_set(const SubsumTable& t, int k) {
    auto v = t.sums_of_length(k);
    return std::set<Element>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("layered table matches direct enumeration on the worked example") {
    GroupCtx c3(3);
    Sequence S = Sequence::parse(c3, "(1,0)^2 (0,1)^2");
    SubsumTable t = SubsumTable::build(S, 2);
    CHECK(layer_set(t, 0) == std::set<Element>{Element{0, 0}});
    CHECK(layer_set(t, 1) == std::set<Element>{Element{0, 1}, Element{1, 0}});
    CHECK(layer_set(t, 2) == std::set<Element>{Element{0, 2}, Element{1, 1}, Element{2, 0}});
    CHECK(layer_set(t, 1) == oracle::sums_of_length(S, 1));
    CHECK(layer_set(t, 2) == oracle::sums_of_length(S, 2));
    CHECK_THROWS_AS(SubsumTable::build(S, 5), ArgumentError);

    GroupCtx c2(2);
    SubsumTable t2 = SubsumTable::build(Sequence::parse(c2, "(1,1)^2"), 2);
    CHECK(layer_set(t2, 2) == std::set<Element>{Element{0, 0}});
}

TEST_CASE("bitset rotation agrees with the index permutation") {
    std::mt19937_64 rng(3);
    for (int n : {2, 3, 4, 5, 7, 9, 12, 20}) {
        GroupCtx ctx(n);
        const ShiftPlan& plan = shift_plan_for(n);
        for (int trial = 0; trial < 20; ++trial) {
            SumSet src(ctx);
            for (int i = 0; i < ctx.order(); ++i) {
                if (rng() % 3 == 0) src.set(i);
            }
            Element g = ctx.element_at(static_cast<int>(rng() % ctx.order()));
            SumSet fast(ctx), naive(ctx);
            plan.or_rotated(fast, src, g);
            for (int i = 0; i < ctx.order(); ++i) {
                if (src.test(i)) naive.set(ctx.index_of(ctx.add(ctx.element_at(i), g)));
            }
            CHECK(fast == naive);
        }
    }
}

TEST_CASE("sigma_le unions the nonempty layers") {
    GroupCtx c3(3), c2(2);
    Sequence S = Sequence::parse(c3, "(1,0)^2 (0,1)^2");
    auto got = sigma_le(S, 2);
    std::vector<Element> want{{0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
    CHECK(got == want);

    CHECK(sigma_le(Sequence(c3), 3).empty());
    auto small = sigma_le(Sequence::parse(c2, "(1,0)^2"), 2);
    CHECK(small == std::vector<Element>{{0, 0}, {1, 0}});
    CHECK_THROWS_AS(sigma_le(S, 0), ArgumentError);
}

TEST_CASE("zero-sum detection short-circuits correctly") {
    GroupCtx c4(4), c2(2), c3(3);
    CHECK_FALSE(has_zero_sum_le(Sequence::parse(c4, "(1,0)^3 (0,1)^3 (1,1)^2"), 5));
    CHECK(oracle::has_zero_le(Sequence::parse(c4, "(1,0)^3 (0,1)^3 (1,1)^2"), 5) == false);
    CHECK(has_zero_sum_le(Sequence::parse(c2, "(1,0) (0,1) (1,1) (1,0)"), 2));
    CHECK_FALSE(has_zero_sum_le(Sequence::parse(c3, "(1,0)^2 (0,1)^2"), 4));
}

TEST_CASE("witness extraction is deterministic and valid") {
    GroupCtx c2(2), c4(4), c3(3);
    auto w1 = find_zero_sum_le(Sequence::parse(c2, "(1,0)^2 (0,1)"), 2);
    REQUIRE(w1.has_value());
    CHECK(w1->str() == "(1,0)^2");

    CHECK_FALSE(find_zero_sum_le(Sequence::parse(c4, "(1,0)^3 (0,1)^3 (1,1)^2"), 5).has_value());

    auto w3 = find_zero_sum_le(Sequence::parse(c3, "(1,0) (2,0) (0,1)"), 2, WitnessMode::Shortest);
    REQUIRE(w3.has_value());
    CHECK(w3->str() == "(1,0) (2,0)");

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        GroupCtx ctx(2 + static_cast<int>(rng() % 4));
        Sequence S = oracle::random_sequence(ctx, 1 + static_cast<int>(rng() % 10), rng);
        int ell = 1 + static_cast<int>(rng() % 6);
        auto w = find_zero_sum_le(S, ell, WitnessMode::Shortest);
        CHECK(w.has_value() == has_zero_sum_le(S, ell));
        if (w) {
            CHECK(S.contains(*w));
            CHECK(w->length() >= 1);
            CHECK(w->length() <= std::min(ell, S.length()));
            CHECK(w->sigma() == ctx.zero());
            for (int t = 1; t < w->length(); ++t) {
                CHECK_FALSE(oracle::sums_of_length(S, t).count(ctx.zero()));
            }
        }
    }
}

TEST_CASE("zero-sum classification") {
    GroupCtx c3(3), c2(2);
    CHECK(zero_sum_classify(Sequence::parse(c3, "(1,0)^2 (0,1)^2 (1,1)")) ==
          ZeroSumClass::MinimalZeroSum);
    CHECK(zero_sum_classify(Sequence(c3)) == ZeroSumClass::ZeroSumFree);
    CHECK(zero_sum_classify(Sequence::parse(c2, "(1,0)^2 (0,1)^2")) ==
          ZeroSumClass::ZeroSumReducible);
    CHECK(zero_sum_classify(Sequence::parse(c3, "(1,0) (2,0) (0,1)")) == ZeroSumClass::NonzeroSum);
    CHECK(zero_sum_classify(Sequence::parse(c3, "(1,0)^2")) == ZeroSumClass::ZeroSumFree);
}

TEST_CASE("minimality matches the term-removal characterization") {
    std::mt19937_64 rng(23);
    int minimal_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        GroupCtx ctx(2 + static_cast<int>(rng() % 3));
        Sequence S = oracle::random_sequence(ctx, 1 + static_cast<int>(rng() % 7), rng);
        if (S.sigma() != ctx.zero()) continue;
        bool removal_free = true;
        for (const Element& g : S.support()) {
            Sequence rest = S.remove(g, 1);
            if (!rest.empty() && oracle::has_zero_le(rest, rest.length())) removal_free = false;
        }
        bool minimal = zero_sum_classify(S) == ZeroSumClass::MinimalZeroSum;
        CHECK(minimal == removal_free);
        if (minimal) ++minimal_seen;
    }
    CHECK(minimal_seen > 0);
}

TEST_CASE("table equals the enumeration oracle on random sequences") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 150; ++trial) {
        GroupCtx ctx(2 + static_cast<int>(rng() % 4));
        Sequence S = oracle::random_sequence(ctx, static_cast<int>(rng() % 15), rng);
        SubsumTable t = SubsumTable::build(S, S.length());
        auto expected = oracle::subsums_by_length(S);
        for (int k = 0; k <= S.length(); ++k) {
            std::set<Element> want =
                expected.count(k) ? expected.at(k) : std::set<Element>{};
            CHECK(layer_set(t, k) == want);
        }
    }
}

TEST_CASE("every reachable sum extends a sum one layer down") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 80; ++trial) {
        GroupCtx ctx(2 + static_cast<int>(rng() % 4));
        Sequence S = oracle::random_sequence(ctx, 1 + static_cast<int>(rng() % 10), rng);
        SubsumTable t = SubsumTable::build(S, S.length());
        for (int k = 1; k <= S.length(); ++k) {
            for (const Element& s : t.sums_of_length(k)) {
                bool extendable = false;
                for (const Element& g : S.support()) {
                    if (t.contains(k - 1, ctx.sub(s, g))) extendable = true;
                }
                CHECK(extendable);
            }
        }
    }
}

TEST_CASE("complement identity: Sigma_t(S) = sigma(S) - Sigma_{|S|-t}(S)") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        GroupCtx ctx(2 + static_cast<int>(rng() % 4));
        Sequence S = oracle::random_sequence(ctx, 1 + static_cast<int>(rng() % 12), rng);
        SubsumTable t = SubsumTable::build(S, S.length());
        Element total = S.sigma();
        for (int k = 0; k <= S.length(); ++k) {
            std::set<Element> reflected;
            for (const Element& s : t.sums_of_length(S.length() - k)) {
                reflected.insert(ctx.sub(total, s));
            }
            CHECK(layer_set(t, k) == reflected);
        }
    }
}

TEST_CASE("subsum monotonicity in the bound and in the sequence") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        GroupCtx ctx(2 + static_cast<int>(rng() % 4));
        Sequence S = oracle::random_sequence(ctx, 2 + static_cast<int>(rng() % 9), rng);
        int ell = 1 + static_cast<int>(rng() % S.length());
        auto smaller = sigma_le(S, ell);
        auto larger = sigma_le(S, ell + 1);
        CHECK(std::includes(larger.begin(), larger.end(), smaller.begin(), smaller.end()));

        Element g = S.support()[rng() % S.support().size()];
        auto sub = sigma_le(S.remove(g, 1), ell);
        auto full = sigma_le(S, ell);
        CHECK(std::includes(full.begin(), full.end(), sub.begin(), sub.end()));
    }
}

TEST_CASE("pigeonhole: length 3n-2 forces a zero-sum of length at most n") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        GroupCtx ctx(n);
        int len = 3 * n - 2 + static_cast<int>(rng() % 5);
        Sequence S = oracle::random_sequence(ctx, len, rng);
        CHECK(has_zero_sum_le(S, n));
    }
}

TEST_CASE("subsums are automorphism-equivariant") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 60; ++trial) {
        GroupCtx ctx(2 + static_cast<int>(rng() % 4));
        Sequence S = oracle::random_sequence(ctx, 1 + static_cast<int>(rng() % 9), rng);
        const auto& auts = automorphisms_for(ctx);
        const AutMatrix& psi = auts[rng() % auts.size()];
        SubsumTable t = SubsumTable::build(S, S.length());
        SubsumTable ti = SubsumTable::build(apply_map(psi, S), S.length());
        for (int k = 0; k <= S.length(); ++k) {
            std::set<Element> mapped;
            for (const Element& s : t.sums_of_length(k)) mapped.insert(psi.apply(ctx, s));
            CHECK(layer_set(ti, k) == mapped);
        }
    }
}
