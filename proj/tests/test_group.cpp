#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "zsq/group.hpp"

using namespace zsq;

TEST_CASE("element arithmetic reduces componentwise") {
    GroupCtx c4(4), c5(5), c3(3);
    CHECK(c4.add(Element{3, 2}, Element{2, 3}) == Element{1, 1});
    CHECK(c5.neg(Element{0, 0}) == Element{0, 0});
    CHECK(c3.scalar(2, Element{2, 1}) == Element{1, 2});
    CHECK(c4.sub(Element{0, 1}, Element{3, 3}) == Element{1, 2});
    CHECK_THROWS_AS(c3.add(Element{3, 0}, Element{0, 0}), ContextMismatchError);
    CHECK_THROWS_AS(GroupCtx(0), ArgumentError);
}

TEST_CASE("is_basis agrees with the unit-determinant criterion and spans") {
    GroupCtx c4(4);
    CHECK(is_basis(c4, Element{1, 0}, Element{0, 1}));
    CHECK(is_basis(c4, Element{1, 0}, Element{2, 1}));
    CHECK(oracle::span_size(c4, Element{1, 0}, Element{2, 1}) == 16);
    CHECK_FALSE(is_basis(c4, Element{1, 0}, Element{2, 0}));

    for (int n = 2; n <= 8; ++n) {
        GroupCtx ctx(n);
        for (const Element& e1 : ctx.elements()) {
            for (const Element& e2 : ctx.elements()) {
                bool spans = oracle::span_size(ctx, e1, e2) == ctx.order();
                CHECK(is_basis(ctx, e1, e2) == spans);
            }
        }
    }
}

TEST_CASE("automorphism enumeration counts |GL2(Z_n)|") {
    CHECK(enumerate_automorphisms(GroupCtx(2)).size() == 6);
    CHECK(enumerate_automorphisms(GroupCtx(3)).size() == 48);
    CHECK(enumerate_automorphisms(GroupCtx(4)).size() == 96);
    CHECK_THROWS_AS(enumerate_automorphisms(GroupCtx(13)), FeasibilityError);
}

TEST_CASE("automorphisms are additive bijections") {
    for (int n : {2, 3, 4}) {
        GroupCtx ctx(n);
        for (const AutMatrix& psi : enumerate_automorphisms(ctx)) {
            std::set<Element> image;
            for (const Element& x : ctx.elements()) image.insert(psi.apply(ctx, x));
            CHECK(static_cast<int>(image.size()) == ctx.order());
            for (const Element& x : ctx.elements()) {
                for (const Element& y : ctx.elements()) {
                    CHECK(psi.apply(ctx, ctx.add(x, y)) ==
                          ctx.add(psi.apply(ctx, x), psi.apply(ctx, y)));
                }
            }
        }
    }
}

TEST_CASE("text forms") {
    CHECK(to_string(Element{3, 1}) == "(3,1)");
    CHECK(AutMatrix{1, 2, 3, 0}.str() == "[[1,2],[3,0]]");
}

TEST_CASE("bases are automorphism columns, sorted") {
    GroupCtx c3(3);
    auto bases = enumerate_bases(c3);
    CHECK(bases.size() == 48);
    CHECK(std::is_sorted(bases.begin(), bases.end()));
    for (const auto& [e1, e2] : bases) CHECK(is_basis(c3, e1, e2));
}

TEST_CASE("multiplication homomorphism and its kernel") {
    GroupCtx c4(4), c6(6);
    MulHom phi42(c4, 2);
    CHECK(phi42.map(Element{1, 3}) == Element{2, 2});
    MulHom phi62(c6, 2);
    CHECK(phi62.map(Element{0, 0}) == Element{0, 0});

    MulHom phi63(c6, 3);
    std::vector<Element> expected{{0, 0}, {0, 2}, {0, 4}, {2, 0}, {2, 2},
                                  {2, 4}, {4, 0}, {4, 2}, {4, 4}};
    CHECK(phi63.kernel_elements() == expected);
    for (const Element& x : expected) {
        CHECK(phi63.in_kernel(x));
        CHECK(phi63.map(x) == Element{0, 0});
    }

    CHECK_THROWS_AS(MulHom(c6, 4), ArgumentError);
}

TEST_CASE("homomorphism law, kernel and image sizes (exhaustive mn <= 12)") {
    for (int mn : {4, 6, 8, 9, 12}) {
        GroupCtx ctx(mn);
        for (int m = 2; m <= mn; ++m) {
            if (mn % m != 0) continue;
            MulHom phi(ctx, m);
            std::set<Element> image;
            int kernel = 0;
            for (const Element& x : ctx.elements()) {
                image.insert(phi.map(x));
                if (phi.map(x) == ctx.zero()) {
                    ++kernel;
                    CHECK(phi.in_kernel(x));
                } else {
                    CHECK_FALSE(phi.in_kernel(x));
                }
                for (const Element& y : ctx.elements()) {
                    CHECK(phi.map(ctx.add(x, y)) == ctx.add(phi.map(x), phi.map(y)));
                }
            }
            CHECK(kernel == m * m);
            int n = mn / m;
            CHECK(static_cast<int>(image.size()) == n * n);
        }
    }
}

TEST_CASE("kernel coordinates") {
    GroupCtx c4(4), c6(6);
    Basis std4{Element{1, 0}, Element{0, 1}};
    CHECK(kernel_coords(MulHom(c4, 2), std4, Element{2, 2}) == Element{1, 1});
    Basis std6{Element{1, 0}, Element{0, 1}};
    CHECK(kernel_coords(MulHom(c6, 3), std6, Element{4, 0}) == Element{2, 0});
    CHECK(kernel_coords(MulHom(c6, 2), std6, Element{3, 3}) == Element{1, 1});
    CHECK_THROWS_AS(kernel_coords(MulHom(c6, 2), std6, Element{1, 0}), DomainError);
}

TEST_CASE("kernel coordinates are a group isomorphism (exhaustive mn <= 12)") {
    for (int mn : {4, 6, 9, 10, 12}) {
        GroupCtx ctx(mn);
        for (int m = 2; m < mn; ++m) {
            if (mn % m != 0) continue;
            MulHom phi(ctx, m);
            GroupCtx kctx = phi.kernel_ctx();
            for (const Basis& basis :
                 {Basis{Element{1, 0}, Element{0, 1}}, Basis{Element{1, 1}, Element{0, 1}}}) {
                std::set<Element> image;
                for (const Element& x : phi.kernel_elements()) {
                    image.insert(kernel_coords(phi, basis, x));
                    for (const Element& y : phi.kernel_elements()) {
                        Element lhs = kernel_coords(phi, basis, ctx.add(x, y));
                        Element rhs = kctx.add(kernel_coords(phi, basis, x),
                                               kernel_coords(phi, basis, y));
                        CHECK(lhs == rhs);
                    }
                }
                CHECK(static_cast<int>(image.size()) == m * m);
            }
        }
    }
}

TEST_CASE("element orders and discrete logs") {
    GroupCtx c6(6);
    CHECK(element_order(c6, Element{1, 0}) == 6);
    CHECK(element_order(c6, Element{3, 0}) == 2);
    CHECK(element_order(c6, Element{0, 0}) == 1);
    CHECK(discrete_log(c6, Element{1, 0}, Element{4, 0}) == 4);
    CHECK_FALSE(discrete_log(c6, Element{2, 0}, Element{3, 0}).has_value());
}
