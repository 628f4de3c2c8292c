#include "zsq/group.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace zsq {

namespace {

int mod_reduce(long long x, int n) {
    long long r = x % n;
    if (r < 0) r += n;
    return static_cast<int>(r);
}

bool is_unit(long long x, int n) {
    return std::gcd(mod_reduce(x, n), n) == 1;
}

// Inverse of x mod n; x must be a unit.
int mod_inverse(int x, int n) {
    int t = 0, new_t = 1;
    int r = n, new_r = mod_reduce(x, n);
    while (new_r != 0) {
        int q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw InternalError("mod_inverse: argument is not a unit");
    return mod_reduce(t, n);
}

}  // namespace

std::string to_string(const Element& g) {
    return "(" + std::to_string(g.a) + "," + std::to_string(g.b) + ")";
}

GroupCtx::GroupCtx(int n) : n_(n) {
    if (n < 1) throw ArgumentError("group modulus must be >= 1");
}

bool GroupCtx::contains(const Element& g) const noexcept {
    return g.a >= 0 && g.a < n_ && g.b >= 0 && g.b < n_;
}

Element GroupCtx::reduce(long long a, long long b) const noexcept {
    return Element{mod_reduce(a, n_), mod_reduce(b, n_)};
}

void GroupCtx::check(const Element& g) const {
    if (!contains(g)) {
        throw ContextMismatchError("element " + to_string(g) + " does not belong to C_" +
                                   std::to_string(n_) + " + C_" + std::to_string(n_));
    }
}

Element GroupCtx::add(const Element& x, const Element& y) const {
    check(x);
    check(y);
    return reduce(static_cast<long long>(x.a) + y.a, static_cast<long long>(x.b) + y.b);
}

Element GroupCtx::sub(const Element& x, const Element& y) const {
    check(x);
    check(y);
    return reduce(static_cast<long long>(x.a) - y.a, static_cast<long long>(x.b) - y.b);
}

Element GroupCtx::neg(const Element& x) const {
    check(x);
    return reduce(-static_cast<long long>(x.a), -static_cast<long long>(x.b));
}

Element GroupCtx::scalar(long long c, const Element& x) const {
    check(x);
    return reduce(c * x.a, c * x.b);
}

int GroupCtx::index_of(const Element& g) const {
    check(g);
    return g.a * n_ + g.b;
}

Element GroupCtx::element_at(int index) const {
    if (index < 0 || index >= order()) throw ArgumentError("element index out of range");
    return Element{index / n_, index % n_};
}

std::vector<Element> GroupCtx::elements() const {
    std::vector<Element> out;
    out.reserve(order());
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) out.push_back(Element{a, b});
    return out;
}

Element AutMatrix::apply(const GroupCtx& ctx, const Element& g) const {
    return ctx.reduce(static_cast<long long>(p) * g.a + static_cast<long long>(q) * g.b,
                      static_cast<long long>(r) * g.a + static_cast<long long>(s) * g.b);
}

int AutMatrix::det_mod(int n) const {
    return mod_reduce(static_cast<long long>(p) * s - static_cast<long long>(q) * r, n);
}

std::string AutMatrix::str() const {
    return "[[" + std::to_string(p) + "," + std::to_string(q) + "],[" + std::to_string(r) + "," +
           std::to_string(s) + "]]";
}

bool is_basis(const GroupCtx& ctx, const Element& e1, const Element& e2) {
    if (!ctx.contains(e1) || !ctx.contains(e2)) {
        throw ContextMismatchError("basis candidates must belong to the group");
    }
    long long det = static_cast<long long>(e1.a) * e2.b - static_cast<long long>(e2.a) * e1.b;
    return is_unit(det, ctx.modulus());
}

std::vector<AutMatrix> enumerate_automorphisms(const GroupCtx& ctx, int guard) {
    int n = ctx.modulus();
    if (n > guard) {
        throw FeasibilityError("automorphism enumeration refused: n = " + std::to_string(n) +
                               " exceeds guard " + std::to_string(guard));
    }
    std::vector<AutMatrix> out;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
                for (int s = 0; s < n; ++s) {
                    AutMatrix m{p, q, r, s};
                    if (is_unit(m.det_mod(n), n)) out.push_back(m);
                }
    return out;
}

std::vector<Basis> enumerate_bases(const GroupCtx& ctx, int guard) {
    // Columns of an invertible matrix are the images of the standard basis.
    std::vector<Basis> out;
    for (const AutMatrix& m : enumerate_automorphisms(ctx, guard)) {
        out.emplace_back(Element{m.p, m.r}, Element{m.q, m.s});
    }
    std::sort(out.begin(), out.end());
    return out;
}

int element_order(const GroupCtx& ctx, const Element& g) {
    if (!ctx.contains(g)) throw ContextMismatchError("element outside group");
    Element cur = g;
    int t = 1;
    while (cur != ctx.zero()) {
        cur = ctx.add(cur, g);
        ++t;
    }
    return t;
}

std::optional<int> discrete_log(const GroupCtx& ctx, const Element& base, const Element& target) {
    Element cur = ctx.zero();
    for (int t = 0; t < ctx.modulus(); ++t) {
        if (cur == target) return t;
        cur = ctx.add(cur, base);
    }
    return std::nullopt;
}

MulHom::MulHom(const GroupCtx& source, int m) : source_(source), m_(m), n_(0) {
    if (m < 1) throw ArgumentError("multiplier must be >= 1");
    if (source.modulus() % m != 0) {
        throw ArgumentError("multiplier " + std::to_string(m) + " does not divide modulus " +
                            std::to_string(source.modulus()));
    }
    n_ = source.modulus() / m;
}

Element MulHom::map(const Element& x) const { return source_.scalar(m_, x); }

bool MulHom::in_kernel(const Element& x) const {
    if (!source_.contains(x)) throw ContextMismatchError("element outside source group");
    return x.a % n_ == 0 && x.b % n_ == 0;
}

std::vector<Element> MulHom::kernel_elements() const {
    std::vector<Element> out;
    out.reserve(m_ * m_);
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) out.push_back(Element{i * n_, j * n_});
    std::sort(out.begin(), out.end());
    return out;
}

Element kernel_coords(const MulHom& hom, const Basis& source_basis, const Element& x) {
    const GroupCtx& src = hom.source();
    const auto& [E1, E2] = source_basis;
    if (!is_basis(src, E1, E2)) throw ArgumentError("kernel_coords: not a basis of the source group");
    if (!hom.in_kernel(x)) {
        throw DomainError("kernel_coords: " + to_string(x) + " is not in ker(phi)");
    }
    int m = hom.multiplier();
    int n = hom.image_modulus();
    if (m == 1) return Element{0, 0};
    // x = n*M*(u,v) mod mn with M = [[E1.a,E2.a],[E1.b,E2.b]] reduces to
    // M*(u,v) = (x.a/n, x.b/n) mod m; solve with the adjugate.
    int y1 = (x.a / n) % m, y2 = (x.b / n) % m;
    long long det = static_cast<long long>(E1.a) * E2.b - static_cast<long long>(E2.a) * E1.b;
    int inv = mod_inverse(mod_reduce(det, m), m);
    long long u = static_cast<long long>(E2.b) * y1 - static_cast<long long>(E2.a) * y2;
    long long v = -static_cast<long long>(E1.b) * y1 + static_cast<long long>(E1.a) * y2;
    Element out{mod_reduce(u * inv, m), mod_reduce(v * inv, m)};
    // Cross-check the defining relation; a valid basis always solves it.
    Element lhs = src.add(src.scalar(static_cast<long long>(out.a) * n, E1),
                          src.scalar(static_cast<long long>(out.b) * n, E2));
    if (lhs != x) throw InternalError("kernel_coords: coordinates do not reproduce the element");
    return out;
}

}  // namespace zsq
