#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zsq/errors.hpp"

namespace zsq {

/// A point of C_n + C_n, stored as canonical least non-negative residues.
struct Element {
    int a = 0;
    int b = 0;

    friend auto operator<=>(const Element&, const Element&) = default;
};

std::string to_string(const Element& g);

/// Default bound on n for operations that enumerate GL2(Z_n).
inline constexpr int kDefaultAutGuard = 12;

/// Ambient group C_n + C_n. All arithmetic reduces componentwise mod n.
class GroupCtx {
public:
    explicit GroupCtx(int n);

    int modulus() const noexcept { return n_; }
    int order() const noexcept { return n_ * n_; }

    bool contains(const Element& g) const noexcept;
    Element reduce(long long a, long long b) const noexcept;

    Element add(const Element& x, const Element& y) const;
    Element sub(const Element& x, const Element& y) const;
    Element neg(const Element& x) const;
    Element scalar(long long c, const Element& x) const;
    Element zero() const noexcept { return Element{0, 0}; }

    /// Bitset/array index of an element: a*n + b.
    int index_of(const Element& g) const;
    Element element_at(int index) const;
    std::vector<Element> elements() const;

    friend bool operator==(const GroupCtx&, const GroupCtx&) = default;

private:
    void check(const Element& g) const;

    int n_;
};

/// Automorphism of C_n + C_n: (a,b) -> (p*a + q*b, r*a + s*b) mod n.
/// Valid iff det = p*s - q*r is a unit mod n.
struct AutMatrix {
    int p = 1, q = 0, r = 0, s = 1;

    Element apply(const GroupCtx& ctx, const Element& g) const;
    int det_mod(int n) const;
    std::string str() const;  // "[[p,q],[r,s]]"

    friend auto operator<=>(const AutMatrix&, const AutMatrix&) = default;
};

using Basis = std::pair<Element, Element>;

/// True iff G = <e1> + <e2>, i.e. the coordinate matrix of (e1,e2) has unit
/// determinant mod n.
bool is_basis(const GroupCtx& ctx, const Element& e1, const Element& e2);

/// All of GL2(Z_n), in lexicographic (p,q,r,s) order. Guarded.
std::vector<AutMatrix> enumerate_automorphisms(const GroupCtx& ctx, int guard = kDefaultAutGuard);

/// All ordered bases (e1,e2), sorted lexicographically by coordinates. Guarded.
std::vector<Basis> enumerate_bases(const GroupCtx& ctx, int guard = kDefaultAutGuard);

int element_order(const GroupCtx& ctx, const Element& g);

/// Least t >= 0 with t*base == target, if target lies in <base>.
std::optional<int> discrete_log(const GroupCtx& ctx, const Element& base, const Element& target);

/// Multiplication-by-m homomorphism on C_mn + C_mn: x -> m*x.
/// Image = mG is isomorphic to C_n + C_n; kernel = nG is isomorphic to C_m + C_m.
class MulHom {
public:
    MulHom(const GroupCtx& source, int m);

    const GroupCtx& source() const noexcept { return source_; }
    int multiplier() const noexcept { return m_; }
    /// n = source modulus / m; the image is C_n + C_n.
    int image_modulus() const noexcept { return n_; }

    Element map(const Element& x) const;
    bool in_kernel(const Element& x) const;
    std::vector<Element> kernel_elements() const;  // sorted, m^2 of them

    /// Coordinate group C_m + C_m of the kernel.
    GroupCtx kernel_ctx() const { return GroupCtx(m_); }

private:
    GroupCtx source_;
    int m_;
    int n_;
};

/// Coordinates (u,v) in C_m + C_m of a kernel element x with respect to the
/// kernel basis (n*E1, n*E2) induced by a source basis (E1,E2).
Element kernel_coords(const MulHom& hom, const Basis& source_basis, const Element& x);

}  // namespace zsq
