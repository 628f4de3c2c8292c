#include "zsq/sequence.hpp"

#include <algorithm>
#include <cctype>

namespace zsq {

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
    }

    void expect(char c) {
        if (done() || peek() != c) {
            throw ParseError(std::string("expected '") + c + "'", pos);
        }
        ++pos;
    }

    long long read_int() {
        std::size_t start = pos;
        long long value = 0;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + (peek() - '0');
            if (value > 1'000'000'000LL) throw ParseError("integer too large", start);
            ++pos;
        }
        if (pos == start) throw ParseError("expected an integer", pos);
        return value;
    }
};

}  // namespace

Sequence Sequence::parse(const GroupCtx& ctx, std::string_view text) {
    Sequence out(ctx);
    Cursor cur{text};
    cur.skip_ws();
    while (!cur.done()) {
        std::size_t term_start = cur.pos;
        cur.expect('(');
        long long a = cur.read_int();
        cur.expect(',');
        long long b = cur.read_int();
        cur.expect(')');
        if (a >= ctx.modulus() || b >= ctx.modulus()) {
            throw ParseError("coordinate out of range for modulus " + std::to_string(ctx.modulus()),
                             term_start);
        }
        int count = 1;
        if (!cur.done() && cur.peek() == '^') {
            ++cur.pos;
            std::size_t exp_start = cur.pos;
            long long e = cur.read_int();
            if (e < 1) throw ParseError("exponent must be >= 1", exp_start);
            if (e > 1'000'000) throw ParseError("exponent too large", exp_start);
            count = static_cast<int>(e);
        }
        out.add_term(Element{static_cast<int>(a), static_cast<int>(b)}, count);
        cur.skip_ws();
    }
    return out;
}

void Sequence::add_term(const Element& g, int count) {
    if (!ctx_.contains(g)) {
        throw ContextMismatchError("element " + to_string(g) + " outside C_" +
                                   std::to_string(ctx_.modulus()) + " + C_" +
                                   std::to_string(ctx_.modulus()));
    }
    if (count <= 0) throw InternalError("add_term requires a positive count");
    mults_[g] += count;
    length_ += count;
}

std::string Sequence::str() const {
    std::string out;
    bool first = true;
    for (const auto& [g, m] : mults_) {
        if (!first) out += ' ';
        first = false;
        out += to_string(g);
        if (m >= 2) out += "^" + std::to_string(m);
    }
    return out;
}

int Sequence::multiplicity(const Element& g) const {
    auto it = mults_.find(g);
    return it == mults_.end() ? 0 : it->second;
}

int Sequence::height() const {
    int h = 0;
    for (const auto& [g, m] : mults_) h = std::max(h, m);
    return h;
}

std::vector<Element> Sequence::support() const {
    std::vector<Element> out;
    out.reserve(mults_.size());
    for (const auto& [g, m] : mults_) out.push_back(g);
    return out;
}

Element Sequence::sigma() const {
    long long a = 0, b = 0;
    for (const auto& [g, m] : mults_) {
        a += static_cast<long long>(g.a) * m;
        b += static_cast<long long>(g.b) * m;
    }
    return ctx_.reduce(a, b);
}

bool Sequence::contains(const Sequence& T) const {
    if (T.ctx_ != ctx_) throw ContextMismatchError("sequences over different groups");
    for (const auto& [g, m] : T.mults_) {
        if (multiplicity(g) < m) return false;
    }
    return true;
}

Sequence Sequence::concat(const Sequence& T) const {
    if (T.ctx_ != ctx_) throw ContextMismatchError("sequences over different groups");
    Sequence out = *this;
    for (const auto& [g, m] : T.mults_) out.add_term(g, m);
    return out;
}

Sequence Sequence::concat(const Element& g, int count) const {
    if (count < 1) throw ArgumentError("concat count must be >= 1");
    Sequence out = *this;
    out.add_term(g, count);
    return out;
}

Sequence Sequence::remove(const Sequence& T) const {
    if (T.ctx_ != ctx_) throw ContextMismatchError("sequences over different groups");
    Sequence out = *this;
    for (const auto& [g, m] : T.mults_) {
        auto it = out.mults_.find(g);
        if (it == out.mults_.end() || it->second < m) {
            throw SubsequenceError("cannot remove " + to_string(g) + "^" + std::to_string(m) +
                                   ": not a subsequence");
        }
        it->second -= m;
        if (it->second == 0) out.mults_.erase(it);
        out.length_ -= m;
    }
    return out;
}

Sequence Sequence::remove(const Element& g, int count) const {
    if (count < 1) throw ArgumentError("remove count must be >= 1");
    if (multiplicity(g) < count) {
        throw SubsequenceError("cannot remove " + to_string(g) + "^" + std::to_string(count) +
                               ": not a subsequence");
    }
    Sequence out = *this;
    auto it = out.mults_.find(g);
    it->second -= count;
    if (it->second == 0) out.mults_.erase(it);
    out.length_ -= count;
    return out;
}

bool Sequence::lex_less(const Sequence& lhs, const Sequence& rhs) {
    auto li = lhs.mults_.begin();
    auto ri = rhs.mults_.begin();
    int lrem = li == lhs.mults_.end() ? 0 : li->second;
    int rrem = ri == rhs.mults_.end() ? 0 : ri->second;
    while (li != lhs.mults_.end() && ri != rhs.mults_.end()) {
        if (li->first != ri->first) return li->first < ri->first;
        int step = std::min(lrem, rrem);
        lrem -= step;
        rrem -= step;
        if (lrem == 0) {
            ++li;
            lrem = li == lhs.mults_.end() ? 0 : li->second;
        }
        if (rrem == 0) {
            ++ri;
            rrem = ri == rhs.mults_.end() ? 0 : ri->second;
        }
    }
    return li == lhs.mults_.end() && ri != rhs.mults_.end();
}

Element parse_element(const GroupCtx& ctx, std::string_view text) {
    Cursor cur{text};
    cur.skip_ws();
    cur.expect('(');
    long long a = cur.read_int();
    cur.expect(',');
    long long b = cur.read_int();
    cur.expect(')');
    cur.skip_ws();
    if (!cur.done()) throw ParseError("trailing input after element", cur.pos);
    if (a >= ctx.modulus() || b >= ctx.modulus()) {
        throw ParseError("coordinate out of range for modulus " + std::to_string(ctx.modulus()), 0);
    }
    return Element{static_cast<int>(a), static_cast<int>(b)};
}

SequenceStats stats(const Sequence& S) {
    return SequenceStats{S.length(), S.height(), S.support_size(), S.sigma()};
}

Sequence apply_map(const AutMatrix& psi, const Sequence& S) {
    Sequence out(S.ctx());
    for (const auto& [g, m] : S.terms()) out = out.concat(psi.apply(S.ctx(), g), m);
    return out;
}

Sequence apply_map(const MulHom& phi, const Sequence& S) {
    if (phi.source() != S.ctx()) throw ContextMismatchError("sequence outside the homomorphism source");
    Sequence out(S.ctx());
    for (const auto& [g, m] : S.terms()) out = out.concat(phi.map(g), m);
    return out;
}

}  // namespace zsq
