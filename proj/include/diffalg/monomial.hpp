#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

#include "diffalg/error.hpp"

namespace diffalg {

// Exponent vector with cached total degree.  The variable list lives in the
// ring; a monomial only stores exponents, one per ring variable.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> e) : e_(std::move(e)) {
        deg_ = std::accumulate(e_.begin(), e_.end(), 0u);
    }

    static Monomial var(std::size_t nvars, std::size_t i, std::uint32_t k = 1) {
        Monomial m(nvars);
        m.e_[i] = k;
        m.deg_ = k;
        return m;
    }

    std::size_t nvars() const { return e_.size(); }
    std::uint32_t deg() const { return deg_; }
    std::uint32_t exp(std::size_t i) const { return e_[i]; }
    const std::vector<std::uint32_t>& exps() const { return e_; }
    bool is_one() const { return deg_ == 0; }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        r.deg_ += o.deg_;
        check_degree(r.deg_);
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    // this / o; caller guarantees o.divides(*this)
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        r.deg_ -= o.deg_;
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r(*this);
        r.deg_ = 0;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] = std::max(e_[i], o.e_[i]);
            r.deg_ += r.e_[i];
        }
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0 && o.e_[i] > 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<std::uint32_t> e_;
    std::uint32_t deg_ = 0;
};

// Term orders for the Groebner kernel: lex, degrevlex (the default), and an
// elimination block order that makes every monomial involving a variable of
// the block larger than any monomial free of it.
struct MonomialOrder {
    enum class Kind : int { Lex = 0, DegRevLex = 1, Elim = 2 };

    Kind kind = Kind::DegRevLex;
    std::vector<std::uint32_t> block; // eliminated variable indices (sorted), Elim only

    static MonomialOrder lex() { return {Kind::Lex, {}}; }
    static MonomialOrder degrevlex() { return {Kind::DegRevLex, {}}; }
    static MonomialOrder elim(std::vector<std::uint32_t> vars) {
        std::sort(vars.begin(), vars.end());
        return {Kind::Elim, std::move(vars)};
    }

    bool operator==(const MonomialOrder&) const = default;
    // map-key ordering for the Groebner cache
    bool operator<(const MonomialOrder& o) const {
        if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
        return block < o.block;
    }
};

namespace detail {

inline int cmp_lex(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.nvars(); ++i) {
        if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i) ? -1 : 1;
    }
    return 0;
}

inline int cmp_degrevlex(const Monomial& a, const Monomial& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (std::size_t i = a.nvars(); i-- > 0;) {
        if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? -1 : 1;
    }
    return 0;
}

// degrevlex restricted to the index subset `sel` (must be sorted ascending)
inline int cmp_degrevlex_subset(const Monomial& a, const Monomial& b,
                                const std::vector<std::uint32_t>& sel) {
    std::uint32_t da = 0, db = 0;
    for (auto i : sel) { da += a.exp(i); db += b.exp(i); }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t k = sel.size(); k-- > 0;) {
        std::uint32_t i = sel[k];
        if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i) ? -1 : 1;
    }
    return 0;
}

} // namespace detail

// Three-way comparison; negative means a < b in the order.
inline int mono_cmp(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
    switch (ord.kind) {
    case MonomialOrder::Kind::Lex:
        return detail::cmp_lex(a, b);
    case MonomialOrder::Kind::DegRevLex:
        return detail::cmp_degrevlex(a, b);
    case MonomialOrder::Kind::Elim: {
        if (int c = detail::cmp_degrevlex_subset(a, b, ord.block)) return c;
        std::vector<std::uint32_t> rest;
        rest.reserve(a.nvars());
        std::size_t bi = 0;
        for (std::uint32_t i = 0; i < a.nvars(); ++i) {
            if (bi < ord.block.size() && ord.block[bi] == i) { ++bi; continue; }
            rest.push_back(i);
        }
        return detail::cmp_degrevlex_subset(a, b, rest);
    }
    }
    return 0;
}

// Strict-less comparator usable as a std::map key comparator.
struct MonoLess {
    MonomialOrder ord = MonomialOrder::degrevlex();
    bool operator()(const Monomial& a, const Monomial& b) const {
        return mono_cmp(a, b, ord) < 0;
    }
};

} // namespace diffalg
