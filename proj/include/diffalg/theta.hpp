#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "diffalg/error.hpp"

namespace diffalg {

// Word in the free monoid of derivation symbols: indices into a derivation
// list, written left to right, applied rightmost first (operator
// composition).
using ThetaWord = std::vector<std::uint32_t>;

// Multi-index in the free commutative monoid: exponent per derivation.
using ThetaAb = std::vector<std::uint32_t>;

inline std::uint32_t theta_order(const ThetaWord& w) { return static_cast<std::uint32_t>(w.size()); }
inline std::uint32_t theta_ab_order(const ThetaAb& t) {
    return std::accumulate(t.begin(), t.end(), 0u);
}

inline ThetaAb word_to_ab(const ThetaWord& w, std::size_t d) {
    ThetaAb t(d, 0);
    for (auto i : w) t.at(i)++;
    return t;
}

inline bool theta_ab_divides(const ThetaAb& a, const ThetaAb& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline ThetaAb theta_ab_mul(const ThetaAb& a, const ThetaAb& b) {
    ThetaAb r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline ThetaAb theta_ab_sub(const ThetaAb& a, const ThetaAb& b) {
    ThetaAb r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

namespace detail {
inline unsigned long long binom_ull(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned long long r = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i; // exact at each step
    }
    return r;
}
} // namespace detail

// Generalized binomial coefficient binom(theta, theta') = prod over i of
// binom(e_i(theta), e_i(theta')), extended by zero when theta' does not
// divide theta.
inline unsigned long long theta_binomial(const ThetaAb& t, const ThetaAb& s) {
    if (t.size() != s.size()) throw DomainError("theta_binomial: mismatched index lengths");
    unsigned long long r = 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (s[i] > t[i]) return 0;
        r *= detail::binom_ull(t[i], s[i]);
    }
    return r;
}

// Orders on the commutative monoid: plain lex on the exponent vector, and
// the Keigher order comparing (total order, exponent vector) lexicographically.
enum class ThetaOrderKind { Lex, Keigher };

inline int theta_compare(const ThetaAb& a, const ThetaAb& b, ThetaOrderKind kind) {
    if (a.size() != b.size()) throw DomainError("theta_compare: mismatched index lengths");
    if (kind == ThetaOrderKind::Keigher) {
        std::uint32_t ea = theta_ab_order(a), eb = theta_ab_order(b);
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1; // first coordinate dominant
    return 0;
}

// Enumerate all multi-indices of order <= N over d derivations (graded order,
// deterministic).
inline std::vector<ThetaAb> all_theta_ab(std::size_t d, std::uint32_t N) {
    std::vector<ThetaAb> out;
    out.push_back(ThetaAb(d, 0));
    for (std::uint32_t level = 1; level <= N; ++level) {
        std::size_t start = 0;
        // extend each index of order level-1 by one derivation, dedupe by
        // only incrementing at or after the last touched position
        std::vector<ThetaAb> prev;
        for (const auto& t : out)
            if (theta_ab_order(t) == level - 1) prev.push_back(t);
        (void)start;
        std::vector<ThetaAb> next;
        for (const auto& t : prev) {
            std::size_t first = 0;
            for (std::size_t i = d; i-- > 0;)
                if (t[i] > 0) { first = i; break; }
            for (std::size_t i = first; i < d; ++i) {
                ThetaAb s(t);
                s[i]++;
                next.push_back(s);
            }
        }
        for (auto& t : next) out.push_back(std::move(t));
    }
    return out;
}

// Enumerate all words of length <= N over d symbols.
inline std::vector<ThetaWord> all_theta_words(std::size_t d, std::uint32_t N) {
    std::vector<ThetaWord> out;
    out.push_back({});
    std::size_t level_start = 0;
    for (std::uint32_t level = 1; level <= N; ++level) {
        std::size_t level_end = out.size();
        for (std::size_t k = level_start; k < level_end; ++k) {
            for (std::uint32_t i = 0; i < d; ++i) {
                ThetaWord w = out[k];
                w.push_back(i);
                out.push_back(std::move(w));
                if (out.size() > limits().max_monomials)
                    throw ResourceError("word enumeration cap exceeded");
            }
        }
        level_start = level_end;
    }
    return out;
}

inline std::string theta_word_str(const ThetaWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (auto i : w) s += "d" + std::to_string(i);
    return s;
}

} // namespace diffalg
