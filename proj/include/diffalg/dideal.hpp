#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/diffring.hpp"
#include "diffalg/ideal.hpp"
#include "diffalg/linalg.hpp"
#include "diffalg/report.hpp"
#include "diffalg/rng.hpp"

namespace diffalg {

// Ideals of a differential ring are represented by ambient generators.
// Membership and equality are taken modulo the quotient ideal, so the
// effective ideal of I is I plus the quotient generators.
template <class K>
Ideal<K> effective_ideal(const DiffRing<K>& R, const Ideal<K>& I) {
    if (!R.quotient()) return I;
    auto gens = I.generators();
    for (const auto& q : R.quotient()->generators()) gens.push_back(q);
    return Ideal<K>(R.ring(), std::move(gens));
}

template <class K>
Ideal<K> zero_ideal_of(const DiffRing<K>& R) {
    if (!R.quotient()) return Ideal<K>::zero(R.ring());
    return Ideal<K>(R.ring(), R.quotient()->generators());
}

template <class K>
bool ideal_contains_in(const DiffRing<K>& R, const Ideal<K>& I, const Poly<K>& f) {
    return effective_ideal(R, I).contains(R.nf(f));
}

template <class K>
bool ideals_equal_in(const DiffRing<K>& R, const Ideal<K>& I, const Ideal<K>& J) {
    return effective_ideal(R, I).equals(effective_ideal(R, J));
}

// Derivation stability on generators suffices: every derivation maps the
// quotient ideal into itself, so d(I + Q) lies in I + Q exactly when every
// generator image does.
template <class K>
bool is_delta_ideal(const DiffRing<K>& R, const Ideal<K>& I) {
    auto E = effective_ideal(R, I);
    for (const auto& g : I.generators())
        for (std::size_t i = 0; i < R.d(); ++i)
            if (!E.contains(R.derive(g, i))) return false;
    return true;
}

template <class K>
struct DeltaClosure {
    Ideal<K> base;
    unsigned levels = 0;
    Ideal<K> result;
    // True when every generator image of the result lies back in the result,
    // i.e. the closure stabilized within the level bound.
    bool certified = false;
};

namespace detail {

// Breadth-first closure of the seed ideal under the maps step(f, i) for
// i < nmaps, up to `levels` rounds or until no new elements appear modulo
// the ideal generated so far.
template <class K, class Step>
DeltaClosure<K> close_under(const DiffRing<K>& R, const Ideal<K>& I,
                            unsigned levels, std::size_t nmaps, Step step) {
    DeltaClosure<K> out;
    out.base = I;
    out.levels = levels;
    std::vector<Poly<K>> all;
    std::vector<Poly<K>> frontier;
    for (const auto& g : I.generators()) {
        auto h = R.nf(g);
        if (!h.is_zero()) { all.push_back(h); frontier.push_back(h); }
    }
    Ideal<K> cur(R.ring(), all);
    bool stable = frontier.empty();
    for (unsigned lvl = 0; lvl < levels && !stable; ++lvl) {
        std::vector<Poly<K>> next;
        auto E = effective_ideal(R, cur);
        for (const auto& f : frontier)
            for (std::size_t i = 0; i < nmaps; ++i) {
                auto h = step(f, i);
                if (h.is_zero() || E.contains(h)) continue;
                next.push_back(h);
            }
        if (next.empty()) { stable = true; break; }
        for (const auto& h : next) all.push_back(h);
        cur = Ideal<K>(R.ring(), all);
        frontier = std::move(next);
    }
    out.result = cur;
    if (stable) {
        out.certified = true;
    } else {
        // One more sweep over the result's basis decides stability.
        bool ok = true;
        auto E = effective_ideal(R, cur);
        for (const auto& g : cur.groebner())
            for (std::size_t i = 0; i < nmaps && ok; ++i)
                if (!E.contains(step(g, i))) ok = false;
        out.certified = ok;
    }
    return out;
}

} // namespace detail

// Closure of I under the derivations of R, truncated at `levels` rounds of
// differentiation.  When the closure stabilizes early the certificate is
// exact: the result generates the smallest derivation-stable ideal
// containing I.
template <class K>
DeltaClosure<K> delta_close(const DiffRing<K>& R, const Ideal<K>& I, unsigned levels) {
    return detail::close_under(R, I, levels, R.d(),
                               [&](const Poly<K>& f, std::size_t i) { return R.derive(f, i); });
}

// Closure of I under an arbitrary family of derivations of R supplied by the
// caller; the family need not be the one carried by R and need not commute.
template <class K>
DeltaClosure<K> bracket_closure(const DiffRing<K>& R, const Ideal<K>& I,
                                const std::vector<DerivationSpec<K>>& family,
                                unsigned levels) {
    for (const auto& d : family) R.validate_family_member(d);
    return detail::close_under(R, I, levels, family.size(),
                               [&](const Poly<K>& f, std::size_t i) {
                                   return R.nf(derive_raw(f, family[i]));
                               });
}

enum class DeltaMemberStatus { Yes, NotFoundAtBound };

struct DeltaMemberResult {
    DeltaMemberStatus status = DeltaMemberStatus::NotFoundAtBound;
    // True when the answer is exact: either the element was found, or the
    // closure stabilized below the bound, so the searched ideal is the whole
    // derivation closure.
    bool definitive = false;
    unsigned bound = 0;
};

template <class K>
DeltaMemberResult delta_member(const DiffRing<K>& R, const Poly<K>& f,
                               const Ideal<K>& I, unsigned levels) {
    auto cl = delta_close(R, I, levels);
    DeltaMemberResult res;
    res.bound = levels;
    if (ideal_contains_in(R, cl.result, f)) {
        res.status = DeltaMemberStatus::Yes;
        res.definitive = true;
    } else {
        res.status = DeltaMemberStatus::NotFoundAtBound;
        res.definitive = cl.certified;
    }
    return res;
}

namespace detail {

// Grow J toward its radical: scan a pool of candidates built from iterated
// formal partials of the current basis and adjoin any candidate lying in the
// radical but not in J yet.  Every adjoined element is certified by radical
// membership, so the result always sits between J and its radical.
template <class K>
Ideal<K> radical_grow(const Ring<K>& A, Ideal<K> J) {
    for (unsigned guard = 0; guard < 64; ++guard) {
        std::vector<Poly<K>> pool;
        std::set<std::string> seen;
        std::vector<Poly<K>> queue = J.groebner();
        while (!queue.empty() && pool.size() < 256) {
            auto f = queue.back();
            queue.pop_back();
            if (f.is_zero()) continue;
            if (!seen.insert(f.str()).second) continue;
            pool.push_back(f);
            for (std::size_t v = 0; v < A.nvars(); ++v) {
                auto g = f.formal_partial(v);
                if (!g.is_zero()) queue.push_back(g);
            }
        }
        bool grew = false;
        for (const auto& h : pool) {
            if (J.contains(h)) continue;
            if (radical_member(h, J)) {
                J = J.plus(h);
                grew = true;
                break;
            }
        }
        if (!grew) return J;
    }
    return J;
}

} // namespace detail

// Approximation of the radical differential ideal generated by I: alternate
// radical growth with derivation closure until both stabilize.  Sound from
// below in characteristic zero, where radicals of derivation-stable ideals
// are again derivation-stable.
template <class K>
Ideal<K> radical_delta(const DiffRing<K>& R, const Ideal<K>& I,
                       unsigned levels, unsigned rounds = 8) {
    if (R.characteristic() != 0)
        throw DomainError("radical_delta requires characteristic zero");
    Ideal<K> J = effective_ideal(R, I);
    for (unsigned r = 0; r < rounds; ++r) {
        auto grown = detail::radical_grow(R.ring(), J);
        auto next = effective_ideal(R, delta_close(R, grown, levels).result);
        if (next.equals(J)) break;
        J = next;
    }
    return J;
}

enum class PsharpStatus { Fixpoint, DegreeExhausted, IterationCapped };

inline const char* psharp_status_name(PsharpStatus s) {
    switch (s) {
        case PsharpStatus::Fixpoint: return "fixpoint";
        case PsharpStatus::DegreeExhausted: return "degree-exhausted";
        default: return "iteration-capped";
    }
}

template <class K>
struct PsharpResult {
    Ideal<K> input;
    unsigned degree_bound = 0;
    PsharpStatus status = PsharpStatus::IterationCapped;
    // J_0 = p, then each strictly smaller iterate; ends with the zero ideal
    // when the run degree-exhausts.
    std::vector<Ideal<K>> trace;
    Ideal<K> final_ideal;
    unsigned steps = 0;
    bool delta_stable_cert = false;
    bool contained_cert = false;
};

namespace detail {

// Basis of { f in J : deg f <= D } as polynomials: monomial multiples of a
// degree-compatible Groebner basis span this space, and a row reduction
// extracts an independent subset.
template <class K>
std::vector<Poly<K>> degree_window_basis(const Ring<K>& A, const Ideal<K>& J, unsigned D) {
    const auto& gb = J.groebner();
    std::vector<Poly<K>> w;
    for (const auto& g : gb) {
        int dg = g.degree();
        if (dg < 0 || dg > static_cast<int>(D)) continue;
        for (const auto& m : standard_monomials(A, {}, D - static_cast<unsigned>(dg)))
            w.push_back(g.mono_mul(m, A.one()));
    }
    if (w.empty()) return {};
    std::map<Monomial, std::size_t, MonoLess> dict;
    for (const auto& f : w)
        for (const auto& t : f.terms()) dict.emplace(t.first, 0);
    std::vector<Monomial> cols;
    cols.reserve(dict.size());
    for (auto& [m, idx] : dict) { idx = cols.size(); cols.push_back(m); }
    Matrix<K> M(w.size(), dict.size(), A.zero());
    for (std::size_t r = 0; r < w.size(); ++r)
        for (const auto& t : w[r].terms()) M.at(r, dict.at(t.first)) = t.second;
    rref(M);
    std::vector<Poly<K>> basis;
    for (std::size_t r = 0; r < M.rows; ++r) {
        std::map<Monomial, K, MonoLess> terms;
        for (std::size_t j = 0; j < M.cols; ++j)
            if (!M.at(r, j).is_zero()) terms.emplace(cols[j], M.at(r, j));
        if (!terms.empty()) basis.push_back(Poly<K>::from_map(A, terms));
    }
    return basis;
}

// Generators of { f in J, deg f <= D : every derivation maps f into J },
// by exact linear algebra over the window basis.
template <class K>
std::vector<Poly<K>> derivation_stable_window(const DiffRing<K>& R, const Ideal<K>& J,
                                              unsigned D) {
    const auto& A = R.ring();
    auto basis = degree_window_basis(A, J, D);
    if (basis.empty()) return {};
    std::size_t nd = R.d();
    std::vector<std::vector<Poly<K>>> rem(basis.size());
    std::map<Monomial, std::size_t, MonoLess> dict;
    for (std::size_t b = 0; b < basis.size(); ++b) {
        rem[b].reserve(nd);
        for (std::size_t i = 0; i < nd; ++i) {
            auto r = J.reduce(R.derive(basis[b], i));
            for (const auto& t : r.terms()) dict.emplace(t.first, 0);
            rem[b].push_back(std::move(r));
        }
    }
    std::size_t block = 0;
    for (auto& [m, idx] : dict) {
        (void)m;
        idx = block++;
    }
    Matrix<K> C(std::max<std::size_t>(1, block * nd), basis.size(), A.zero());
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (std::size_t i = 0; i < nd; ++i)
            for (const auto& t : rem[b][i].terms())
                C.at(i * block + dict.at(t.first), b) = t.second;
    auto ker = kernel_basis(std::move(C), A.ctx());
    std::vector<Poly<K>> gens;
    for (const auto& v : ker) {
        Poly<K> f = Poly<K>::zero(A);
        for (std::size_t b = 0; b < basis.size(); ++b)
            if (!v[b].is_zero()) f += basis[b].scaled(v[b]);
        if (!f.is_zero()) gens.push_back(f);
    }
    return gens;
}

} // namespace detail

// Iterate J_{k+1} = largest degree-bounded subideal of J_k mapped into J_k
// by every derivation, from J_0 = p.  The descending chain either reaches a
// fixpoint (a certified derivation-stable ideal inside p), runs out of
// degree-D elements, or hits the iteration cap.
template <class K>
PsharpResult<K> psharp(const DiffRing<K>& R, const Ideal<K>& p,
                       unsigned D, unsigned maxiter = 32) {
    auto E = effective_ideal(R, p);
    if (E.is_unit()) throw DomainError("psharp requires a proper ideal");
    PsharpResult<K> res;
    res.input = p;
    res.degree_bound = D;
    Ideal<K> J = E;
    res.trace.push_back(J);
    bool done = false;
    for (unsigned k = 0; k < maxiter && !done; ++k) {
        auto gens = detail::derivation_stable_window(R, J, D);
        bool empty_window = gens.empty();
        if (R.quotient())
            for (const auto& q : R.quotient()->generators()) gens.push_back(q);
        Ideal<K> Jnext(R.ring(), std::move(gens));
        if (Jnext.equals(J)) {
            res.status = PsharpStatus::Fixpoint;
            res.final_ideal = J;
            res.steps = k;
            done = true;
        } else if (empty_window) {
            res.status = PsharpStatus::DegreeExhausted;
            res.final_ideal = zero_ideal_of(R);
            res.trace.push_back(res.final_ideal);
            res.steps = k + 1;
            done = true;
        } else {
            res.trace.push_back(Jnext);
            J = Jnext;
            res.steps = k + 1;
        }
    }
    if (!done) {
        res.status = PsharpStatus::IterationCapped;
        res.final_ideal = J;
    }
    res.delta_stable_cert = is_delta_ideal(R, res.final_ideal);
    res.contained_cert = true;
    for (const auto& g : res.final_ideal.generators())
        if (!E.contains(g)) res.contained_cert = false;
    return res;
}

// Search for a witness pair (a, b) with ab in J but neither factor in J,
// disproving primality.  Small monomials are scanned exhaustively, then
// random polynomial pairs are drawn from the seeded generator.
template <class K>
std::optional<std::pair<Poly<K>, Poly<K>>>
primality_falsify(const DiffRing<K>& R, const Ideal<K>& J,
                  unsigned trials, unsigned degcap, std::uint64_t seed) {
    auto E = effective_ideal(R, J);
    if (E.is_unit()) throw DomainError("primality_falsify requires a proper ideal");
    const auto& A = R.ring();
    std::vector<Poly<K>> cand;
    for (const auto& m : standard_monomials(A, {}, degcap))
        if (m.deg() >= 1) cand.push_back(Poly<K>::term(A, m, A.one()));
    auto witness = [&](const Poly<K>& a, const Poly<K>& b)
        -> std::optional<std::pair<Poly<K>, Poly<K>>> {
        if (E.contains(a) || E.contains(b) || !E.contains(a * b)) return std::nullopt;
        return std::make_pair(a, b);
    };
    for (std::size_t i = 0; i < cand.size(); ++i)
        for (std::size_t j = i; j < cand.size(); ++j)
            if (auto w = witness(cand[i], cand[j])) return w;
    Rng rng(seed);
    for (unsigned t = 0; t < trials; ++t) {
        auto a = random_poly(A, rng, degcap, 3, true);
        auto b = random_poly(A, rng, degcap, 3, true);
        if (auto w = witness(a, b)) return w;
    }
    return std::nullopt;
}

namespace detail {

// Sample pairs (x, y) with xy in I: either one factor is drawn from I, or a
// single-term generator is split between the two factors.
template <class K>
std::vector<std::pair<Poly<K>, Poly<K>>>
product_pairs(const DiffRing<K>& R, const Ideal<K>& I, Rng& rng, unsigned count) {
    const auto& A = R.ring();
    const auto& gens = I.generators();
    std::vector<std::pair<Poly<K>, Poly<K>>> out;
    if (gens.empty()) return out;
    for (unsigned s = 0; s < count; ++s) {
        auto r1 = random_poly(A, rng, 2, 2, true);
        auto r2 = random_poly(A, rng, 2, 2, true);
        const auto& g = gens[rng.below(gens.size())];
        unsigned mode = static_cast<unsigned>(rng.below(3));
        if (mode == 0) {
            out.emplace_back(r1, g * r2);
        } else if (mode == 1) {
            out.emplace_back(g * r1, r2);
        } else if (g.terms().size() == 1 && g.terms()[0].first.deg() >= 2) {
            // split the monomial generator's exponents between the factors
            const auto& m = g.terms()[0].first;
            Monomial m1(A.nvars()), m2(A.nvars());
            bool left = true;
            for (std::size_t v = 0; v < A.nvars(); ++v)
                for (std::uint32_t e = 0; e < m.exp(v); ++e) {
                    (left ? m1 : m2) = (left ? m1 : m2) * Monomial::var(A.nvars(), v);
                    left = !left;
                }
            out.emplace_back(Poly<K>::term(A, m1, A.one()) * r1,
                             Poly<K>::term(A, m2, g.terms()[0].second) * r2);
        } else {
            out.emplace_back(r1 * g, r2);
        }
    }
    return out;
}

} // namespace detail

// For a derivation-stable ideal I and xy in I, every x^(e(w)+1) * w(y) lies
// in I as well; checked over sampled factor pairs and all words up to the
// order bound.
template <class K>
Report verify_lemma_easy(const DiffRing<K>& R, const Ideal<K>& I,
                         unsigned samples, unsigned maxord, std::uint64_t seed) {
    if (!is_delta_ideal(R, I))
        throw DomainError("verify_lemma_easy requires a derivation-stable ideal");
    Report rep;
    rep.lemma = "lemma-easy";
    rep.note("seed", std::to_string(seed));
    rep.note("maxord", std::to_string(maxord));
    auto E = effective_ideal(R, I);
    Rng rng(seed);
    auto words = all_theta_words(R.d(), maxord);
    for (const auto& [x, y] : detail::product_pairs(R, I, rng, samples)) {
        if (!E.contains(x * y)) continue;
        for (const auto& w : words) {
            auto lhs = x.pow(theta_order(w) + 1) * R.apply_word(y, w);
            rep.check(E.contains(lhs),
                      "x=" + x.str() + " y=" + y.str() + " word=" + theta_word_str(w));
        }
    }
    return rep;
}

// Nilpotency bounds for derivatives of a nilpotent element of a Q-algebra:
// if x^n = 0 then (dx)^(2l-1) * x^(n-l) = 0 for l = 1..n, and for a word w
// of order e, w(x)^(2^e * (n-1) + 1) = 0.
template <class K>
Report verify_nilpotency(const DiffRing<K>& R, const Poly<K>& x,
                         unsigned n, unsigned maxord) {
    if (R.characteristic() != 0)
        throw DomainError("verify_nilpotency requires characteristic zero");
    if (n == 0 || !R.nf(x.pow(n)).is_zero())
        throw DomainError("verify_nilpotency requires x^n = 0 in R");
    Report rep;
    rep.lemma = "nilpotency";
    rep.note("n", std::to_string(n));
    rep.note("maxord", std::to_string(maxord));
    for (std::size_t i = 0; i < R.d(); ++i) {
        auto dx = R.derive(x, i);
        for (unsigned l = 1; l <= n; ++l)
            rep.check(R.nf(dx.pow(2 * l - 1) * x.pow(n - l)).is_zero(),
                      "d" + std::to_string(i + 1) + " l=" + std::to_string(l));
        rep.check(R.nf(dx.pow(2 * n - 1)).is_zero(),
                  "d" + std::to_string(i + 1) + " top power");
    }
    for (const auto& w : all_theta_words(R.d(), maxord)) {
        unsigned e = theta_order(w);
        if (e == 0) continue;
        unsigned bound = (1u << e) * (n - 1) + 1;
        rep.check(R.nf(R.apply_word(x, w).pow(bound)).is_zero(),
                  "word=" + theta_word_str(w));
    }
    return rep;
}

// If I and J meet only in 0, then w(x) * w'(y) = 0 for all x in I, y in J
// and all words w, w' over the supplied family; consequently the closures of
// I and J under the family meet inside the square-nilpotents.
template <class K>
Report verify_super_lemma(const DiffRing<K>& R,
                          const std::vector<DerivationSpec<K>>& family,
                          const Ideal<K>& I, const Ideal<K>& J,
                          unsigned maxord, unsigned closure_levels = 4) {
    for (const auto& d : family) R.validate_family_member(d);
    auto meet = ideal_intersect(effective_ideal(R, I), effective_ideal(R, J));
    if (!meet.equals(zero_ideal_of(R)))
        throw DomainError("verify_super_lemma requires the ideals to meet only in zero");
    Report rep;
    rep.lemma = "super-lemma";
    rep.note("maxord", std::to_string(maxord));
    auto words = all_theta_words(family.size(), maxord);
    auto apply = [&](const Poly<K>& f, const ThetaWord& w) {
        auto r = R.nf(f);
        for (std::size_t k = w.size(); k-- > 0;)
            r = R.nf(derive_raw(r, family[w[k]]));
        return r;
    };
    for (const auto& x : I.generators())
        for (const auto& y : J.generators())
            for (const auto& w1 : words)
                for (const auto& w2 : words)
                    rep.check(R.nf(apply(x, w1) * apply(y, w2)).is_zero(),
                              "x=" + x.str() + " y=" + y.str() +
                                  " words=" + theta_word_str(w1) + "," + theta_word_str(w2));
    auto bi = bracket_closure(R, I, family, closure_levels);
    auto bj = bracket_closure(R, J, family, closure_levels);
    auto both = ideal_intersect(effective_ideal(R, bi.result),
                                effective_ideal(R, bj.result));
    const auto& bg = both.groebner();
    for (std::size_t a = 0; a < bg.size(); ++a)
        for (std::size_t b = a; b < bg.size(); ++b)
            rep.check(R.nf(bg[a] * bg[b]).is_zero(),
                      "closure product " + bg[a].str() + " * " + bg[b].str());
    return rep;
}

// Minimality facts about the radical differential closure: products of
// derivatives of a splitting pair land in the closure of I, and the product
// of the closures of I and J lands in the closure of IJ.  Membership is
// asserted against the truncated approximation, which sits inside the true
// closure, so a pass is sound.
template <class K>
Report verify_min_rad(const DiffRing<K>& R, const Ideal<K>& I, const Ideal<K>& J,
                      unsigned levels, unsigned samples, unsigned maxord,
                      std::uint64_t seed) {
    Report rep;
    rep.lemma = "min-rad";
    rep.note("seed", std::to_string(seed));
    rep.note("levels", std::to_string(levels));
    auto RI = radical_delta(R, I, levels);
    Rng rng(seed);
    auto words = all_theta_words(R.d(), maxord);
    auto EI = effective_ideal(R, I);
    for (const auto& [x, y] : detail::product_pairs(R, I, rng, samples)) {
        if (!EI.contains(x * y)) continue;
        for (const auto& w1 : words)
            for (const auto& w2 : words)
                rep.check(RI.contains(R.nf(R.apply_word(x, w1) * R.apply_word(y, w2))),
                          "x=" + x.str() + " y=" + y.str());
    }
    auto RJ = radical_delta(R, J, levels);
    auto RIJ = radical_delta(R, ideal_product(effective_ideal(R, I),
                                              effective_ideal(R, J)), levels);
    for (const auto& a : RI.groebner())
        for (const auto& b : RJ.groebner())
            rep.check(RIJ.contains(R.nf(a * b)), "a=" + a.str() + " b=" + b.str());
    return rep;
}

} // namespace diffalg
