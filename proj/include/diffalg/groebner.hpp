#pragma once

#include <list>
#include <map>
#include <vector>

#include "diffalg/poly.hpp"

namespace diffalg {

namespace detail {

// Working representation inside the division loop: ordered map so the
// leading term under the requested order is rbegin().
template <class K> using OrdMap = std::map<Monomial, K, MonoLess>;

template <class K> OrdMap<K> to_map(const Poly<K>& p, const MonomialOrder& ord) {
    OrdMap<K> m{MonoLess{ord}};
    for (const auto& t : p.terms()) m.insert(t);
    return m;
}

template <class K>
void sub_scaled(OrdMap<K>& h, const Poly<K>& g, const Monomial& m, const K& c) {
    // h -= c * m * g
    for (const auto& [gm, gc] : g.terms()) {
        Monomial mm = gm * m;
        K cc = gc * c;
        auto it = h.find(mm);
        if (it == h.end()) {
            if (!cc.is_zero()) h.emplace(std::move(mm), -cc);
        } else {
            it->second -= cc;
            if (it->second.is_zero()) h.erase(it);
        }
    }
    if (h.size() > limits().max_terms) throw ResourceError("term cap exceeded in reduction");
}

} // namespace detail

// Fully reduced normal form of f modulo the (not necessarily Groebner) list G.
template <class K>
Poly<K> normal_form(const Poly<K>& f, const std::vector<Poly<K>>& G, const MonomialOrder& ord = MonomialOrder::degrevlex()) {
    if (f.is_zero()) return f;
    detail::OrdMap<K> h = detail::to_map(f, ord);
    std::map<Monomial, K, MonoLess> rem{MonoLess{MonomialOrder::degrevlex()}};
    std::vector<const Poly<K>*> gs;
    std::vector<Monomial> lts;
    std::vector<K> lcs;
    for (const auto& g : G) {
        if (g.is_zero()) continue;
        const auto& lt = g.leading(ord);
        gs.push_back(&g);
        lts.push_back(lt.first);
        lcs.push_back(lt.second);
    }
    while (!h.empty()) {
        auto lead = std::prev(h.end());
        bool reduced = false;
        for (std::size_t i = 0; i < gs.size(); ++i) {
            if (!lts[i].divides(lead->first)) continue;
            Monomial q = lead->first / lts[i];
            K c = lead->second / lcs[i];
            detail::sub_scaled(h, *gs[i], q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.insert(*lead);
            h.erase(lead);
        }
    }
    return Poly<K>::from_map(f.ring(), rem);
}

template <class K>
Poly<K> spoly(const Poly<K>& f, const Poly<K>& g, const MonomialOrder& ord) {
    const auto& [mf, cf] = f.leading(ord);
    const auto& [mg, cg] = g.leading(ord);
    Monomial l = mf.lcm(mg);
    return f.mono_mul(l / mf, cf.inv()) - g.mono_mul(l / mg, cg.inv());
}

namespace detail {

struct GBPair {
    std::size_t i, j;
    Monomial lcm;
};

// Gebauer-Moeller pair update: applies Buchberger's product (coprime) and
// chain criteria when the basis element with index t is added.
template <class K>
void update_pairs(std::vector<GBPair>& pairs, const std::vector<Poly<K>>& G,
                  const std::vector<Monomial>& lts, std::size_t t) {
    const Monomial& ltt = lts[t];
    std::vector<GBPair> fresh;
    fresh.reserve(t);
    for (std::size_t i = 0; i < t; ++i) fresh.push_back({i, t, lts[i].lcm(ltt)});

    // M rule: drop (i,t) if some (j,t) has lcm properly dividing lcm(i,t).
    std::vector<bool> keep(fresh.size(), true);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        for (std::size_t b = 0; b < fresh.size(); ++b) {
            if (a == b || !keep[b]) continue;
            if (fresh[b].lcm != fresh[a].lcm && fresh[b].lcm.divides(fresh[a].lcm)) {
                keep[a] = false;
                break;
            }
        }
    }
    // F rule: among equal lcms keep one representative.
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        if (!keep[a]) continue;
        for (std::size_t b = a + 1; b < fresh.size(); ++b) {
            if (keep[b] && fresh[b].lcm == fresh[a].lcm) keep[b] = false;
        }
    }
    // B (product) criterion: coprime leading terms reduce to zero.
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        if (keep[a] && lts[fresh[a].i].coprime(ltt)) keep[a] = false;
    }
    // Chain criterion on old pairs: (i,j) is redundant once lt(t) divides
    // lcm(i,j) strictly finer than both mixed lcms.
    std::vector<GBPair> out;
    out.reserve(pairs.size() + fresh.size());
    for (const auto& p : pairs) {
        if (ltt.divides(p.lcm) && lts[p.i].lcm(ltt) != p.lcm && lts[p.j].lcm(ltt) != p.lcm)
            continue;
        out.push_back(p);
    }
    for (std::size_t a = 0; a < fresh.size(); ++a)
        if (keep[a]) out.push_back(fresh[a]);
    pairs.swap(out);
    (void)G;
}

} // namespace detail

// Buchberger's algorithm with both classical criteria and full reduction.
// Returns the reduced Groebner basis: monic, pairwise fully reduced, sorted
// with leading terms descending; deterministic for a given input ideal.
template <class K>
std::vector<Poly<K>> groebner_basis(const std::vector<Poly<K>>& gens, const MonomialOrder& ord = MonomialOrder::degrevlex()) {
    std::vector<Poly<K>> G;
    std::vector<Monomial> lts;
    std::vector<detail::GBPair> pairs;

    auto push = [&](const Poly<K>& p) {
        G.push_back(p);
        lts.push_back(p.leading(ord).first);
        if (G.size() > limits().max_basis) throw ResourceError("basis size cap exceeded");
        check_degree(static_cast<unsigned>(p.degree()));
        detail::update_pairs(pairs, G, lts, G.size() - 1);
    };

    for (const auto& g : gens)
        if (!g.is_zero()) push(g);

    while (!pairs.empty()) {
        // normal selection: minimal lcm in the order
        std::size_t best = 0;
        for (std::size_t i = 1; i < pairs.size(); ++i)
            if (mono_cmp(pairs[i].lcm, pairs[best].lcm, ord) < 0) best = i;
        detail::GBPair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
        Poly<K> s = spoly(G[pr.i], G[pr.j], ord);
        Poly<K> r = normal_form(s, G, ord);
        if (!r.is_zero()) push(r);
    }

    // Interreduce: drop elements whose leading term is divisible by another's,
    // then fully reduce each survivor against the others and normalize.
    std::vector<bool> alive(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i) {
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j || !alive[j]) continue;
            if (lts[j].divides(lts[i]) && (lts[j] != lts[i] || j < i)) {
                alive[i] = false;
                break;
            }
        }
    }
    std::vector<Poly<K>> basis;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (alive[i]) basis.push_back(G[i]);
    std::vector<Poly<K>> reduced;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::vector<Poly<K>> others;
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (j != i) others.push_back(basis[j]);
        Poly<K> r = normal_form(basis[i], others, ord);
        if (!r.is_zero()) reduced.push_back(r.scaled(r.leading(ord).second.inv()));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Poly<K>& a, const Poly<K>& b) {
        return mono_cmp(a.leading(ord).first, b.leading(ord).first, ord) > 0;
    });
    return reduced;
}

} // namespace diffalg
