#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "diffalg/groebner.hpp"

namespace diffalg {

// Finitely generated ideal with lazily computed, cached reduced Groebner
// bases (one per monomial order).  Generators are immutable after
// construction; the cache is guarded by a mutex so shared handles are safe
// to use from multiple threads.
template <class K> class Ideal {
public:
    Ideal() = default;
    Ideal(Ring<K> ring, std::vector<Poly<K>> gens) {
        for (const auto& g : gens)
            if (!g.is_zero() && g.ring() != ring) throw RingMismatchError("generator from a different ring");
        std::vector<Poly<K>> kept;
        for (auto& g : gens)
            if (!g.is_zero()) kept.push_back(std::move(g));
        d_ = std::make_shared<Data>();
        d_->ring = std::move(ring);
        d_->gens = std::move(kept);
    }
    static Ideal zero(const Ring<K>& r) { return Ideal(r, {}); }
    static Ideal unit(const Ring<K>& r) { return Ideal(r, {Poly<K>::one(r)}); }

    const Ring<K>& ring() const { return d_->ring; }
    const std::vector<Poly<K>>& generators() const { return d_->gens; }

    const std::vector<Poly<K>>& groebner(const MonomialOrder& ord = MonomialOrder::degrevlex()) const {
        std::scoped_lock lk(d_->mu);
        auto it = d_->gb.find(ord);
        if (it == d_->gb.end()) it = d_->gb.emplace(ord, groebner_basis(d_->gens, ord)).first;
        return it->second;
    }

    Poly<K> reduce(const Poly<K>& f, const MonomialOrder& ord = MonomialOrder::degrevlex()) const {
        return normal_form(f, groebner(ord), ord);
    }
    bool contains(const Poly<K>& f) const { return reduce(f).is_zero(); }
    bool contains_ideal(const Ideal& J) const {
        for (const auto& g : J.generators())
            if (!contains(g)) return false;
        return true;
    }

    bool is_zero_ideal() const { return groebner().empty(); }
    bool is_unit() const {
        const auto& g = groebner();
        return g.size() == 1 && g[0].is_constant();
    }
    bool is_proper() const { return !is_unit(); }

    // Canonical equality: identical reduced degrevlex Groebner bases.
    bool equals(const Ideal& J) const {
        if (d_ == J.d_) return true;
        if (d_->ring != J.d_->ring) return false;
        return groebner() == J.groebner();
    }

    Ideal plus(const Ideal& J) const {
        auto gens = d_->gens;
        for (const auto& g : J.generators()) gens.push_back(g);
        return Ideal(d_->ring, std::move(gens));
    }
    Ideal plus(const Poly<K>& f) const {
        auto gens = d_->gens;
        gens.push_back(f);
        return Ideal(d_->ring, std::move(gens));
    }

    // Advisory flag recorded by the differential layer once stability under
    // the relevant derivations has been certified.
    void mark_delta_stable(bool b) const {
        std::scoped_lock lk(d_->mu);
        d_->delta_stable = b;
    }
    std::optional<bool> delta_stable_hint() const {
        std::scoped_lock lk(d_->mu);
        return d_->delta_stable;
    }

private:
    struct Data {
        Ring<K> ring;
        std::vector<Poly<K>> gens;
        mutable std::mutex mu;
        mutable std::map<MonomialOrder, std::vector<Poly<K>>> gb;
        mutable std::optional<bool> delta_stable;
    };
    std::shared_ptr<Data> d_;
};

// ---- ideal-level operations -------------------------------------------

namespace detail {

// Lift the generators of I into ring' = ring + one fresh variable (appended);
// returns the extended ring, the lifted generators, and the new index.
template <class K>
std::tuple<Ring<K>, std::vector<Poly<K>>, std::size_t>
with_aux_var(const Ideal<K>& I, const std::string& stem) {
    const Ring<K>& R = I.ring();
    Ring<K> E = R.extended(R.fresh_var(stem));
    std::vector<Poly<K>> lifted;
    for (const auto& g : I.generators()) lifted.push_back(g.lift(E));
    return {E, lifted, E.nvars() - 1};
}

// Map polynomials of an extended ring (extra vars appended at the back) down
// to the base ring; every kept polynomial must be free of the extra vars.
template <class K>
std::vector<Poly<K>> drop_aux(const std::vector<Poly<K>>& polys, const Ring<K>& base) {
    std::vector<Poly<K>> out;
    std::vector<std::size_t> var_map(base.nvars());
    for (std::size_t i = 0; i < base.nvars(); ++i) var_map[i] = i;
    for (const auto& p : polys) {
        bool free = true;
        for (std::size_t i = base.nvars(); i < p.ring().nvars() && free; ++i)
            if (p.uses_var(i)) free = false;
        if (!free) continue;
        std::map<Monomial, K, MonoLess> acc;
        for (const auto& [m, c] : p.terms()) {
            std::vector<std::uint32_t> e(base.nvars());
            for (std::size_t i = 0; i < base.nvars(); ++i) e[i] = m.exp(i);
            acc.emplace(Monomial(std::move(e)), c);
        }
        out.push_back(Poly<K>::from_map(base, acc));
    }
    return out;
}

} // namespace detail

// Generators of I whose span avoids the given variables: Groebner basis under
// the elimination block order, keeping elements free of the block.
template <class K>
Ideal<K> eliminate(const Ideal<K>& I, const std::vector<std::uint32_t>& vars) {
    const auto& gb = I.groebner(MonomialOrder::elim(vars));
    std::vector<Poly<K>> kept;
    for (const auto& g : gb) {
        bool free = true;
        for (auto v : vars)
            if (g.uses_var(v)) { free = false; break; }
        if (free) kept.push_back(g);
    }
    return Ideal<K>(I.ring(), std::move(kept));
}

// I cap J via the one-auxiliary-variable trick: eliminate w from w*I + (1-w)*J.
template <class K>
Ideal<K> ideal_intersect(const Ideal<K>& I, const Ideal<K>& J) {
    if (I.ring() != J.ring()) throw RingMismatchError("ideal_intersect: different rings");
    auto [E, gi, w] = detail::with_aux_var(I, "_w");
    Poly<K> pw = Poly<K>::variable(E, w);
    Poly<K> cw = Poly<K>::one(E) - pw;
    std::vector<Poly<K>> gens;
    for (const auto& g : gi) gens.push_back(pw * g);
    for (const auto& g : J.generators()) gens.push_back(cw * g.lift(E));
    Ideal<K> big(E, std::move(gens));
    Ideal<K> elim_res = eliminate(big, {static_cast<std::uint32_t>(w)});
    return Ideal<K>(I.ring(), detail::drop_aux(elim_res.generators(), I.ring()));
}

// Exact division h / f; throws if f does not divide h.
template <class K>
Poly<K> divide_exact(const Poly<K>& h, const Poly<K>& f) {
    if (f.is_zero()) throw DomainError("division by zero polynomial");
    MonomialOrder ord = MonomialOrder::degrevlex();
    Poly<K> rem = h;
    Poly<K> quot = Poly<K>::zero(h.ring());
    const auto& [mf, cf] = f.leading(ord);
    while (!rem.is_zero()) {
        const auto& [mr, cr] = rem.leading(ord);
        if (!mf.divides(mr)) throw DomainError("non-exact polynomial division");
        Monomial q = mr / mf;
        K c = cr / cf;
        quot += Poly<K>::term(h.ring(), q, c);
        rem -= f.mono_mul(q, c);
    }
    return quot;
}

// Colon ideal (I : f) = {x | x*f in I}, computed as (I cap (f)) / f.
template <class K>
Ideal<K> colon(const Ideal<K>& I, const Poly<K>& f) {
    if (f.is_zero()) throw DomainError("colon by zero");
    Ideal<K> inter = ideal_intersect(I, Ideal<K>(I.ring(), {f}));
    std::vector<Poly<K>> gens;
    for (const auto& g : inter.groebner()) gens.push_back(divide_exact(g, f));
    return Ideal<K>(I.ring(), std::move(gens));
}

// Colon by an ideal: (I : J) = intersection of (I : g) over generators g.
template <class K>
Ideal<K> colon(const Ideal<K>& I, const Ideal<K>& J) {
    if (J.generators().empty()) return Ideal<K>::unit(I.ring()); // (I : (0)) = (1)
    std::optional<Ideal<K>> acc;
    for (const auto& g : J.generators()) {
        Ideal<K> c = colon(I, g);
        acc = acc ? ideal_intersect(*acc, c) : c;
    }
    return *acc;
}

// Saturation (I : f^inf) via Rabinowitsch: adjoin y, add y*f - 1, eliminate y.
template <class K>
Ideal<K> saturation(const Ideal<K>& I, const Poly<K>& f) {
    if (f.is_zero()) throw DomainError("saturation by zero");
    auto [E, gi, w] = detail::with_aux_var(I, "_y");
    std::vector<Poly<K>> gens = gi;
    gens.push_back(Poly<K>::variable(E, w) * f.lift(E) - Poly<K>::one(E));
    Ideal<K> big(E, std::move(gens));
    Ideal<K> elim_res = eliminate(big, {static_cast<std::uint32_t>(w)});
    return Ideal<K>(I.ring(), detail::drop_aux(elim_res.generators(), I.ring()));
}

// Radical membership via the Rabinowitsch trick: f in sqrt(I) iff
// 1 in I + (1 - y*f).
template <class K>
bool radical_member(const Poly<K>& f, const Ideal<K>& I) {
    if (f.is_zero()) return true;
    auto [E, gi, w] = detail::with_aux_var(I, "_y");
    std::vector<Poly<K>> gens = gi;
    gens.push_back(Poly<K>::one(E) - Poly<K>::variable(E, w) * f.lift(E));
    return Ideal<K>(E, std::move(gens)).is_unit();
}

// Product ideal I*J (generator products).
template <class K>
Ideal<K> ideal_product(const Ideal<K>& I, const Ideal<K>& J) {
    std::vector<Poly<K>> gens;
    for (const auto& a : I.generators())
        for (const auto& b : J.generators()) gens.push_back(a * b);
    return Ideal<K>(I.ring(), std::move(gens));
}

} // namespace diffalg
