#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/dideal.hpp"
#include "diffalg/report.hpp"
#include "diffalg/svdp.hpp"

namespace diffalg {

// A proper ideal registered with a scheme; primality is asserted by the
// caller and only ever spot-checked by falsification.
template <class K> struct NamedFixture {
    std::string name;
    Ideal<K> ideal;
    bool delta_stable = false;
};

// Affine Delta-scheme: a coordinate Delta-ring plus named prime fixtures.
template <class K> class AffineDScheme {
public:
    explicit AffineDScheme(DiffRing<K> R) : R_(std::move(R)) {}

    const DiffRing<K>& ring() const { return R_; }

    void add_fixture(const std::string& name, const Ideal<K>& p) {
        if (p.ring() != R_.ring()) throw RingMismatchError("fixture from a different ring");
        if (effective_ideal(R_, p).is_unit())
            throw DomainError("fixture ideal '" + name + "' is not proper");
        bool stable = is_delta_ideal(R_, p);
        p.mark_delta_stable(stable);
        fixtures_.push_back(NamedFixture<K>{name, p, stable});
    }

    const std::vector<NamedFixture<K>>& fixtures() const { return fixtures_; }
    const NamedFixture<K>* find(const std::string& name) const {
        for (const auto& f : fixtures_)
            if (f.name == name) return &f;
        return nullptr;
    }

private:
    DiffRing<K> R_;
    std::vector<NamedFixture<K>> fixtures_;
};

// The leaves of the scheme are exactly its prime Delta-ideals; with primality
// asserted, leaf-ness is stability.
template <class K> bool is_leaf(const Ideal<K>& p, const AffineDScheme<K>& S) {
    if (effective_ideal(S.ring(), p).is_unit())
        throw DomainError("is_leaf: the ideal is not proper");
    return is_delta_ideal(S.ring(), p);
}

// The trajectory of the point cut out by p: the sharpening chain towards the
// largest Delta-ideal below p.  Guarded to characteristic zero, where the
// chain's limit is again prime; psharp itself stays available in any
// characteristic for counterexample work.
template <class K>
PsharpResult<K> trajectory(const Ideal<K>& p, const AffineDScheme<K>& S, unsigned D,
                           unsigned maxiter = 32) {
    if (S.ring().characteristic() != 0)
        throw DomainError("trajectory requires characteristic zero");
    return psharp(S.ring(), p, D, maxiter);
}

template <class K> struct LeafReport {
    Ideal<K> ideal;
    bool leaf = false;
    PsharpResult<K> trajectory;
    std::optional<Ideal<K>> fiber_point;
};

template <class K>
LeafReport<K> leaf_report(const Ideal<K>& p, const AffineDScheme<K>& S, unsigned D) {
    LeafReport<K> r;
    r.ideal = p;
    r.leaf = is_leaf(p, S);
    r.trajectory = trajectory(p, S, D);
    return r;
}

namespace detail {

template <class K>
void require_certified_stable(const DiffRing<K>& R, const Ideal<K>& p, const char* who) {
    auto hint = p.delta_stable_hint();
    if (hint.has_value()) {
        if (!*hint) throw DomainError(std::string(who) + ": ideal is certified non-stable");
        return;
    }
    if (!is_delta_ideal(R, p))
        throw DomainError(std::string(who) + ": ideal is not a Delta-ideal");
    p.mark_delta_stable(true);
}

} // namespace detail

// The unique intersection point of the leaf through p with the fiber t = c:
// the image j(p) of the leaf's prime.
template <class K>
Ideal<K> fiber_intersection(const TensorRing<K>& T, const Ideal<K>& p, const K& c) {
    detail::require_certified_stable(T.realization(), p, "fiber_intersection");
    return fiber_j_ideal(T, p, c);
}

// Both round trips of the fiber/leaf bijection, on one (q, p, c) instance:
//  (A) the leaf through the fiber point of q meets the fiber back in q,
//  (B) p is recovered from its fiber point by extension, and
//  (C) the trajectory of that fiber point contracts onto it.
template <class K>
Report main_theorem_check(const TensorRing<K>& T, const Ideal<K>& q, const Ideal<K>& p,
                          const K& c, unsigned D) {
    if (q.ring() != T.base())
        throw RingMismatchError("main_theorem_check: q is not over the base");
    if (!q.is_proper()) throw DomainError("main_theorem_check: q must be proper");
    if (!p.is_proper()) throw DomainError("main_theorem_check: p must be proper");
    detail::require_certified_stable(T.realization(), p, "main_theorem_check");

    Report r;
    r.lemma = "main-theorem";
    r.note("c", c.str());
    r.note("degree-bound", std::to_string(D));

    auto conclusive = [](const PsharpResult<K>& res) {
        return res.status == PsharpStatus::Fixpoint ||
               (res.status == PsharpStatus::DegreeExhausted && res.delta_stable_cert);
    };

    auto res_q = fiber_pullback_sharp(T, q, c, D);
    r.note("status-fiber-to-leaf", psharp_status_name(res_q.status));
    bool okA = conclusive(res_q) && fiber_j_ideal(T, res_q.final_ideal, c).equals(q);
    r.check(okA, "fiber point of the recovered leaf differs from q");

    Ideal<K> fib = fiber_j_ideal(T, p, c);
    bool okB = extend_ideal(T, fib).equals(p);
    r.check(okB, "extension of the fiber point differs from p");

    auto res_p = fiber_pullback_sharp(T, fib, c, D);
    r.note("status-leaf-to-fiber", psharp_status_name(res_p.status));
    bool okC = conclusive(res_p) && contract_ideal(T, res_p.final_ideal).equals(fib);
    r.check(okC, "trajectory of the fiber point does not contract onto it");
    return r;
}

// Outcome of the one-sided simplicity probe: either a certified proper
// Delta-ideal refuting simplicity, or consistency of the samples with it.
template <class K> struct SimplicityScan {
    bool consistent = true;
    std::optional<Ideal<K>> witness;
};

template <class K>
SimplicityScan<K> simplicity_scan(const AffineDScheme<K>& S, const std::vector<Poly<K>>& samples,
                                  unsigned N) {
    const DiffRing<K>& R = S.ring();
    for (const auto& f : samples) {
        if (R.nf(f).is_zero()) continue;
        auto cl = delta_close(R, Ideal<K>(R.ring(), {f}), N);
        if (cl.certified && effective_ideal(R, cl.result).is_proper())
            return SimplicityScan<K>{false, cl.result};
    }
    return SimplicityScan<K>{true, std::nullopt};
}

// Truncated probe of the constants-are-a-field property: for a ring whose
// constants reduce to the scalars, every localization must again have
// constants spanned by 1 at the same bound.  Rings with more constants are
// flagged informationally, not failed.
template <class K>
Report constants_field_check(const AffineDScheme<K>& S, unsigned D,
                             const std::vector<Poly<K>>& samples) {
    const DiffRing<K>& R = S.ring();
    Report r;
    r.lemma = "constants-field";
    r.note("degree-bound", std::to_string(D));
    auto base = constants_truncated(R, D);
    r.note("base-dimension", std::to_string(base.size()));
    bool scalar_constants = base.size() == 1 && base[0].is_constant();
    if (!scalar_constants) {
        r.note("non-simple", "constants exceed the scalars at this bound");
        return r;
    }
    for (const auto& f : samples) {
        std::string fs = f.str();
        try {
            auto loc = localize(R, f);
            auto lc = constants_truncated(loc, D);
            bool ok = lc.size() == base.size() && lc.size() == 1 && lc[0].is_constant();
            r.check(ok, "constants change when localizing at " + fs);
        } catch (const DomainError&) {
            r.note("skipped", fs);
        }
    }
    return r;
}

} // namespace diffalg
