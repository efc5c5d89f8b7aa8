#pragma once

#include <utility>
#include <vector>

#include "diffalg/dideal.hpp"
#include "diffalg/ore.hpp"
#include "diffalg/tensor.hpp"

namespace diffalg {

// i(I): the ideal of the realization generated by the generators of I.  No
// prolongation is needed: the tensor derivation kills A, so d(a*g) for a
// t-polynomial a stays inside the generated ideal, and the ideal is already
// a Delta-ideal.
template <class K>
Ideal<K> extend_ideal(const TensorRing<K>& T, const Ideal<K>& I) {
    if (I.ring() != T.base()) throw RingMismatchError("extend_ideal: ideal is not over the base");
    std::vector<Poly<K>> gens;
    for (const auto& g : I.generators()) gens.push_back(T.embed(g));
    Ideal<K> J(T.realization().ring(), std::move(gens));
    J.mark_delta_stable(true);
    return J;
}

// i^{-1}(J) = J cap A, an elimination of t.
template <class K>
Ideal<K> contract_ideal(const TensorRing<K>& T, const Ideal<K>& J) {
    if (J.ring() != T.realization().ring())
        throw RingMismatchError("contract_ideal: ideal is not over the realization");
    Ideal<K> elim_res = eliminate(J, {static_cast<std::uint32_t>(T.t_index())});
    return Ideal<K>(T.base(), detail::drop_aux(elim_res.generators(), T.base()));
}

// One certificate pair: a in A (a member of the contraction) and lambda in K
// (a t-polynomial of the realization), contributing a (x) lambda.
template <class K> struct SvdpPair {
    Poly<K> a;      // over the base ring
    Poly<K> lambda; // over the realization ring, t only
};

// Constructive content of the descent proposition: for x in a Delta-stable J,
// produce x = sum a_i (x) lambda_i with every a_i in the contraction of J.
// Each a_i is reached by genuinely applying operators of K[d] to x inside the
// realization: an isolation product of (t*d - j) factors splits off the t^k
// component, and the unit operator for t^k flattens it into A.
template <class K>
std::vector<SvdpPair<K>> svdp_reduce(const TensorRing<K>& T, const TensorElem<K>& x,
                                     const Ideal<K>& J) {
    const DiffRing<K>& R = T.realization();
    if (J.ring() != R.ring())
        throw RingMismatchError("svdp_reduce: ideal is not over the realization");
    Poly<K> xr = tensor_compose(T, x);
    if (!J.contains(xr)) throw DomainError("svdp_reduce: x is not a member of J");

    std::vector<unsigned> support;
    for (const auto& [k, a] : x.parts) {
        (void)a;
        support.push_back(k);
    }
    LinDiffOp<K> td = ore_mul(LinDiffOp<K>::monomial(R, T.t(), 0),
                              LinDiffOp<K>::monomial(R, Poly<K>::one(R.ring()), 1));
    std::vector<SvdpPair<K>> out;
    for (unsigned k : support) {
        LinDiffOp<K> iso = LinDiffOp<K>::identity(R);
        for (unsigned j : support) {
            if (j == k) continue;
            // (t*d - j) / (k - j): kills the t^j stratum, fixes t^k
            LinDiffOp<K> factor =
                td - LinDiffOp<K>::monomial(R, Poly<K>::constant(R.ring(), R.ring().scalar(j)), 0);
            iso = ore_mul(factor, iso).scaled(
                (R.ring().scalar(k) - R.ring().scalar(j)).inv());
        }
        LinDiffOp<K> flat = ore_mul(unit_operator(R, T.t().pow(k)), iso);
        Poly<K> a_real = op_apply(flat, xr);
        if (a_real.uses_var(T.t_index()))
            throw DomainError("svdp_reduce: flattened component is not in A");
        auto dropped = detail::drop_aux(std::vector<Poly<K>>{a_real}, T.base());
        out.push_back(SvdpPair<K>{dropped.empty() ? Poly<K>::zero(T.base()) : dropped[0],
                                  T.t().pow(k)});
    }
    return out;
}

template <class K>
std::vector<SvdpPair<K>> svdp_reduce(const TensorRing<K>& T, const Poly<K>& x,
                                     const Ideal<K>& J) {
    return svdp_reduce(T, tensor_decompose(T, x), J);
}

// j : a (x) lambda |-> a * lambda(c), the C-point of K at t = c.
template <class K>
Poly<K> fiber_j(const TensorRing<K>& T, const Poly<K>& x, const K& c) {
    if (!x.is_zero() && x.ring() != T.realization().ring())
        throw RingMismatchError("fiber_j: element is not from the realization");
    Poly<K> sub = x.eval_var(T.t_index(), c);
    auto dropped = detail::drop_aux(std::vector<Poly<K>>{sub}, T.base());
    return dropped.empty() ? Poly<K>::zero(T.base()) : dropped[0];
}

template <class K>
Poly<K> fiber_j(const TensorRing<K>& T, const TensorElem<K>& x, const K& c) {
    return fiber_j(T, tensor_compose(T, x), c);
}

// j(J): generated image of the generators (exact for surjective j).
template <class K>
Ideal<K> fiber_j_ideal(const TensorRing<K>& T, const Ideal<K>& J, const K& c) {
    if (J.ring() != T.realization().ring())
        throw RingMismatchError("fiber_j_ideal: ideal is not over the realization");
    std::vector<Poly<K>> gens;
    for (const auto& g : J.generators()) gens.push_back(fiber_j(T, g, c));
    return Ideal<K>(T.base(), std::move(gens));
}

// j^{-1}(I)_# : extend I, cut by the fiber equation t = c, and run the
// trajectory sharpening at degree bound D.  The unit ideal short-circuits.
template <class K>
PsharpResult<K> fiber_pullback_sharp(const TensorRing<K>& T, const Ideal<K>& I, const K& c,
                                     unsigned D, unsigned maxiter = 32) {
    const DiffRing<K>& R = T.realization();
    Ideal<K> J0 = extend_ideal(T, I).plus(T.t() - Poly<K>::constant(R.ring(), c));
    if (!J0.is_proper()) {
        PsharpResult<K> res;
        res.input = J0;
        res.degree_bound = D;
        res.status = PsharpStatus::Fixpoint;
        res.trace = {J0};
        res.final_ideal = J0;
        res.steps = 0;
        res.delta_stable_cert = true;
        res.contained_cert = true;
        return res;
    }
    return psharp(R, J0, D, maxiter);
}

} // namespace diffalg
