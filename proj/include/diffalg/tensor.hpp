#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/diffring.hpp"
#include "diffalg/linalg.hpp"

namespace diffalg {

// The tensor ring A (x)_C K for the built-in simple model K = C[t], t' = 1,
// with C = Q.  The base algebra A carries the zero derivations; the tensor
// ring is realized as the polynomial Delta-ring on the A-variables plus t,
// with d(t) = 1 and d zero on every A-variable.
template <class K> class TensorRing {
public:
    TensorRing() = default;
    explicit TensorRing(Ring<K> base, const std::string& tname = "t") : base_(std::move(base)) {
        if (base_.characteristic() != 0)
            throw DomainError("TensorRing: the constant field is Q, base must have char 0");
        Ring<K> ext = base_.extended(tname);
        std::vector<Poly<K>> imgs(ext.nvars(), Poly<K>::zero(ext));
        imgs.back() = Poly<K>::one(ext);
        real_ = DiffRing<K>(ext, {DerivationSpec<K>{"d", std::move(imgs)}});
    }

    const Ring<K>& base() const { return base_; }
    const DiffRing<K>& realization() const { return real_; }
    std::size_t t_index() const { return real_.ring().nvars() - 1; }
    Poly<K> t() const { return Poly<K>::variable(real_.ring(), t_index()); }
    // a |-> a (x) 1
    Poly<K> embed(const Poly<K>& a) const { return a.lift(real_.ring()); }

    bool operator==(const TensorRing& o) const { return base_ == o.base_ && real_ == o.real_; }

private:
    Ring<K> base_;
    DiffRing<K> real_;
};

// Canonical form of an element of A (x) K over the t-power basis of K:
// x = sum_k a_k (x) t^k with nonzero a_k in A.
template <class K> struct TensorElem {
    std::map<unsigned, Poly<K>> parts;

    bool is_zero() const { return parts.empty(); }
};

template <class K>
TensorElem<K> tensor_decompose(const TensorRing<K>& T, const Poly<K>& x) {
    if (!x.is_zero() && x.ring() != T.realization().ring())
        throw RingMismatchError("element is not from the realization ring");
    const Ring<K>& A = T.base();
    std::size_t tv = T.t_index();
    std::map<unsigned, std::map<Monomial, K, MonoLess>> acc;
    for (const auto& [m, c] : x.terms()) {
        std::vector<std::uint32_t> e(A.nvars());
        for (std::size_t i = 0; i < A.nvars(); ++i) e[i] = m.exp(i);
        acc[m.exp(tv)].emplace(Monomial(std::move(e)), c);
    }
    TensorElem<K> out;
    for (auto& [k, terms] : acc) out.parts.emplace(k, Poly<K>::from_map(A, terms));
    return out;
}

template <class K>
Poly<K> tensor_compose(const TensorRing<K>& T, const TensorElem<K>& x) {
    Poly<K> out = Poly<K>::zero(T.realization().ring());
    for (const auto& [k, a] : x.parts) {
        if (a.is_zero()) continue;
        if (a.ring() != T.base()) throw RingMismatchError("tensor part is not from the base ring");
        out += T.embed(a) * T.t().pow(k);
    }
    return out;
}

// The least n with x = sum of n pure tensors: the rank over C of the
// coefficient family {a_k} in the monomial basis of A.
template <class K>
unsigned tensor_length(const TensorRing<K>& T, const TensorElem<K>& x) {
    if (x.is_zero()) return 0;
    std::map<Monomial, std::size_t, MonoLess> dict;
    for (const auto& [k, a] : x.parts) {
        (void)k;
        for (const auto& t : a.terms()) dict.emplace(t.first, 0);
    }
    std::size_t c = 0;
    for (auto& [m, idx] : dict) {
        (void)m;
        idx = c++;
    }
    Matrix<K> M(x.parts.size(), dict.size(), T.base().zero());
    std::size_t r = 0;
    for (const auto& [k, a] : x.parts) {
        (void)k;
        for (const auto& t : a.terms()) M.at(r, dict.at(t.first)) = t.second;
        ++r;
    }
    return static_cast<unsigned>(rank(M));
}

template <class K>
unsigned tensor_length(const TensorRing<K>& T, const Poly<K>& x) {
    return tensor_length(T, tensor_decompose(T, x));
}

} // namespace diffalg
