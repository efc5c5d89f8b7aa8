#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diffalg/ideal.hpp"
#include "diffalg/linalg.hpp"
#include "diffalg/theta.hpp"

namespace diffalg {

// A named derivation given by its images on the ring variables.
template <class K> struct DerivationSpec {
    std::string name;
    std::vector<Poly<K>> images; // one per ring variable
};

// Apply the derivation described by `spec` to f by additivity and Leibniz,
// with no quotient reduction.  This is the raw action used both by DiffRing
// and by caller-supplied derivations (words over arbitrary derivations).
template <class K>
Poly<K> derive_raw(const Poly<K>& f, const DerivationSpec<K>& spec) {
    const Ring<K>& R = f.ring();
    if (spec.images.size() != R.nvars())
        throw DomainError("derivation '" + spec.name + "' has wrong image count");
    Poly<K> out = Poly<K>::zero(R);
    for (const auto& [m, c] : f.terms()) {
        for (std::size_t i = 0; i < R.nvars(); ++i) {
            std::uint32_t e = m.exp(i);
            if (e == 0 || spec.images[i].is_zero()) continue;
            K coeff = c * R.scalar(e);
            if (coeff.is_zero()) continue; // exponent divisible by the characteristic
            Monomial reduced = m / Monomial::var(R.nvars(), i);
            out += spec.images[i].mono_mul(reduced, coeff);
        }
    }
    return out;
}

// Polynomial Delta-ring: a polynomial ring (or a quotient of one by a
// Delta-ideal) with finitely many derivations given on the variables.
// Construction performs every well-definedness check eagerly:
//  - image counts match the variable list,
//  - each derivation maps the quotient's generators into the quotient
//    (otherwise it does not descend to the quotient ring),
//  - the pairwise commutator action on every variable is computed and the
//    commuting flag is recorded.
template <class K> class DiffRing {
public:
    DiffRing() = default;
    DiffRing(Ring<K> ring, std::vector<DerivationSpec<K>> derivs,
             std::optional<Ideal<K>> quotient = std::nullopt)
        : ring_(std::move(ring)), derivs_(std::move(derivs)), quotient_(std::move(quotient)) {
        for (const auto& d : derivs_) {
            if (d.images.size() != ring_.nvars())
                throw DomainError("derivation '" + d.name + "' must give an image per variable");
            for (const auto& img : d.images)
                if (!img.is_zero() && img.ring() != ring_)
                    throw RingMismatchError("derivation image from a different ring");
        }
        if (quotient_) {
            if (quotient_->ring() != ring_) throw RingMismatchError("quotient from a different ring");
            if (quotient_->is_unit()) throw DomainError("quotient by the unit ideal");
            for (const auto& d : derivs_)
                for (const auto& g : quotient_->generators())
                    if (!quotient_->contains(derive_raw(g, d)))
                        throw DomainError("derivation '" + d.name +
                                          "' does not preserve the quotient ideal");
        }
        commuting_ = compute_commuting();
    }

    const Ring<K>& ring() const { return ring_; }
    const std::vector<DerivationSpec<K>>& derivations() const { return derivs_; }
    std::size_t d() const { return derivs_.size(); }
    const std::optional<Ideal<K>>& quotient() const { return quotient_; }
    unsigned characteristic() const { return ring_.characteristic(); }
    bool commuting() const { return commuting_; }

    // Normal form modulo the quotient ideal (identity when none).
    Poly<K> nf(const Poly<K>& f) const { return quotient_ ? quotient_->reduce(f) : f; }

    // The i-th derivation, reduced into the quotient ring.
    Poly<K> derive(const Poly<K>& f, std::size_t i) const {
        if (i >= derivs_.size()) throw DomainError("derivation index out of range");
        return nf(derive_raw(f, derivs_[i]));
    }

    // Word application, rightmost symbol innermost (applied first).
    Poly<K> apply_word(const Poly<K>& f, const ThetaWord& w) const {
        Poly<K> r = nf(f);
        for (std::size_t k = w.size(); k-- > 0;) r = derive(r, w[k]);
        return r;
    }

    // Multi-index application; requires certified commuting derivations.
    Poly<K> apply_ab(const Poly<K>& f, const ThetaAb& t) const {
        require_commuting("apply_ab");
        if (t.size() != derivs_.size()) throw DomainError("multi-index length mismatch");
        Poly<K> r = nf(f);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::uint32_t k = 0; k < t[i]; ++k) r = derive(r, i);
        return r;
    }

    void require_commuting(const std::string& who) const {
        if (!commuting_)
            throw DomainError(who + " requires a partial Delta-ring (commuting derivations)");
    }

    // Checks that a caller-supplied derivation is a valid derivation of this
    // ring: correct image count, matching ring, and preservation of the
    // quotient ideal.
    void validate_family_member(const DerivationSpec<K>& d) const {
        if (d.images.size() != ring_.nvars())
            throw DomainError("derivation '" + d.name + "' must give an image per variable");
        for (const auto& img : d.images)
            if (!img.is_zero() && img.ring() != ring_)
                throw RingMismatchError("derivation image from a different ring");
        if (quotient_)
            for (const auto& g : quotient_->generators())
                if (!quotient_->contains(derive_raw(g, d)))
                    throw DomainError("derivation '" + d.name +
                                      "' does not preserve the quotient ideal");
    }

    bool operator==(const DiffRing& o) const {
        if (ring_ != o.ring_ || derivs_.size() != o.derivs_.size()) return false;
        for (std::size_t i = 0; i < derivs_.size(); ++i)
            if (derivs_[i].images != o.derivs_[i].images) return false;
        if (quotient_.has_value() != o.quotient_.has_value()) return false;
        if (quotient_ && !quotient_->equals(*o.quotient_)) return false;
        return true;
    }

private:
    bool compute_commuting() const {
        for (std::size_t i = 0; i < derivs_.size(); ++i) {
            for (std::size_t j = i + 1; j < derivs_.size(); ++j) {
                for (std::size_t v = 0; v < ring_.nvars(); ++v) {
                    Poly<K> xv = Poly<K>::variable(ring_, v);
                    Poly<K> lhs = derive(derive(xv, j), i); // di dj xv
                    Poly<K> rhs = derive(derive(xv, i), j); // dj di xv
                    if (!nf(lhs - rhs).is_zero()) return false;
                }
            }
        }
        return true;
    }

    Ring<K> ring_;
    std::vector<DerivationSpec<K>> derivs_;
    std::optional<Ideal<K>> quotient_;
    bool commuting_ = true;
};

// True iff every commutator [d_i, d_j] acts as zero on every variable
// (modulo the quotient).  The construction caches this; the free function
// just reads the cached flag.
template <class K> bool check_commuting(const DiffRing<K>& R) { return R.commuting(); }

// Kolchin-Leibniz expansion: theta(f*g) as the binomial-weighted sum of
// theta_1(f)*theta_2(g) over complementary divisor pairs.  Demands a
// certified partial Delta-ring.
template <class K>
Poly<K> leibniz_expand(const Poly<K>& f, const Poly<K>& g, const ThetaAb& theta,
                       const DiffRing<K>& R) {
    R.require_commuting("leibniz_expand");
    if (theta.size() != R.d()) throw DomainError("multi-index length mismatch");
    // enumerate all divisors theta_1 of theta componentwise
    std::vector<ThetaAb> divisors;
    ThetaAb cur(theta.size(), 0);
    while (true) {
        divisors.push_back(cur);
        std::size_t i = 0;
        while (i < cur.size()) {
            if (cur[i] < theta[i]) { cur[i]++; break; }
            cur[i] = 0;
            ++i;
        }
        if (i == cur.size()) break;
    }
    Poly<K> out = Poly<K>::zero(f.ring());
    for (const auto& t1 : divisors) {
        ThetaAb t2 = theta_ab_sub(theta, t1);
        unsigned long long b = theta_binomial(theta, t1);
        K c = f.ring().scalar(static_cast<long long>(b));
        if (c.is_zero()) continue;
        out += (R.apply_ab(f, t1) * R.apply_ab(g, t2)).scaled(c);
    }
    return R.nf(out);
}

// All monomials of total degree <= D not divisible by any of the given
// leading monomials, in a deterministic order.
template <class K>
std::vector<Monomial> standard_monomials(const Ring<K>& A, const std::vector<Monomial>& lead,
                                         unsigned D) {
    std::vector<Monomial> out;
    std::vector<std::uint32_t> e(A.nvars(), 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == A.nvars()) {
            Monomial m{std::vector<std::uint32_t>(e)};
            for (const auto& lt : lead)
                if (lt.divides(m)) return;
            out.push_back(std::move(m));
            if (out.size() > limits().max_monomials)
                throw ResourceError("monomial enumeration cap exceeded");
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[i] = k;
            self(self, i + 1, left - k);
        }
        e[i] = 0;
    };
    rec(rec, 0, D);
    return out;
}

// Basis of the constants of R in total degree <= D: exact kernel of the
// stacked derivation maps on the span of the standard monomials.  When a
// quotient is present, coordinates run over monomials irreducible modulo its
// Groebner basis.
template <class K>
std::vector<Poly<K>> constants_truncated(const DiffRing<K>& R, unsigned D) {
    const Ring<K>& A = R.ring();
    std::vector<Monomial> std_monos;
    std::vector<Monomial> lead;
    if (R.quotient())
        for (const auto& g : R.quotient()->groebner()) lead.push_back(g.leading().first);
    std_monos = standard_monomials(A, lead, D);

    // column c is the coordinate vector of (NF(derive(m_c, i)))_i over a
    // shared monomial dictionary built in a first pass
    std::vector<std::vector<Poly<K>>> ders(std_monos.size());
    std::map<Monomial, std::size_t, MonoLess> dict;
    for (std::size_t c = 0; c < std_monos.size(); ++c) {
        for (std::size_t i = 0; i < R.d(); ++i) {
            Poly<K> der = R.derive(Poly<K>::term(A, std_monos[c], A.one()), i);
            for (const auto& [m, coef] : der.terms()) {
                (void)coef;
                dict.emplace(m, 0);
            }
            ders[c].push_back(std::move(der));
        }
    }
    std::size_t nrows_per_deriv = 0;
    for (auto& [m, idx] : dict) {
        (void)m;
        idx = nrows_per_deriv++;
    }
    Matrix<K> M(nrows_per_deriv * R.d(), std_monos.size(), A.zero());
    for (std::size_t c = 0; c < std_monos.size(); ++c)
        for (std::size_t i = 0; i < R.d(); ++i)
            for (const auto& [m, coef] : ders[c][i].terms())
                M.at(i * nrows_per_deriv + dict.at(m), c) = coef;

    auto kb = kernel_basis(std::move(M), A.ctx());
    std::vector<Poly<K>> out;
    for (const auto& v : kb) {
        Poly<K> p = Poly<K>::zero(A);
        for (std::size_t c = 0; c < v.size(); ++c)
            if (!v[c].is_zero()) p += Poly<K>::term(A, std_monos[c], v[c]);
        out.push_back(p);
    }
    return out;
}

// Result of the radial-model fraction constancy test.
template <class K> struct FractionConstResult {
    bool constant = false;
    K value{};
};

// Decides whether f/g is a constant of Frac(R) for the radial model ring
// R = k[x] with x' = x, by the numerator-degree reduction
// f/g = (f' - deg(f)*f) / (g' - deg(f)*g); only this model is supported.
template <class K>
FractionConstResult<K> check_constant_fraction(const DiffRing<K>& R, Poly<K> f, Poly<K> g) {
    const Ring<K>& A = R.ring();
    bool radial = A.nvars() == 1 && R.d() == 1 && !R.quotient() &&
                  R.derivations()[0].images[0] == Poly<K>::variable(A, 0);
    if (!radial) throw DomainError("check_constant_fraction: radial model ring required");
    if (g.is_zero()) throw DomainError("check_constant_fraction: zero denominator");
    // constant iff the Wronskian-style obstruction f'g - fg' vanishes
    if (!(R.derive(f, 0) * g - f * R.derive(g, 0)).is_zero()) return {false, A.zero()};
    while (!f.is_constant() || !g.is_constant()) {
        if (f.is_zero()) return {true, A.zero()};
        long n = f.degree();
        Poly<K> gn = R.derive(g, 0) - g.scaled(A.scalar(n));
        if (gn.is_zero()) {
            // g = lambda * x^n, and the vanishing obstruction forces f = mu * x^n
            K mu = f.leading().second, lambda = g.leading().second;
            return {true, mu / lambda};
        }
        f = R.derive(f, 0) - f.scaled(A.scalar(n));
        g = gn;
    }
    if (g.is_zero()) throw DomainError("check_constant_fraction: reduction degenerated");
    K fv = f.is_zero() ? A.zero() : f.leading().second;
    return {true, fv / g.leading().second};
}

// Localization S^{-1}R at f: adjoins a unit variable y with y*f = 1 and the
// induced derivation images d_i(y) = -y^2 * d_i(f).  Requires f nonzero and
// not nilpotent modulo the quotient.
template <class K>
DiffRing<K> localize(const DiffRing<K>& R, const Poly<K>& f) {
    const Ring<K>& A = R.ring();
    if (R.nf(f).is_zero()) throw DomainError("localize: f is zero in the ring");
    Ideal<K> Q = R.quotient() ? *R.quotient() : Ideal<K>::zero(A);
    if (radical_member(f, Q)) throw DomainError("localize: f is nilpotent in the ring");
    Ring<K> E = A.extended(A.fresh_var("y"));
    std::size_t yi = E.nvars() - 1;
    Poly<K> y = Poly<K>::variable(E, yi);
    std::vector<DerivationSpec<K>> derivs;
    for (const auto& d : R.derivations()) {
        DerivationSpec<K> nd{d.name, {}};
        for (const auto& img : d.images) nd.images.push_back(img.lift(E));
        nd.images.push_back(-(y * y) * derive_raw(f, d).lift(E));
        derivs.push_back(std::move(nd));
    }
    std::vector<Poly<K>> qgens;
    for (const auto& g : Q.generators()) qgens.push_back(g.lift(E));
    qgens.push_back(y * f.lift(E) - Poly<K>::one(E));
    return DiffRing<K>(E, std::move(derivs), Ideal<K>(E, std::move(qgens)));
}

} // namespace diffalg
