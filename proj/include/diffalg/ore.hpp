#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diffalg/diffring.hpp"
#include "diffalg/linalg.hpp"

namespace diffalg {

// Element of the Ore algebra R[d] over a ring with a single derivation d:
// a finite sum sum_i c_i d^i with the commutation rule d*a = a*d + d(a).
// Coefficients are stored densely by order, without trailing zeros.
template <class K> class LinDiffOp {
public:
    LinDiffOp() = default;
    LinDiffOp(DiffRing<K> R, std::vector<Poly<K>> coeffs)
        : R_(std::move(R)), c_(std::move(coeffs)) {
        if (R_.d() != 1)
            throw DomainError("LinDiffOp requires a ring with exactly one derivation");
        normalize();
    }

    static LinDiffOp zero(const DiffRing<K>& R) { return LinDiffOp(R, {}); }
    static LinDiffOp identity(const DiffRing<K>& R) {
        return LinDiffOp(R, {Poly<K>::one(R.ring())});
    }
    // c * d^n
    static LinDiffOp monomial(const DiffRing<K>& R, const Poly<K>& c, std::size_t n) {
        std::vector<Poly<K>> v(n + 1, Poly<K>::zero(R.ring()));
        v[n] = c;
        return LinDiffOp(R, std::move(v));
    }

    const DiffRing<K>& carrier() const { return R_; }
    const std::vector<Poly<K>>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // order of the zero operator is -1 by convention
    int order() const { return static_cast<int>(c_.size()) - 1; }
    Poly<K> coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : Poly<K>::zero(R_.ring());
    }

    LinDiffOp operator+(const LinDiffOp& o) const {
        match(o);
        std::vector<Poly<K>> v(std::max(c_.size(), o.c_.size()), Poly<K>::zero(R_.ring()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
        return LinDiffOp(R_, std::move(v));
    }
    LinDiffOp operator-(const LinDiffOp& o) const {
        match(o);
        std::vector<Poly<K>> v(std::max(c_.size(), o.c_.size()), Poly<K>::zero(R_.ring()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) - o.coeff(i);
        return LinDiffOp(R_, std::move(v));
    }
    LinDiffOp scaled(const K& s) const {
        auto v = c_;
        for (auto& p : v) p = p.scaled(s);
        return LinDiffOp(R_, std::move(v));
    }

    bool operator==(const LinDiffOp& o) const { return R_ == o.R_ && c_ == o.c_; }

    std::string str() const {
        if (c_.empty()) return "0";
        const std::string dn = R_.derivations()[0].name;
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            std::string cs = c_[i].str();
            std::string piece;
            if (i == 0) {
                piece = cs;
            } else {
                if (cs != "1") piece = "(" + cs + ")*";
                piece += dn;
                if (i > 1) piece += "^" + std::to_string(i);
            }
            if (s.empty()) s = piece;
            else if (piece[0] == '-') s += " - " + piece.substr(1);
            else s += " + " + piece;
        }
        return s;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void match(const LinDiffOp& o) const {
        if (!(R_ == o.R_)) throw RingMismatchError("operators over different rings");
    }

    DiffRing<K> R_;
    std::vector<Poly<K>> c_;
};

// Module action: (sum c_i d^i) applied to f.
template <class K>
Poly<K> op_apply(const LinDiffOp<K>& L, const Poly<K>& f) {
    const auto& R = L.carrier();
    Poly<K> out = Poly<K>::zero(R.ring());
    Poly<K> der = R.nf(f);
    for (std::size_t i = 0; i < L.coeffs().size(); ++i) {
        if (!L.coeffs()[i].is_zero()) out += L.coeffs()[i] * der;
        der = R.derive(der, 0);
    }
    return R.nf(out);
}

// Noncommutative product: d^i * a = sum_m binom(i, m) * a^(m) * d^(i-m).
template <class K>
LinDiffOp<K> ore_mul(const LinDiffOp<K>& L1, const LinDiffOp<K>& L2) {
    if (!(L1.carrier() == L2.carrier()))
        throw RingMismatchError("operators over different rings");
    const auto& R = L1.carrier();
    if (L1.is_zero() || L2.is_zero()) return LinDiffOp<K>::zero(R);
    std::size_t n1 = L1.coeffs().size(), n2 = L2.coeffs().size();
    std::vector<Poly<K>> res(n1 + n2 - 1, Poly<K>::zero(R.ring()));
    for (std::size_t j = 0; j < n2; ++j) {
        if (L2.coeffs()[j].is_zero()) continue;
        Poly<K> der = L2.coeffs()[j]; // m-th derivative of the j-th coefficient
        for (std::size_t m = 0; m < n1; ++m) {
            if (m > 0) der = R.derive(der, 0);
            if (der.is_zero()) break;
            for (std::size_t i = m; i < n1; ++i) {
                if (L1.coeffs()[i].is_zero()) continue;
                K b = R.ring().scalar(static_cast<long long>(
                    detail::binom_ull(static_cast<std::uint32_t>(i),
                                      static_cast<std::uint32_t>(m))));
                if (b.is_zero()) continue;
                res[i - m + j] += (L1.coeffs()[i] * der).scaled(b);
            }
        }
    }
    return LinDiffOp<K>(R, std::move(res));
}

// For K = C[t] with t' = 1: the operator (1/c) d^n with n = deg(lambda) and
// c = d^n(lambda), a nonzero constant; it maps lambda to 1.
template <class K>
LinDiffOp<K> unit_operator(const DiffRing<K>& R, const Poly<K>& lambda) {
    if (R.d() != 1) throw DomainError("unit_operator requires a single derivation");
    Poly<K> l = R.nf(lambda);
    if (l.is_zero()) throw DomainError("unit_operator: lambda must be nonzero");
    int n = l.degree();
    Poly<K> c = l;
    for (int i = 0; i < n; ++i) c = R.derive(c, 0);
    if (!c.is_constant() || c.is_zero())
        throw DomainError("unit_operator: lambda is not a simple-part element");
    K lc = c.terms()[0].second;
    return LinDiffOp<K>::monomial(R, Poly<K>::constant(R.ring(), lc.inv()), n);
}

namespace detail {

// The unique variable moved by the derivation; the t of the C[t] model.
template <class K>
std::size_t moving_variable(const DiffRing<K>& R) {
    if (R.d() != 1) throw DomainError("expected a single derivation");
    const auto& imgs = R.derivations()[0].images;
    std::size_t found = R.ring().nvars();
    for (std::size_t v = 0; v < imgs.size(); ++v) {
        if (imgs[v].is_zero()) continue;
        if (found != R.ring().nvars())
            throw DomainError("expected exactly one moving variable");
        found = v;
    }
    if (found == R.ring().nvars())
        throw DomainError("expected exactly one moving variable");
    return found;
}

} // namespace detail

// Basis of the annihilator left-module slice { L : order(L) <= maxord,
// deg coefficients <= coeffdeg, L applied to lambda = 0 }, by exact linear
// algebra over the monomial operators t^a d^i.
template <class K>
std::vector<LinDiffOp<K>> ann_operator(const DiffRing<K>& R, const Poly<K>& lambda,
                                       unsigned maxord, unsigned coeffdeg) {
    std::size_t tv = detail::moving_variable(R);
    const auto& A = R.ring();
    // columns: monomial operator t^a d^i; rows: monomials of the images
    std::vector<std::pair<unsigned, unsigned>> ops; // (i, a)
    std::vector<Poly<K>> img;
    Poly<K> der = R.nf(lambda);
    for (unsigned i = 0; i <= maxord; ++i) {
        for (unsigned a = 0; a <= coeffdeg; ++a) {
            ops.emplace_back(i, a);
            img.push_back(Poly<K>::term(A, Monomial::var(A.nvars(), tv, a), A.one()) * der);
        }
        der = R.derive(der, 0);
    }
    std::map<Monomial, std::size_t, MonoLess> dict;
    for (const auto& f : img)
        for (const auto& t : f.terms()) dict.emplace(t.first, 0);
    std::size_t r = 0;
    for (auto& [m, idx] : dict) {
        (void)m;
        idx = r++;
    }
    Matrix<K> M(std::max<std::size_t>(1, dict.size()), ops.size(), A.zero());
    for (std::size_t cidx = 0; cidx < ops.size(); ++cidx)
        for (const auto& t : img[cidx].terms())
            M.at(dict.at(t.first), cidx) = t.second;
    auto ker = kernel_basis(std::move(M), A.ctx());
    std::vector<LinDiffOp<K>> out;
    for (const auto& v : ker) {
        std::vector<Poly<K>> coeffs(maxord + 1, Poly<K>::zero(A));
        for (std::size_t cidx = 0; cidx < ops.size(); ++cidx)
            if (!v[cidx].is_zero())
                coeffs[ops[cidx].first] +=
                    Poly<K>::term(A, Monomial::var(A.nvars(), tv, ops[cidx].second), v[cidx]);
        out.emplace_back(R, std::move(coeffs));
    }
    return out;
}

} // namespace diffalg
