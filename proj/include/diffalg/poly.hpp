#pragma once

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/error.hpp"
#include "diffalg/monomial.hpp"
#include "diffalg/scalar.hpp"

namespace diffalg {

template <class K> struct RingData {
    typename K::Ctx ctx;
    std::vector<std::string> vars;
};

// Cheap shared handle to an immutable ring description (field context +
// variable list).  Rings compare by value so independently constructed
// handles over the same description interoperate.
template <class K> class Ring {
public:
    Ring() = default;
    Ring(typename K::Ctx ctx, std::vector<std::string> vars)
        : d_(std::make_shared<const RingData<K>>(RingData<K>{std::move(ctx), std::move(vars)})) {
        for (std::size_t i = 0; i < nvars(); ++i)
            for (std::size_t j = i + 1; j < nvars(); ++j)
                if (var(i) == var(j)) throw DomainError("duplicate variable name: " + var(i));
    }

    std::size_t nvars() const { return d_->vars.size(); }
    const std::string& var(std::size_t i) const { return d_->vars[i]; }
    const std::vector<std::string>& vars() const { return d_->vars; }
    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < nvars(); ++i)
            if (d_->vars[i] == name) return static_cast<int>(i);
        return -1;
    }

    const typename K::Ctx& ctx() const { return d_->ctx; }
    unsigned characteristic() const { return K::characteristic(d_->ctx); }
    K zero() const { return K::zero(d_->ctx); }
    K one() const { return K::one(d_->ctx); }
    K scalar(long long n) const { return K::from_int(d_->ctx, n); }

    // New ring with one variable appended.
    Ring extended(const std::string& name) const {
        auto vars = d_->vars;
        vars.push_back(name);
        return Ring(d_->ctx, std::move(vars));
    }
    // Fresh internal name not colliding with existing variables.
    std::string fresh_var(const std::string& stem) const {
        std::string name = stem;
        int n = 0;
        while (var_index(name) >= 0) name = stem + std::to_string(n++);
        return name;
    }

    bool operator==(const Ring& o) const {
        if (d_ == o.d_) return true;
        if (!d_ || !o.d_) return false;
        return d_->ctx == o.d_->ctx && d_->vars == o.d_->vars;
    }
    bool operator!=(const Ring& o) const { return !(*this == o); }

private:
    std::shared_ptr<const RingData<K>> d_;
};

// Sparse multivariate polynomial with exact coefficients.  Terms are kept in
// canonical form: sorted descending under degrevlex, no zero coefficients.
template <class K> class Poly {
public:
    using Term = std::pair<Monomial, K>;

    Poly() = default;
    explicit Poly(Ring<K> ring) : ring_(std::move(ring)) {}

    static Poly zero(const Ring<K>& r) { return Poly(r); }
    static Poly constant(const Ring<K>& r, const K& c) {
        Poly p(r);
        if (!c.is_zero()) p.terms_.emplace_back(Monomial(r.nvars()), c);
        return p;
    }
    static Poly one(const Ring<K>& r) { return constant(r, r.one()); }
    static Poly variable(const Ring<K>& r, std::size_t i, std::uint32_t k = 1) {
        Poly p(r);
        if (k == 0) return one(r);
        p.terms_.emplace_back(Monomial::var(r.nvars(), i, k), r.one());
        return p;
    }
    static Poly term(const Ring<K>& r, const Monomial& m, const K& c) {
        Poly p(r);
        if (!c.is_zero()) p.terms_.emplace_back(m, c);
        return p;
    }
    template <class Map> static Poly from_map(const Ring<K>& r, const Map& terms) {
        Poly p(r);
        p.terms_.reserve(terms.size());
        for (const auto& [m, c] : terms)
            if (!c.is_zero()) p.terms_.emplace_back(m, c);
        std::sort(p.terms_.begin(), p.terms_.end(), [](const Term& a, const Term& b) {
            return detail::cmp_degrevlex(a.first, b.first) > 0;
        });
        if (p.terms_.size() > limits().max_terms) throw ResourceError("term cap exceeded");
        return p;
    }

    const Ring<K>& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
    // Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.deg()));
        return d;
    }
    bool uses_var(std::size_t i) const {
        for (const auto& t : terms_)
            if (t.first.exp(i) > 0) return true;
        return false;
    }

    const Term& leading(const MonomialOrder& ord = MonomialOrder::degrevlex()) const {
        if (terms_.empty()) throw DomainError("leading term of zero polynomial");
        if (ord.kind == MonomialOrder::Kind::DegRevLex) return terms_.front();
        std::size_t best = 0;
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (mono_cmp(terms_[i].first, terms_[best].first, ord) > 0) best = i;
        return terms_[best];
    }

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.match(b);
        Poly r(a.ring_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            int c = detail::cmp_degrevlex(a.terms_[i].first, b.terms_[j].first);
            if (c > 0) r.terms_.push_back(a.terms_[i++]);
            else if (c < 0) r.terms_.push_back(b.terms_[j++]);
            else {
                K s = a.terms_[i].second + b.terms_[j].second;
                if (!s.is_zero()) r.terms_.emplace_back(a.terms_[i].first, s);
                ++i; ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.match(b);
        std::map<Monomial, K, MonoLess> acc;
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) {
                Monomial m = ta.first * tb.first;
                K c = ta.second * tb.second;
                auto it = acc.find(m);
                if (it == acc.end()) acc.emplace(std::move(m), std::move(c));
                else {
                    it->second += c;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        return from_map(a.ring_, acc);
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const K& c) const {
        Poly r(ring_);
        if (c.is_zero()) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.second = t.second * c;
        return r;
    }
    Poly mono_mul(const Monomial& m, const K& c) const {
        Poly r(ring_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, t.second * c);
        return r;
    }

    Poly pow(std::uint32_t n) const {
        Poly r = one(ring_);
        Poly b = *this;
        while (n) {
            if (n & 1u) r = r * b;
            n >>= 1u;
            if (n) b = b * b;
        }
        return r;
    }

    // Formal partial derivative d/dx_i (no derivation structure involved).
    Poly formal_partial(std::size_t i) const {
        Poly r(ring_);
        for (const auto& t : terms_) {
            std::uint32_t e = t.first.exp(i);
            if (e == 0) continue;
            K c = t.second * ring_.scalar(e);
            if (c.is_zero()) continue;
            r.terms_.emplace_back(t.first / Monomial::var(ring_.nvars(), i), c);
        }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) {
            return detail::cmp_degrevlex(a.first, b.first) > 0;
        });
        return r;
    }

    // Substitute the scalar c for variable i.
    Poly eval_var(std::size_t i, const K& c) const {
        std::map<Monomial, K, MonoLess> acc;
        for (const auto& t : terms_) {
            std::uint32_t e = t.first.exp(i);
            K coeff = t.second;
            for (std::uint32_t k = 0; k < e; ++k) coeff = coeff * c;
            if (coeff.is_zero()) continue;
            Monomial m = e ? t.first / Monomial::var(ring_.nvars(), i, e) : t.first;
            auto it = acc.find(m);
            if (it == acc.end()) acc.emplace(std::move(m), std::move(coeff));
            else {
                it->second += coeff;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
        return from_map(ring_, acc);
    }

    // Map into another ring; var_map[i] is the index of this ring's variable
    // i in the target ring.
    Poly transfer(const Ring<K>& target, const std::vector<std::size_t>& var_map) const {
        Poly r(target);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            std::vector<std::uint32_t> e(target.nvars(), 0);
            for (std::size_t i = 0; i < ring_.nvars(); ++i) {
                if (t.first.exp(i) == 0) continue;
                e[var_map[i]] = t.first.exp(i);
            }
            r.terms_.emplace_back(Monomial(std::move(e)), t.second);
        }
        std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) {
            return detail::cmp_degrevlex(a.first, b.first) > 0;
        });
        return r;
    }
    // Identity embedding into a ring that has this ring's variables as a prefix.
    Poly lift(const Ring<K>& target) const {
        std::vector<std::size_t> id(ring_.nvars());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        return transfer(target, id);
    }

    bool operator==(const Poly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Canonical text form: degrevlex-descending terms, explicit '*' and '^'.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            K a = c;
            if (first) {
                if (!c.is_nonnegative()) { os << "-"; a = -c; }
            } else {
                if (c.is_nonnegative()) os << " + ";
                else { os << " - "; a = -c; }
            }
            first = false;
            if (m.is_one()) { os << a.str(); continue; }
            bool coeff_shown = false;
            if (!a.is_one()) { os << a.str(); coeff_shown = true; }
            bool any = coeff_shown;
            for (std::size_t i = 0; i < m.nvars(); ++i) {
                if (m.exp(i) == 0) continue;
                if (any) os << "*";
                os << ring_.var(i);
                if (m.exp(i) > 1) os << "^" << m.exp(i);
                any = true;
            }
        }
        return os.str();
    }

private:
    void match(const Poly& o) const {
        if (ring_ != o.ring_) throw RingMismatchError("polynomials from different rings");
    }

    Ring<K> ring_;
    std::vector<Term> terms_;
};

template <class K> std::string poly_list_str(const std::vector<Poly<K>>& ps) {
    std::string s = "(";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ", ";
        s += ps[i].str();
    }
    if (ps.empty()) s += "0";
    s += ")";
    return s;
}

} // namespace diffalg
