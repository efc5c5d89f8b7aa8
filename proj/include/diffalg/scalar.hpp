#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "diffalg/error.hpp"

namespace diffalg {

// Exact rational scalar over Q.  Thin wrapper around GMP's mpq_class;
// values are kept canonical (lowest terms, positive denominator) by GMP.
class Rational {
public:
    struct Ctx {
        bool operator==(const Ctx&) const = default;
    };

    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long num, unsigned long den) : v_(num, den) { v_.canonicalize(); }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rational zero(const Ctx&) { return Rational(0); }
    static Rational one(const Ctx&) { return Rational(1); }
    static Rational from_int(const Ctx&, long long n) {
        Rational r;
        r.v_ = mpz_class(std::to_string(n));
        return r;
    }
    // Digits must form a base-10 non-negative integer.
    static Rational from_digits(const Ctx&, const std::string& digits) {
        Rational r;
        r.v_ = mpz_class(digits);
        return r;
    }

    static constexpr unsigned characteristic(const Ctx&) { return 0; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    Rational inv() const {
        if (is_zero()) throw DomainError("inverse of zero");
        return Rational(mpq_class(1) / v_);
    }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    // True when the value prints without a leading minus sign.
    bool is_nonnegative() const { return v_ >= 0; }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    std::string str() const { return v_.get_str(); }

    const mpq_class& value() const { return v_; }

private:
    mpq_class v_;
};

// Prime-field scalar F_p for a word-size prime p.  Elements carry their
// modulus; a default-constructed value is the "universal zero" (modulus 0)
// so containers and accumulators work before a modulus is known.
class GFp {
public:
    struct Ctx {
        std::uint32_t p = 0;
        bool operator==(const Ctx&) const = default;
    };

    GFp() = default;
    GFp(std::uint64_t v, std::uint32_t p) : p_(p) { v_ = static_cast<std::uint32_t>(v % p); }

    static GFp zero(const Ctx& c) { return GFp(0, c.p); }
    static GFp one(const Ctx& c) { return GFp(1, c.p); }
    static GFp from_int(const Ctx& c, long long n) {
        long long m = n % static_cast<long long>(c.p);
        if (m < 0) m += c.p;
        return GFp(static_cast<std::uint64_t>(m), c.p);
    }
    static GFp from_digits(const Ctx& c, const std::string& digits) {
        std::uint64_t acc = 0;
        for (char ch : digits) acc = (acc * 10 + static_cast<std::uint64_t>(ch - '0')) % c.p;
        return GFp(acc, c.p);
    }

    static unsigned characteristic(const Ctx& c) { return c.p; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    std::uint32_t modulus() const { return p_; }

    GFp operator-() const { return v_ == 0 ? *this : GFp(p_ - v_, p_); }
    GFp& operator+=(const GFp& o) {
        match(o);
        std::uint64_t s = static_cast<std::uint64_t>(v_) + o.v_;
        v_ = static_cast<std::uint32_t>(s >= p_ && p_ ? s - p_ : s);
        return *this;
    }
    GFp& operator-=(const GFp& o) { return *this += -o; }
    GFp& operator*=(const GFp& o) {
        match(o);
        if (p_ == 0) { v_ = 0; return *this; }
        v_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_);
        return *this;
    }
    GFp& operator/=(const GFp& o) { return *this *= o.inv(); }
    friend GFp operator+(GFp a, const GFp& b) { return a += b; }
    friend GFp operator-(GFp a, const GFp& b) { return a -= b; }
    friend GFp operator*(GFp a, const GFp& b) { return a *= b; }
    friend GFp operator/(GFp a, const GFp& b) { return a /= b; }

    GFp inv() const {
        if (v_ == 0) throw DomainError("division by zero in F_p");
        // extended Euclid on (v_, p_)
        long long t = 0, nt = 1, r = p_, nr = v_;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        if (t < 0) t += p_;
        return GFp(static_cast<std::uint64_t>(t), p_);
    }

    bool operator==(const GFp& o) const { return v_ == o.v_ && (v_ == 0 || p_ == o.p_); }
    bool operator!=(const GFp& o) const { return !(*this == o); }

    bool is_nonnegative() const { return true; }
    GFp abs() const { return *this; }

    std::string str() const { return std::to_string(v_); }

private:
    void match(const GFp& o) {
        if (p_ == 0) p_ = o.p_;
        else if (o.p_ != 0 && o.p_ != p_) throw RingMismatchError("mixed F_p moduli");
    }

    std::uint32_t v_ = 0;
    std::uint32_t p_ = 0;
};

} // namespace diffalg
