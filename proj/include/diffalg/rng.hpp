#pragma once

#include <cstdint>
#include <random>

#include "diffalg/poly.hpp"

namespace diffalg {

// Deterministic seeded RNG.  Only raw mt19937_64 output is used (reduced by
// modulo), so streams are reproducible across platforms and standard
// libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t next() { return g_(); }
    std::uint64_t below(std::uint64_t n) { return n ? g_() % n : 0; }
    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
    std::mt19937_64 g_;
};

// Random nonzero field scalar with small numerator/denominator.
template <class K> K random_scalar(const Ring<K>& R, Rng& rng, bool nonzero = false) {
    unsigned p = R.characteristic();
    for (int attempt = 0; attempt < 64; ++attempt) {
        K c = p ? R.scalar(static_cast<long long>(rng.below(p)))
                : R.scalar(rng.range(-4, 4));
        if (!nonzero || !c.is_zero()) return c;
    }
    return R.one();
}

// Random polynomial: up to `maxterms` monomials of total degree <= maxdeg.
template <class K>
Poly<K> random_poly(const Ring<K>& R, Rng& rng, unsigned maxdeg, unsigned maxterms,
                    bool nonzero = false) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Poly<K> p = Poly<K>::zero(R);
        unsigned nt = 1 + static_cast<unsigned>(rng.below(maxterms));
        for (unsigned t = 0; t < nt; ++t) {
            std::vector<std::uint32_t> e(R.nvars(), 0);
            unsigned budget = static_cast<unsigned>(rng.below(maxdeg + 1));
            for (unsigned d = 0; d < budget; ++d) {
                if (R.nvars() == 0) break;
                e[rng.below(R.nvars())]++;
            }
            K c = random_scalar(R, rng, true);
            p += Poly<K>::term(R, Monomial(std::move(e)), c);
        }
        if (!nonzero || !p.is_zero()) return p;
    }
    return Poly<K>::one(R);
}

} // namespace diffalg
