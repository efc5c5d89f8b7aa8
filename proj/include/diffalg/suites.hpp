#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diffalg/parse.hpp"
#include "diffalg/report.hpp"
#include "diffalg/rng.hpp"
#include "diffalg/scheme.hpp"

// Named verification suites.  Each returns a Report whose pass flag is the
// suite verdict; seeds and bounds are recorded in the report metadata so
// runs are reproducible from the output alone.

namespace diffalg {
namespace suites_detail {

template <class K> Poly<K> P(const Ring<K>& R, const std::string& s) {
    return parse_poly(s, R);
}

template <class K> Ideal<K> ideal_of(const Ring<K>& R, const std::string& gens) {
    return Ideal<K>(R, parse_poly_list(gens, R));
}

template <class K>
DerivationSpec<K> deriv(const Ring<K>& R, std::string name, std::vector<std::string> images) {
    DerivationSpec<K> d{std::move(name), {}};
    for (const auto& s : images) d.images.push_back(parse_poly(s, R));
    return d;
}

// x^2 = xy = y^2 = 0 with d(x) = y: the square-zero pair ring, valid over
// any scalar field
template <class K> DiffRing<K> square_zero_pair(const typename K::Ctx& ctx) {
    Ring<K> R(ctx, {"x", "y"});
    return DiffRing<K>(R, {deriv(R, "d", {"y", "0"})},
                       Ideal<K>(R, {P(R, "x^2"), P(R, "x*y"), P(R, "y^2")}));
}

// one random family of pairwise commuting derivations on a fresh ring
template <class K>
DiffRing<K> random_commuting_ring(const typename K::Ctx& ctx, Rng& rng) {
    static const char* pool[3] = {"x", "y", "z"};
    std::size_t nvars = 1 + static_cast<std::size_t>(rng.below(3));
    Ring<K> R(ctx, std::vector<std::string>(pool, pool + nvars));
    std::size_t nd = 1 + rng.below(3);
    unsigned kind = static_cast<unsigned>(rng.below(3));
    if (kind == 2) nd = std::min(nd, nvars);
    std::vector<DerivationSpec<K>> derivs;
    for (std::size_t i = 0; i < nd; ++i) {
        DerivationSpec<K> d{"d" + std::to_string(i),
                            std::vector<Poly<K>>(nvars, Poly<K>::zero(R))};
        for (std::size_t v = 0; v < nvars; ++v) {
            switch (kind) {
            case 0: // translations: constant images
                d.images[v] = Poly<K>::constant(R, random_scalar(R, rng));
                break;
            case 1: // diagonal scalings
                d.images[v] = Poly<K>::variable(R, v).scaled(random_scalar(R, rng));
                break;
            default: // separated: d_i moves only variable i
                if (v == i) {
                    Poly<K> img = Poly<K>::zero(R);
                    for (std::uint32_t e = 0; e <= 2; ++e)
                        img += Poly<K>::variable(R, v, e).scaled(random_scalar(R, rng));
                    d.images[v] = img;
                }
                break;
            }
        }
        derivs.push_back(std::move(d));
    }
    return DiffRing<K>(R, std::move(derivs));
}

template <class K>
void leibniz_field_pass(Report& r, const typename K::Ctx& ctx, const char* field,
                        Rng& rng, unsigned cases) {
    for (unsigned i = 0; i < cases; ++i) {
        DiffRing<K> R = random_commuting_ring<K>(ctx, rng);
        if (!R.commuting()) {
            r.check(false, std::string(field) + ": generated family does not commute");
            continue;
        }
        Poly<K> f = random_poly(R.ring(), rng, 4, 4);
        Poly<K> g = random_poly(R.ring(), rng, 4, 4);
        ThetaAb theta(R.d(), 0);
        for (std::uint64_t s = rng.below(5); s > 0; --s) theta[rng.below(theta.size())]++;
        bool ok = leibniz_expand(f, g, theta, R) == R.apply_ab(f * g, theta);
        r.check(ok, std::string(field) + ": f=" + f.str() + " g=" + g.str());
    }
}

// sampled radical test: anything in the radical must already be a member
template <class K>
bool looks_radical(const Ring<K>& A, const Ideal<K>& I, Rng& rng, unsigned samples) {
    for (unsigned s = 0; s < samples; ++s) {
        Poly<K> g = random_poly(A, rng, 2, 3);
        if (radical_member(g, I) && !I.contains(g)) return false;
    }
    return true;
}

} // namespace suites_detail

// Kolchin-Leibniz expansion against direct word application, over Q and F_5,
// on random commuting families with up to three derivations.
inline Report suite_leibniz(std::uint64_t seed = 1, unsigned cases = 500) {
    Report r;
    r.lemma = "leibniz";
    r.note("seed", std::to_string(seed));
    r.note("cases-per-field", std::to_string(cases));
    r.note("bounds", "deg<=4, order<=4, d<=3");
    Rng rng(seed);
    suites_detail::leibniz_field_pass<Rational>(r, Rational::Ctx{}, "Q", rng, cases);
    suites_detail::leibniz_field_pass<GFp>(r, GFp::Ctx{5}, "F5", rng, cases);
    return r;
}

// Colon-ideal properties (i)-(v) on random and fixture ideals of Q[x,y]
// carrying the diagonal derivation x d/dx - y d/dy.
inline Report suite_colon(std::uint64_t seed = 1, unsigned cases = 40) {
    using namespace suites_detail;
    Report r;
    r.lemma = "colon";
    r.note("seed", std::to_string(seed));
    r.note("cases", std::to_string(cases));
    Ring<Rational> A(Rational::Ctx{}, {"x", "y"});
    DiffRing<Rational> R(A, {deriv(A, "d", {"x", "-y"})});
    Rng rng(seed);

    for (unsigned i = 0; i < cases; ++i) {
        std::vector<Poly<Rational>> gens;
        unsigned ng = 1 + static_cast<unsigned>(rng.below(2));
        for (unsigned g = 0; g < ng; ++g) gens.push_back(random_poly(A, rng, 2, 3));
        Ideal<Rational> I(A, gens);
        Poly<Rational> f = random_poly(A, rng, 2, 2, true);
        auto C = colon(I, f);
        auto S = saturation(I, f);
        // (i) the tower
        r.check(C.contains_ideal(I) && S.contains_ideal(C),
                "(i) tower fails: f=" + f.str());
        // (ii) colon times divisor lands back inside, element- and ideal-wise
        bool ok2 = true;
        for (const auto& c : C.groebner())
            if (!I.contains(c * f)) ok2 = false;
        Ideal<Rational> J(A, {random_poly(A, rng, 2, 2, true)});
        auto CJ = colon(I, J);
        for (const auto& a : CJ.groebner())
            for (const auto& b : J.generators())
                if (!I.contains(a * b)) ok2 = false;
        r.check(ok2, "(ii) product escapes I: f=" + f.str());
        // (iii) saturation of a derivation-stable ideal stays stable
        auto cl = delta_close(R, I, 4);
        if (cl.certified && effective_ideal(R, cl.result).is_proper()) {
            auto SJ = saturation(cl.result, f);
            r.check(is_delta_ideal(R, SJ), "(iii) saturation not stable: f=" + f.str());
        }
    }

    // (iv) on radical fixtures: colon equals saturation and stays radical
    for (const char* s : {"x", "y", "x*y", "x^2 - y^2", "x; y", "y^2 - x", "x^2 - x"}) {
        auto I = ideal_of(A, s);
        for (int k = 0; k < 4; ++k) {
            Poly<Rational> f = random_poly(A, rng, 2, 2, true);
            auto C = colon(I, f);
            r.check(C.equals(saturation(I, f)), std::string("(iv-a) ") + s);
            r.check(looks_radical(A, C, rng, 12), std::string("(iv-b) ") + s);
        }
    }

    // (v) on radical derivation-stable fixtures: the colon is again a radical
    // derivation-stable ideal
    for (const char* s : {"x", "y", "x*y", "x; y"}) {
        auto I = ideal_of(A, s);
        r.check(is_delta_ideal(R, I), std::string("(v) fixture not stable: ") + s);
        for (int k = 0; k < 4; ++k) {
            Poly<Rational> f = random_poly(A, rng, 2, 2, true);
            auto C = colon(I, f);
            r.check(is_delta_ideal(R, C), std::string("(v) colon not stable: ") + s);
            r.check(looks_radical(A, C, rng, 12), std::string("(v) colon not radical: ") + s);
        }
    }
    return r;
}

// Product-into-the-minimal-radical lemmas: theta_1(x) theta_2(y) lands in
// {I} whenever xy does, {I}{J} inside {IJ}, and the easy lemma
// x^(e+1) theta(y) in I for stable I.
inline Report suite_minrad(std::uint64_t seed = 1) {
    using namespace suites_detail;
    Report r;
    r.lemma = "minrad";
    r.note("seed", std::to_string(seed));
    Ring<Rational> A(Rational::Ctx{}, {"x", "y"});
    DiffRing<Rational> R(A, {deriv(A, "d1", {"x", "-y"}), deriv(A, "d2", {"x", "y"})});
    r.absorb(verify_lemma_easy(R, ideal_of(A, "x*y"), 25, 3, seed));
    r.absorb(verify_lemma_easy(R, ideal_of(A, "x"), 25, 3, seed + 1));
    r.absorb(verify_min_rad(R, ideal_of(A, "x*y"), ideal_of(A, "y"), 4, 20, 3, seed + 2));
    r.absorb(verify_min_rad(R, ideal_of(A, "x"), ideal_of(A, "y"), 4, 20, 3, seed + 3));

    Ring<Rational> B(Rational::Ctx{}, {"x"});
    DiffRing<Rational> X(B, {deriv(B, "d", {"x"})});
    r.absorb(verify_lemma_easy(X, ideal_of(B, "x"), 15, 3, seed + 4));
    r.absorb(verify_min_rad(X, ideal_of(B, "x"), ideal_of(B, "x"), 4, 10, 3, seed + 5));
    return r;
}

// Nilpotency bounds for x with x^n = 0: (dx)^(2n-1) = 0 and the general
// theta(x) exponent bound, over Q.
inline Report suite_nilpotency() {
    using namespace suites_detail;
    Report r;
    r.lemma = "nilpotency";
    {
        auto R = square_zero_pair<Rational>(Rational::Ctx{});
        r.absorb(verify_nilpotency(R, P(R.ring(), "x"), 2, 4));
    }
    {
        Ring<Rational> A(Rational::Ctx{}, {"x"});
        DiffRing<Rational> R(A, {deriv(A, "d", {"x"})}, ideal_of(A, "x^3"));
        r.absorb(verify_nilpotency(R, P(A, "x"), 3, 4));
    }
    {
        Ring<Rational> A(Rational::Ctx{}, {"x", "y"});
        DiffRing<Rational> R(A, {deriv(A, "d", {"x*y", "0"})}, ideal_of(A, "x^3; y^2"));
        r.absorb(verify_nilpotency(R, P(A, "x"), 3, 4));
    }
    return r;
}

// The super-lemma ring: words in x never meet words in y, over Q and F_2,
// and the bracket closures multiply into the square-zero part.
inline Report suite_superlemma() {
    using namespace suites_detail;
    Report r;
    r.lemma = "superlemma";
    {
        auto R = square_zero_pair<Rational>(Rational::Ctx{});
        auto fam = std::vector<DerivationSpec<Rational>>{
            deriv(R.ring(), "e", {"y", "0"})};
        r.absorb(verify_super_lemma(R, fam, ideal_of(R.ring(), "x"),
                                    ideal_of(R.ring(), "y"), 3, 4));
    }
    {
        auto R = square_zero_pair<GFp>(GFp::Ctx{2});
        auto fam = std::vector<DerivationSpec<GFp>>{deriv(R.ring(), "e", {"y", "0"})};
        r.absorb(verify_super_lemma(R, fam, ideal_of(R.ring(), "x"),
                                    ideal_of(R.ring(), "y"), 3, 4));
    }
    return r;
}

// Sharpened trajectories of asserted primes stay unfalsified as primes,
// across the characteristic-zero fixture rings.
inline Report suite_psharp_prime(std::uint64_t seed = 7, unsigned trials = 200,
                                 unsigned degcap = 3) {
    using namespace suites_detail;
    Report r;
    r.lemma = "psharp-prime";
    r.note("seed", std::to_string(seed));
    r.note("trials", std::to_string(trials));
    r.note("degcap", std::to_string(degcap));

    struct Fixture {
        DiffRing<Rational> R;
        Ideal<Rational> p;
        std::string name;
        unsigned D;
    };
    std::vector<Fixture> fixtures;
    auto add = [&](const DiffRing<Rational>& R, const std::string& tag,
                   const std::string& gens, unsigned D) {
        Ideal<Rational> p = gens.empty() ? Ideal<Rational>::zero(R.ring())
                                         : ideal_of(R.ring(), gens);
        fixtures.push_back(Fixture{R, p, tag + " (" + (gens.empty() ? "0" : gens) + ")", D});
    };

    Ring<Rational> L(Rational::Ctx{}, {"x"});
    DiffRing<Rational> line(L, {deriv(L, "d", {"1"})});
    for (const char* s : {"", "x", "x - 1", "x + 2", "x^2 - 2"}) add(line, "line", s, 6);

    DiffRing<Rational> rad(L, {deriv(L, "d", {"x"})});
    for (const char* s : {"", "x", "x - 1", "x^2 - 2"}) add(rad, "radial", s, 6);

    Ring<Rational> Pxy(Rational::Ctx{}, {"x", "y"});
    DiffRing<Rational> shift(Pxy, {deriv(Pxy, "d", {"1", "0"})});
    for (const char* s : {"", "y", "x", "x - y", "y^2 - x"}) add(shift, "shift", s, 5);

    TensorRing<Rational> T(Ring<Rational>(Rational::Ctx{}, {"u", "v"}));
    for (const char* s : {"", "u", "u^2 - v", "u; v", "t", "u; t"})
        add(T.realization(), "tensor", s, 4);

    r.note("fixtures", std::to_string(fixtures.size()));
    for (const auto& fx : fixtures) {
        auto res = psharp(fx.R, fx.p, fx.D);
        auto w = primality_falsify(fx.R, res.final_ideal, trials, degcap, seed);
        std::string msg = fx.name;
        if (w) msg += ": witness (" + w->first.str() + ", " + w->second.str() + ")";
        r.check(!w.has_value(), msg);
    }
    return r;
}

// Both descent round trips over A = Q[u,v]: contraction undoes extension on
// random ideals, and extension undoes contraction on derivation-closed
// ideals of the realization.
inline Report suite_svdp_roundtrip(std::uint64_t seed = 20260823, unsigned cases = 200) {
    Report r;
    r.lemma = "svdp-roundtrip";
    r.note("seed", std::to_string(seed));
    r.note("cases", std::to_string(cases));
    TensorRing<Rational> T(Ring<Rational>(Rational::Ctx{}, {"u", "v"}));
    const auto& A = T.base();
    const auto& E = T.realization().ring();
    Rng rng(seed);
    unsigned certified = 0;
    for (unsigned i = 0; i < cases; ++i) {
        std::vector<Poly<Rational>> gens;
        unsigned ng = 1 + static_cast<unsigned>(rng.below(3));
        for (unsigned g = 0; g < ng; ++g) gens.push_back(random_poly(A, rng, 3, 4));
        Ideal<Rational> I(A, std::move(gens));
        r.check(contract_ideal(T, extend_ideal(T, I)).equals(I),
                "contract after extend, case " + std::to_string(i));

        auto cl = delta_close(T.realization(),
                              Ideal<Rational>(E, {random_poly(E, rng, 3, 3)}), 6);
        if (cl.certified) {
            ++certified;
            r.check(extend_ideal(T, contract_ideal(T, cl.result)).equals(cl.result),
                    "extend after contract, case " + std::to_string(i));
        }
    }
    r.note("closure-certified", std::to_string(certified));
    if (certified < cases / 2) r.check(false, "too few certified closures");
    return r;
}

// The two descent identities along the fiber maps, on the fixture grid.
inline Report suite_propB() {
    using namespace suites_detail;
    Report r;
    r.lemma = "propB";
    r.note("grid", "{(0),(u),(u^2-v),(u,v)} x c in {0,1,-1,2}, D=4");
    TensorRing<Rational> T(Ring<Rational>(Rational::Ctx{}, {"u", "v"}));
    const auto& A = T.base();
    for (const char* s : {"0", "u", "u^2 - v", "u; v"}) {
        auto I = ideal_of(A, s);
        auto J = extend_ideal(T, I);
        auto contr = contract_ideal(T, J);
        for (long long c : {0, 1, -1, 2}) {
            std::string tag = std::string("I=(") + s + "), c=" + std::to_string(c);
            r.check(fiber_j_ideal(T, J, A.scalar(c)).equals(contr), "fiber != contraction, " + tag);
            auto res = fiber_pullback_sharp(T, I, A.scalar(c), 4);
            bool conclusive = res.status == PsharpStatus::Fixpoint ||
                              (res.status == PsharpStatus::DegreeExhausted &&
                               res.delta_stable_cert);
            r.check(conclusive && res.final_ideal.equals(J),
                    "pullback sharp misses extension, " + tag);
        }
    }
    return r;
}

// Both round trips of the leaf/fiber bijection on the full fixture grid.
inline Report suite_main_theorem() {
    using namespace suites_detail;
    Report r;
    r.lemma = "main-theorem";
    r.note("grid", "{(0),(u),(v),(u^2-v),(u,v)} x c in {0,1,-1,2}, D=4");
    TensorRing<Rational> T(Ring<Rational>(Rational::Ctx{}, {"u", "v"}));
    const auto& A = T.base();
    for (const char* s : {"0", "u", "v", "u^2 - v", "u; v"}) {
        auto q = ideal_of(A, s);
        auto p = extend_ideal(T, q);
        for (long long c : {0, 1, -1, 2})
            r.absorb(main_theorem_check(T, q, p, A.scalar(c), 4));
    }
    return r;
}

// The characteristic-p counterexamples, reproduced exactly: stability of
// (x^2) but not (x) on the F_2 line, and the non-prime sharpened trajectory
// in the dual numbers.
inline Report suite_charp() {
    using namespace suites_detail;
    Report r;
    r.lemma = "charp-counterexamples";
    Ring<GFp> F(GFp::Ctx{2}, {"x"});
    DiffRing<GFp> line(F, {deriv(F, "d", {"1"})});
    r.check(is_delta_ideal(line, ideal_of(F, "x^2")), "(x^2) should be stable on the F_2 line");
    r.check(!is_delta_ideal(line, ideal_of(F, "x")), "(x) should not be stable on the F_2 line");

    DiffRing<GFp> dual(F, {deriv(F, "d", {"1"})}, ideal_of(F, "x^2"));
    auto res = psharp(dual, ideal_of(F, "x"), 4);
    r.check(ideals_equal_in(dual, res.final_ideal, zero_ideal_of(dual)),
            "sharpened (x) should vanish in the dual numbers");
    auto w = primality_falsify(dual, zero_ideal_of(dual), 50, 2, 3);
    bool good = w.has_value();
    if (good) {
        auto E = effective_ideal(dual, zero_ideal_of(dual));
        good = !E.contains(w->first) && !E.contains(w->second) &&
               E.contains(w->first * w->second);
        r.note("witness", "(" + w->first.str() + ", " + w->second.str() + ")");
    }
    r.check(good, "no zero-divisor witness found in the dual numbers");
    return r;
}

// Degree-exhausting trajectory of (x) on the translation line: the strictly
// descending power chain down to the zero ideal.
inline Report criterion_simple_line() {
    using namespace suites_detail;
    Report r;
    r.lemma = "simple-line";
    Ring<Rational> A(Rational::Ctx{}, {"x"});
    DiffRing<Rational> L(A, {deriv(A, "d", {"1"})});
    auto res = psharp(L, ideal_of(A, "x"), 6);
    r.check(res.status == PsharpStatus::DegreeExhausted, "status");
    r.check(res.final_ideal.is_zero_ideal(), "final ideal");
    r.check(res.trace.size() == 7, "trace length");
    for (std::size_t k = 0; k + 1 < res.trace.size(); ++k) {
        std::string want = k == 0 ? "x" : "x^" + std::to_string(k + 1);
        r.check(res.trace[k].equals(ideal_of(A, want)), "trace step " + std::to_string(k));
        bool strict = res.trace[k].contains_ideal(res.trace[k + 1]) &&
                      !res.trace[k + 1].contains_ideal(res.trace[k]);
        r.check(strict, "strict descent at step " + std::to_string(k));
    }
    r.check(res.trace.empty() || res.trace.back().is_zero_ideal(), "trace tail");
    return r;
}

// The radial field: the origin is a leaf, the shifted point is not, and the
// truncated constants are the scalars.
inline Report criterion_radial_leaves() {
    using namespace suites_detail;
    Report r;
    r.lemma = "radial-leaves";
    Ring<Rational> A(Rational::Ctx{}, {"x"});
    AffineDScheme<Rational> S(DiffRing<Rational>(A, {deriv(A, "d", {"x"})}));
    r.check(is_leaf(ideal_of(A, "x"), S), "(x) should be a leaf");
    auto at0 = trajectory(ideal_of(A, "x"), S, 6);
    r.check(at0.status == PsharpStatus::Fixpoint && at0.steps == 0 &&
                at0.final_ideal.equals(ideal_of(A, "x")),
            "trajectory of (x)");
    auto at1 = trajectory(ideal_of(A, "x - 1"), S, 6);
    r.check(at1.final_ideal.is_zero_ideal(), "trajectory of (x - 1)");
    auto consts = constants_truncated(S.ring(), 6);
    r.check(consts.size() == 1 && consts[0].is_constant(), "constants at degree 6");
    return r;
}

// Exhaustive small-grid agreement of the rank-based length with brute-force
// integer minor inspection.
inline Report criterion_tensor_length() {
    Report r;
    r.lemma = "tensor-length";
    r.note("grid", "support {1,u,v} x {1,t,t^2}, coefficients {-1,0,1}");
    TensorRing<Rational> T(Ring<Rational>(Rational::Ctx{}, {"u", "v"}));
    const auto& E = T.realization().ring();
    const Monomial mono1(3);
    const Monomial monos[3] = {mono1, Monomial::var(3, 0), Monomial::var(3, 1)};
    for (long long code = 0; code < 19683; ++code) {
        int m[3][3];
        long long rest = code;
        Poly<Rational> x = Poly<Rational>::zero(E);
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) {
                int c = static_cast<int>(rest % 3) - 1;
                rest /= 3;
                m[k][j] = c;
                if (c)
                    x += Poly<Rational>::term(
                        E, monos[j] * Monomial::var(3, 2, static_cast<std::uint32_t>(k)),
                        E.scalar(c));
            }
        long long det = 0;
        for (int j = 0; j < 3; ++j)
            det += m[0][j] * (m[1][(j + 1) % 3] * m[2][(j + 2) % 3] -
                              m[1][(j + 2) % 3] * m[2][(j + 1) % 3]);
        unsigned expect = 0;
        if (det != 0) expect = 3;
        else {
            for (int i = 0; i < 3 && !expect; ++i)
                for (int i2 = i + 1; i2 < 3 && !expect; ++i2)
                    for (int j = 0; j < 3 && !expect; ++j)
                        for (int j2 = j + 1; j2 < 3 && !expect; ++j2)
                            if (m[i][j] * m[i2][j2] - m[i][j2] * m[i2][j] != 0) expect = 2;
            if (!expect)
                for (int i = 0; i < 3 && !expect; ++i)
                    for (int j = 0; j < 3 && !expect; ++j)
                        if (m[i][j]) expect = 1;
        }
        r.check(tensor_length(T, x) == expect, "code " + std::to_string(code));
    }
    return r;
}

} // namespace diffalg
