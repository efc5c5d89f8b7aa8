#include <catch2/catch_amalgamated.hpp>

#include "diffalg/diffring.hpp"
#include "diffalg/parse.hpp"
#include "diffalg/rng.hpp"

#include <algorithm>

using namespace diffalg;

namespace {

Ring<Rational> qring(std::vector<std::string> vars) {
    return Ring<Rational>(Rational::Ctx{}, std::move(vars));
}
Ring<GFp> fpring(std::uint32_t p, std::vector<std::string> vars) {
    return Ring<GFp>(GFp::Ctx{p}, std::move(vars));
}

template <class K> Poly<K> P(const Ring<K>& R, const std::string& s) { return parse_poly(s, R); }

template <class K>
DerivationSpec<K> D(const Ring<K>& R, std::string name, std::vector<std::string> images) {
    DerivationSpec<K> d{std::move(name), {}};
    for (const auto& s : images) d.images.push_back(parse_poly(s, R));
    return d;
}

// Q[x], x' = 1
DiffRing<Rational> dline() {
    auto R = qring({"x"});
    return DiffRing<Rational>(R, {D(R, "d", {"1"})});
}
// Q[x], x' = x
DiffRing<Rational> radial() {
    auto R = qring({"x"});
    return DiffRing<Rational>(R, {D(R, "d", {"x"})});
}
// Q[x,y] with the non-commuting pair d1: x->y, y->0 and d2: x->x, y->0
DiffRing<Rational> pair_ring() {
    auto R = qring({"x", "y"});
    return DiffRing<Rational>(R, {D(R, "d1", {"y", "0"}), D(R, "d2", {"x", "0"})});
}

} // namespace

TEST_CASE("multi-index arithmetic and orders") {
    ThetaAb a{2, 1}, b{1, 0}, c{0, 1};
    CHECK(theta_ab_order(a) == 3);
    CHECK(word_to_ab(ThetaWord{0, 1, 0}, 2) == a);
    CHECK(theta_ab_divides(b, a));
    CHECK_FALSE(theta_ab_divides(a, b));
    CHECK(theta_ab_mul(b, c) == ThetaAb{1, 1});
    CHECK(theta_ab_sub(a, b) == ThetaAb{1, 1});

    // binom(d1^2 d2, d1) = C(2,1)*C(1,0) = 2
    CHECK(theta_binomial(a, b) == 2);
    CHECK(theta_binomial(a, a) == 1);
    CHECK(theta_binomial(ThetaAb{1, 0}, ThetaAb{0, 1}) == 0);

    // lex is first-coordinate dominant: d1 > d2
    CHECK(theta_compare(ThetaAb{1, 0}, ThetaAb{0, 1}, ThetaOrderKind::Lex) > 0);
    // Keigher ranks by total order first: d2 < d1^2
    CHECK(theta_compare(ThetaAb{0, 1}, ThetaAb{2, 0}, ThetaOrderKind::Keigher) < 0);
    CHECK(theta_compare(ThetaAb{2, 0}, ThetaAb{0, 2}, ThetaOrderKind::Keigher) > 0);

    CHECK(all_theta_ab(2, 2).size() == 6);
    CHECK(all_theta_words(2, 2).size() == 7);
}

TEST_CASE("multi-index order axioms and Pascal identity") {
    Rng rng(2024);
    auto rand_ab = [&](std::size_t d) {
        ThetaAb t(d, 0);
        for (auto& e : t) e = static_cast<std::uint32_t>(rng.below(5));
        return t;
    };
    for (auto kind : {ThetaOrderKind::Lex, ThetaOrderKind::Keigher}) {
        for (int it = 0; it < 200; ++it) {
            std::size_t d = 1 + rng.below(3);
            ThetaAb a = rand_ab(d), b = rand_ab(d), c = rand_ab(d);
            int ab = theta_compare(a, b, kind);
            CHECK(ab == -theta_compare(b, a, kind));
            CHECK((ab == 0) == (a == b));
            // transitivity
            if (ab <= 0 && theta_compare(b, c, kind) <= 0)
                CHECK(theta_compare(a, c, kind) <= 0);
            // compatibility with the monoid operation
            CHECK(theta_compare(theta_ab_mul(a, c), theta_ab_mul(b, c), kind) == ab);
            // the empty index is minimal
            CHECK(theta_compare(ThetaAb(d, 0), a, kind) <= 0);
        }
    }
    for (int it = 0; it < 300; ++it) {
        std::size_t d = 1 + rng.below(3);
        ThetaAb t = rand_ab(d), s = rand_ab(d);
        std::size_t i = rng.below(d);
        ThetaAb t1 = t, s1 = s;
        t1[i]++;
        s1[i]++;
        CHECK(theta_binomial(t1, s1) == theta_binomial(t, s) + theta_binomial(t, s1));
    }
}

TEST_CASE("derivations on polynomial rings") {
    auto L = dline();
    auto X = radial();
    const auto& Rl = L.ring();
    const auto& Rx = X.ring();
    CHECK(L.derive(P(Rl, "x^3"), 0) == P(Rl, "3*x^2"));
    CHECK(X.derive(P(Rx, "x^3"), 0) == P(Rx, "3*x^3"));
    CHECK(L.apply_word(P(Rl, "x^2"), ThetaWord{0, 0}) == P(Rl, "2"));

    auto PR = pair_ring();
    const auto& R2 = PR.ring();
    CHECK(PR.derive(P(R2, "x*y"), 0) == P(R2, "y^2"));
    // rightmost symbol acts first
    CHECK(PR.apply_word(P(R2, "x"), ThetaWord{0, 1}) == P(R2, "y"));
    CHECK(PR.apply_word(P(R2, "x"), ThetaWord{1, 0}).is_zero());
    CHECK_FALSE(check_commuting(PR));
    CHECK_THROWS_AS(PR.apply_ab(P(R2, "x"), ThetaAb{1, 1}), DomainError);

    CHECK(check_commuting(L));
    CHECK(check_commuting(X));
}

TEST_CASE("derivation product rule on random inputs") {
    Rng rng(77);
    auto R = qring({"x", "y"});
    DiffRing<Rational> DR(R, {D(R, "d1", {"x*y", "y^2-1"}), D(R, "d2", {"1", "x"})});
    for (int it = 0; it < 100; ++it) {
        auto f = random_poly(R, rng, 3, 4, false);
        auto g = random_poly(R, rng, 3, 4, false);
        std::size_t i = rng.below(2);
        CHECK(DR.derive(f * g, i) == DR.derive(f, i) * g + f * DR.derive(g, i));
        CHECK(DR.derive(f + g, i) == DR.derive(f, i) + DR.derive(g, i));
    }
    auto F = fpring(5, {"x", "y"});
    DiffRing<GFp> DF(F, {D(F, "d", {"y", "x^2"})});
    for (int it = 0; it < 100; ++it) {
        auto f = random_poly(F, rng, 3, 4, false);
        auto g = random_poly(F, rng, 3, 4, false);
        CHECK(DF.derive(f * g, 0) == DF.derive(f, 0) * g + f * DF.derive(g, 0));
    }
    // the exponent rule drops multiples of the characteristic
    CHECK(DF.derive(P(F, "x^5"), 0).is_zero());
}

TEST_CASE("quotient rings and well-definedness") {
    auto R = qring({"x"});
    // x' = 1 does not preserve (x^2) in characteristic 0
    CHECK_THROWS_AS(DiffRing<Rational>(R, {D(R, "d", {"1"})},
                                       Ideal<Rational>(R, {P(R, "x^2")})),
                    DomainError);
    // but x' = x does
    DiffRing<Rational> DR(R, {D(R, "d", {"x"})}, Ideal<Rational>(R, {P(R, "x^2")}));
    CHECK(DR.nf(P(R, "x^3+x+1")) == P(R, "x+1"));
    CHECK(DR.derive(P(R, "x"), 0) == P(R, "x"));

    // in characteristic 2, x' = 1 does preserve (x^2)
    auto F = fpring(2, {"x"});
    DiffRing<GFp> DF(F, {D(F, "d", {"1"})}, Ideal<GFp>(F, {P(F, "x^2")}));
    CHECK(DF.derive(P(F, "x^2"), 0).is_zero());
    CHECK(DF.derive(P(F, "x"), 0) == P(F, "1"));

    // image from a wrong ring is rejected
    auto S = qring({"x", "y"});
    DerivationSpec<Rational> bad{"d", {P(S, "y")}};
    CHECK_THROWS_AS(DiffRing<Rational>(R, {bad}), RingMismatchError);
}

TEST_CASE("Kolchin-Leibniz expansion matches direct application") {
    auto X = radial();
    const auto& Rx = X.ring();
    // second derivative of x*x in the radial model: 4x^2
    CHECK(leibniz_expand(P(Rx, "x"), P(Rx, "x"), ThetaAb{2}, X) == P(Rx, "4*x^2"));

    // d1 d2 (x*y) with commuting diagonal derivations d1 = x d/dx, d2 = y d/dy
    auto R = qring({"x", "y"});
    DiffRing<Rational> DG(R, {D(R, "d1", {"x", "0"}), D(R, "d2", {"0", "y"})});
    REQUIRE(check_commuting(DG));
    CHECK(leibniz_expand(P(R, "x"), P(R, "y"), ThetaAb{1, 1}, DG) == P(R, "x*y"));
    CHECK(DG.apply_ab(P(R, "x*y"), ThetaAb{1, 1}) == P(R, "x*y"));

    Rng rng(4242);
    // random diagonal-linear families commute; compare expansion vs direct
    for (int it = 0; it < 60; ++it) {
        std::size_t nv = 1 + rng.below(3);
        std::vector<std::string> vars;
        for (std::size_t v = 0; v < nv; ++v) vars.push_back("x" + std::to_string(v + 1));
        auto A = qring(vars);
        std::size_t nd = 1 + rng.below(2);
        std::vector<DerivationSpec<Rational>> ds;
        for (std::size_t i = 0; i < nd; ++i) {
            DerivationSpec<Rational> d{"d" + std::to_string(i + 1), {}};
            for (std::size_t v = 0; v < nv; ++v)
                d.images.push_back(
                    Poly<Rational>::variable(A, v).scaled(A.scalar(rng.range(-3, 3))));
            ds.push_back(std::move(d));
        }
        DiffRing<Rational> DR(A, ds);
        REQUIRE(check_commuting(DR));
        auto f = random_poly(A, rng, 2, 3, false);
        auto g = random_poly(A, rng, 2, 3, false);
        ThetaAb t(nd, 0);
        for (auto& e : t) e = static_cast<std::uint32_t>(rng.below(3));
        CHECK(leibniz_expand(f, g, t, DR) == DR.apply_ab(f * g, t));
    }
    // same over F_5 with per-variable univariate images g_i(x_i)
    for (int it = 0; it < 60; ++it) {
        auto A = fpring(5, {"x", "y"});
        std::vector<DerivationSpec<GFp>> ds;
        for (std::size_t i = 0; i < 2; ++i) {
            DerivationSpec<GFp> d{"d" + std::to_string(i + 1),
                                  {Poly<GFp>::zero(A), Poly<GFp>::zero(A)}};
            std::uint32_t e = static_cast<std::uint32_t>(rng.below(3));
            d.images[i] = Poly<GFp>::term(A, Monomial::var(2, i, e),
                                          GFp::from_int(A.ctx(), 1 + rng.below(4)));
            ds.push_back(std::move(d));
        }
        DiffRing<GFp> DR(A, ds);
        REQUIRE(check_commuting(DR));
        auto f = random_poly(A, rng, 2, 3, false);
        auto g = random_poly(A, rng, 2, 3, false);
        ThetaAb t{static_cast<std::uint32_t>(rng.below(3)),
                  static_cast<std::uint32_t>(rng.below(3))};
        CHECK(leibniz_expand(f, g, t, DR) == DR.apply_ab(f * g, t));
    }
}

TEST_CASE("truncated constants") {
    auto X = radial();
    auto cx = constants_truncated(X, 3);
    REQUIRE(cx.size() == 1);
    CHECK(cx[0].is_constant());
    CHECK_FALSE(cx[0].is_zero());

    auto L = dline();
    auto cl = constants_truncated(L, 5);
    REQUIRE(cl.size() == 1);
    CHECK(cl[0].is_constant());

    // no derivations: every monomial is constant
    auto R = qring({"x", "y"});
    DiffRing<Rational> Z(R, {});
    CHECK(constants_truncated(Z, 2).size() == 6);

    // every basis element is killed by every derivation
    auto S = qring({"x", "y"});
    DiffRing<Rational> DG(S, {D(S, "d1", {"x", "-y"})});
    auto cs = constants_truncated(DG, 4);
    // x*y is a first integral of d1, so 1 and xy and (xy)^2 survive
    CHECK(cs.size() == 3);
    for (const auto& c : cs)
        CHECK(DG.derive(c, 0).is_zero());
}

TEST_CASE("standard monomial enumeration") {
    auto R = qring({"x", "y"});
    CHECK(standard_monomials(R, {}, 2).size() == 6);
    CHECK(standard_monomials(R, {Monomial::var(2, 0)}, 2).size() == 3); // 1, y, y^2
    CHECK(standard_monomials(R, {Monomial::var(2, 0), Monomial::var(2, 1)}, 5).size() == 1);
}

TEST_CASE("fraction constancy in the radial model") {
    auto X = radial();
    const auto& R = X.ring();
    auto r1 = check_constant_fraction(X, P(R, "3*x^2"), P(R, "x^2"));
    REQUIRE(r1.constant);
    CHECK(r1.value.str() == "3");
    auto r2 = check_constant_fraction(X, P(R, "x+1"), P(R, "x"));
    CHECK_FALSE(r2.constant);
    auto r3 = check_constant_fraction(X, P(R, "x^3"), P(R, "2*x^3"));
    REQUIRE(r3.constant);
    CHECK(r3.value.str() == "1/2");
    auto r4 = check_constant_fraction(X, P(R, "0"), P(R, "x^2+1"));
    REQUIRE(r4.constant);
    CHECK(r4.value.is_zero());
    CHECK_THROWS_AS(check_constant_fraction(X, P(R, "x"), P(R, "0")), DomainError);
    CHECK_THROWS_AS(check_constant_fraction(dline(), P(R, "x"), P(R, "x")), DomainError);
}

TEST_CASE("localization") {
    auto X = radial();
    auto L = localize(X, P(X.ring(), "x"));
    const auto& E = L.ring();
    REQUIRE(E.nvars() == 2);
    auto y = Poly<Rational>::variable(E, 1);
    // d(1/x) = -1/x in the radial model
    CHECK(L.nf(L.derive(y, 0) + y).is_zero());
    // y is a unit inverse to x
    CHECK(L.nf(y * Poly<Rational>::variable(E, 0) - Poly<Rational>::one(E)).is_zero());
    auto cs = constants_truncated(L, 3);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].is_constant());

    // localizing at 1 changes nothing visible in the constants
    auto L1 = localize(X, P(X.ring(), "1"));
    auto c1 = constants_truncated(L1, 3);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0].is_constant());

    CHECK_THROWS_AS(localize(X, P(X.ring(), "0")), DomainError);
    // nilpotent elements cannot be inverted
    auto R = qring({"x"});
    DiffRing<Rational> Q2(R, {D(R, "d", {"x"})}, Ideal<Rational>(R, {P(R, "x^2")}));
    CHECK_THROWS_AS(localize(Q2, P(R, "x")), DomainError);
}
