#include <catch2/catch_amalgamated.hpp>

#include "diffalg/dideal.hpp"
#include "diffalg/parse.hpp"

using namespace diffalg;

namespace {

Ring<Rational> qring(std::vector<std::string> vars) {
    return Ring<Rational>(Rational::Ctx{}, std::move(vars));
}
Ring<GFp> fpring(std::uint32_t p, std::vector<std::string> vars) {
    return Ring<GFp>(GFp::Ctx{p}, std::move(vars));
}

template <class K> Poly<K> P(const Ring<K>& R, const std::string& s) { return parse_poly(s, R); }

template <class K> Ideal<K> ideal_of(const Ring<K>& R, const std::string& gens) {
    return Ideal<K>(R, parse_poly_list(gens, R));
}

template <class K>
DerivationSpec<K> D(const Ring<K>& R, std::string name, std::vector<std::string> images) {
    DerivationSpec<K> d{std::move(name), {}};
    for (const auto& s : images) d.images.push_back(parse_poly(s, R));
    return d;
}

DiffRing<Rational> dline() {
    auto R = qring({"x"});
    return DiffRing<Rational>(R, {D(R, "d", {"1"})});
}
DiffRing<Rational> radial() {
    auto R = qring({"x"});
    return DiffRing<Rational>(R, {D(R, "d", {"x"})});
}
// Q[u,t] with du = 0, dt = 1
DiffRing<Rational> realization_plane() {
    auto R = qring({"u", "t"});
    return DiffRing<Rational>(R, {D(R, "d", {"0", "1"})});
}
// F_2[x]/(x^2) with x' = 1
DiffRing<GFp> char2_dual() {
    auto F = fpring(2, {"x"});
    return DiffRing<GFp>(F, {D(F, "d", {"1"})}, Ideal<GFp>(F, {P(F, "x^2")}));
}
// Q[x,y]/(x^2, xy, y^2) with x' = y, y' = 0
DiffRing<Rational> square_zero_pair() {
    auto R = qring({"x", "y"});
    return DiffRing<Rational>(R, {D(R, "d", {"y", "0"})},
                              Ideal<Rational>(R, {P(R, "x^2"), P(R, "x*y"), P(R, "y^2")}));
}

} // namespace

TEST_CASE("derivation-stable ideal test") {
    auto X = radial();
    auto L = dline();
    CHECK(is_delta_ideal(X, ideal_of(X.ring(), "x")));
    CHECK_FALSE(is_delta_ideal(L, ideal_of(L.ring(), "x")));
    CHECK(is_delta_ideal(L, Ideal<Rational>::zero(L.ring())));

    auto F2 = fpring(2, {"x"});
    DiffRing<GFp> LF(F2, {D(F2, "d", {"1"})});
    CHECK(is_delta_ideal(LF, ideal_of(F2, "x^2")));
    CHECK_FALSE(is_delta_ideal(LF, ideal_of(F2, "x")));
}

TEST_CASE("derivation closure") {
    auto X = radial();
    auto cx = delta_close(X, ideal_of(X.ring(), "x"), 3);
    CHECK(cx.certified);
    CHECK(ideals_equal_in(X, cx.result, ideal_of(X.ring(), "x")));

    auto L = dline();
    auto cl = delta_close(L, ideal_of(L.ring(), "x"), 1);
    CHECK(cl.certified);
    CHECK(cl.result.is_unit());

    auto F2 = fpring(2, {"x"});
    DiffRing<GFp> LF(F2, {D(F2, "d", {"1"})});
    auto cf = delta_close(LF, ideal_of(F2, "x^2"), 2);
    CHECK(cf.certified);
    CHECK(ideals_equal_in(LF, cf.result, ideal_of(F2, "x^2")));

    auto cz = delta_close(X, Ideal<Rational>::zero(X.ring()), 2);
    CHECK(cz.certified);
    CHECK(cz.result.is_zero_ideal());
}

TEST_CASE("derivation closure membership") {
    auto L = dline();
    auto mem = delta_member(L, P(L.ring(), "1"), ideal_of(L.ring(), "x"), 2);
    CHECK(mem.status == DeltaMemberStatus::Yes);
    CHECK(mem.definitive);

    auto X = radial();
    auto m2 = delta_member(X, P(X.ring(), "x^2"), ideal_of(X.ring(), "x"), 2);
    CHECK(m2.status == DeltaMemberStatus::Yes);
    auto m3 = delta_member(X, P(X.ring(), "x+1"), ideal_of(X.ring(), "x"), 3);
    CHECK(m3.status == DeltaMemberStatus::NotFoundAtBound);
    CHECK(m3.definitive); // the closure stabilized, so the answer is exact
}

TEST_CASE("radical differential closure") {
    auto X = radial();
    auto rx = radical_delta(X, ideal_of(X.ring(), "x^2"), 3);
    CHECK(rx.equals(ideal_of(X.ring(), "x")));

    auto L = dline();
    auto rl = radical_delta(L, ideal_of(L.ring(), "x^2"), 3);
    CHECK(rl.is_unit());

    // stays put on a radical derivation-stable ideal
    auto rr = radical_delta(X, ideal_of(X.ring(), "x"), 3);
    CHECK(rr.equals(ideal_of(X.ring(), "x")));

    auto C2 = char2_dual();
    CHECK_THROWS_AS(radical_delta(C2, ideal_of(C2.ring(), "x"), 2), DomainError);
}

TEST_CASE("largest stable subideal: line model") {
    auto L = dline();
    auto res = psharp(L, ideal_of(L.ring(), "x"), 6);
    CHECK(res.status == PsharpStatus::DegreeExhausted);
    CHECK(res.final_ideal.is_zero_ideal());
    REQUIRE(res.trace.size() == 7);
    for (unsigned k = 0; k + 1 < res.trace.size(); ++k) {
        auto expect = Ideal<Rational>(L.ring(), {P(L.ring(), "x").pow(k + 1)});
        CHECK(res.trace[k].equals(expect));
        // strictly descending chain
        CHECK(res.trace[k].contains_ideal(res.trace[k + 1]));
        CHECK_FALSE(res.trace[k + 1].contains_ideal(res.trace[k]));
    }
    CHECK(res.delta_stable_cert);
    CHECK(res.contained_cert);
}

TEST_CASE("largest stable subideal: radial model") {
    auto X = radial();
    auto res = psharp(X, ideal_of(X.ring(), "x"), 6);
    CHECK(res.status == PsharpStatus::Fixpoint);
    CHECK(res.steps == 0);
    REQUIRE(res.trace.size() == 1);
    CHECK(res.final_ideal.equals(ideal_of(X.ring(), "x")));
    CHECK(res.delta_stable_cert);
    CHECK(res.contained_cert);

    auto off = psharp(X, ideal_of(X.ring(), "x-1"), 6);
    CHECK(off.status == PsharpStatus::DegreeExhausted);
    CHECK(off.final_ideal.is_zero_ideal());
    CHECK(off.trace.size() == 7);

    auto zero = psharp(X, Ideal<Rational>::zero(X.ring()), 4);
    CHECK(zero.status == PsharpStatus::Fixpoint);
    CHECK(zero.steps == 0);
}

TEST_CASE("largest stable subideal: realization plane") {
    auto T = realization_plane();
    const auto& R = T.ring();
    auto res = psharp(T, ideal_of(R, "u; t"), 4);
    CHECK(res.status == PsharpStatus::Fixpoint);
    CHECK(res.final_ideal.equals(ideal_of(R, "u")));
    REQUIRE(res.trace.size() == 5);
    CHECK(res.trace[1].equals(ideal_of(R, "u; t^2")));
    CHECK(res.trace[3].equals(ideal_of(R, "u; t^4")));
    CHECK(res.delta_stable_cert);
    CHECK(res.contained_cert);

    auto rt = psharp(T, ideal_of(R, "t"), 4);
    CHECK(rt.status == PsharpStatus::DegreeExhausted);
    CHECK(rt.final_ideal.is_zero_ideal());
    REQUIRE(rt.trace.size() == 5);
    CHECK(rt.trace[2].equals(ideal_of(R, "t^3")));

    auto ru = psharp(T, ideal_of(R, "u"), 4);
    CHECK(ru.status == PsharpStatus::Fixpoint);
    CHECK(ru.steps == 0);

    CHECK_THROWS_AS(psharp(T, ideal_of(R, "1"), 4), DomainError);
}

TEST_CASE("largest stable subideal in a quotient ring") {
    auto C2 = char2_dual();
    auto res = psharp(C2, ideal_of(C2.ring(), "x"), 4);
    CHECK(res.status == PsharpStatus::Fixpoint);
    CHECK(res.final_ideal.equals(zero_ideal_of(C2)));
    CHECK(res.delta_stable_cert);
    CHECK(res.contained_cert);
}

TEST_CASE("primality falsification") {
    auto C2 = char2_dual();
    auto w = primality_falsify(C2, Ideal<GFp>::zero(C2.ring()), 50, 3, 99);
    REQUIRE(w.has_value());
    auto E = effective_ideal(C2, Ideal<GFp>::zero(C2.ring()));
    CHECK_FALSE(E.contains(w->first));
    CHECK_FALSE(E.contains(w->second));
    CHECK(E.contains(w->first * w->second));

    // prime inputs yield no witness
    auto L = dline();
    CHECK_FALSE(primality_falsify(L, ideal_of(L.ring(), "x"), 100, 3, 7).has_value());
    CHECK_FALSE(primality_falsify(L, Ideal<Rational>::zero(L.ring()), 100, 3, 7).has_value());
    auto X = radial();
    CHECK_FALSE(primality_falsify(X, ideal_of(X.ring(), "x-1"), 100, 3, 7).has_value());

    // (xy) is not prime in Q[x,y]
    auto R = qring({"x", "y"});
    DiffRing<Rational> DG(R, {D(R, "d", {"x", "y"})});
    auto wxy = primality_falsify(DG, ideal_of(R, "x*y"), 50, 2, 5);
    REQUIRE(wxy.has_value());

    CHECK_THROWS_AS(primality_falsify(L, ideal_of(L.ring(), "1"), 10, 2, 1), DomainError);
}

TEST_CASE("bracket closure over a supplied family") {
    auto S = square_zero_pair();
    const auto& R = S.ring();
    std::vector<DerivationSpec<Rational>> fam{D(R, "e", {"y", "0"})};
    auto bc = bracket_closure(S, ideal_of(R, "x"), fam, 3);
    CHECK(bc.certified);
    CHECK(ideals_equal_in(S, bc.result, ideal_of(R, "x; y")));

    // a family member must preserve the quotient
    std::vector<DerivationSpec<Rational>> bad{D(R, "e", {"1", "0"})};
    CHECK_THROWS_AS(bracket_closure(S, ideal_of(R, "x"), bad, 2), DomainError);
}

TEST_CASE("splitting lemma for stable ideals") {
    auto R = qring({"x", "y"});
    DiffRing<Rational> DG(R, {D(R, "d1", {"x", "-y"}), D(R, "d2", {"x", "y"})});
    auto rep = verify_lemma_easy(DG, ideal_of(R, "x*y"), 25, 3, 11);
    CHECK(rep.pass);
    CHECK(rep.instances > 0);
    CHECK(rep.counterexamples.empty());

    auto L = dline();
    CHECK_THROWS_AS(verify_lemma_easy(L, ideal_of(L.ring(), "x"), 5, 2, 1), DomainError);
}

TEST_CASE("nilpotency bounds for derivatives") {
    auto S = square_zero_pair();
    auto r1 = verify_nilpotency(S, P(S.ring(), "x"), 2, 3);
    CHECK(r1.pass);
    CHECK(r1.instances > 0);

    auto R = qring({"x"});
    DiffRing<Rational> C3(R, {D(R, "d", {"x"})}, Ideal<Rational>(R, {P(R, "x^3")}));
    CHECK(verify_nilpotency(C3, P(R, "x"), 3, 3).pass);

    auto R2 = qring({"x", "y"});
    DiffRing<Rational> M(R2, {D(R2, "d", {"x*y", "0"})},
                         Ideal<Rational>(R2, {P(R2, "x^3"), P(R2, "y^2")}));
    CHECK(verify_nilpotency(M, P(R2, "x"), 3, 3).pass);

    // preconditions
    CHECK_THROWS_AS(verify_nilpotency(S, P(S.ring(), "x"), 1, 2), DomainError);
    auto C2 = char2_dual();
    CHECK_THROWS_AS(verify_nilpotency(C2, P(C2.ring(), "x"), 2, 2), DomainError);
}

TEST_CASE("orthogonality of derivatives for disjoint ideals") {
    auto S = square_zero_pair();
    const auto& R = S.ring();
    std::vector<DerivationSpec<Rational>> fam{D(R, "e", {"y", "0"})};
    auto rep = verify_super_lemma(S, fam, ideal_of(R, "x"), ideal_of(R, "y"), 3);
    CHECK(rep.pass);
    CHECK(rep.instances > 0);

    // overlapping ideals are rejected
    CHECK_THROWS_AS(verify_super_lemma(S, fam, ideal_of(R, "x"), ideal_of(R, "x"), 2),
                    DomainError);
}

TEST_CASE("minimality of the radical closure") {
    auto R = qring({"x", "y"});
    DiffRing<Rational> DG(R, {D(R, "d1", {"x", "-y"})});
    auto rep = verify_min_rad(DG, ideal_of(R, "x*y"), ideal_of(R, "y"), 3, 15, 2, 21);
    CHECK(rep.pass);
    CHECK(rep.instances > 0);

    auto r2 = verify_min_rad(DG, ideal_of(R, "x"), ideal_of(R, "y"), 3, 10, 2, 22);
    CHECK(r2.pass);
}

TEST_CASE("minimal primes of fixture quotients are stable") {
    // R = Q[x,y]/(xy) with the diagonal derivation; its minimal primes (x)
    // and (y) are derivation-stable
    auto R = qring({"x", "y"});
    DiffRing<Rational> DG(R, {D(R, "d", {"x", "y"})}, Ideal<Rational>(R, {P(R, "x*y")}));
    CHECK(is_delta_ideal(DG, ideal_of(R, "x")));
    CHECK(is_delta_ideal(DG, ideal_of(R, "y")));
}

TEST_CASE("report bookkeeping") {
    Report a;
    a.lemma = "a";
    a.check(true, "");
    a.check(false, "bad");
    CHECK_FALSE(a.pass);
    CHECK(a.instances == 2);
    REQUIRE(a.counterexamples.size() == 1);
    Report b;
    b.lemma = "b";
    b.check(true, "");
    b.absorb(a);
    CHECK_FALSE(b.pass);
    CHECK(b.instances == 3);
    CHECK(b.counterexamples[0] == "a: bad");
}
