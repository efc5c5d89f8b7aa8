#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "diffalg/ringspec.hpp"
#include "diffalg/suites.hpp"

using nlohmann::json;
using namespace diffalg;

namespace {

bool json_out = false;

template <class K> Ideal<K> parse_ideal(const std::string& s, const Ring<K>& R) {
    return Ideal<K>(R, parse_poly_list(s, R));
}

template <class K> std::string ideal_str(const Ideal<K>& I) {
    const auto& gb = I.groebner();
    if (gb.empty()) return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < gb.size(); ++i) {
        if (i) s += ", ";
        s += gb[i].str();
    }
    return s + ")";
}

template <class K> json ideal_json(const Ideal<K>& I) {
    auto arr = json::array();
    for (const auto& g : I.groebner()) arr.push_back(g.str());
    return arr;
}

template <class K> K scalar_of(const std::string& s, const Ring<K>& R) {
    Poly<K> p = parse_poly(s, R);
    if (p.is_zero()) return R.zero();
    if (!p.is_constant()) throw DomainError("expected a constant, got: " + s);
    return p.terms().front().second;
}

template <class K>
std::vector<std::uint32_t> var_indices(const std::string& list, const Ring<K>& R) {
    std::vector<std::uint32_t> out;
    std::string cur;
    auto flush = [&] {
        std::size_t b = cur.find_first_not_of(" \t");
        if (b == std::string::npos) return;
        std::size_t e = cur.find_last_not_of(" \t");
        std::string name = cur.substr(b, e - b + 1);
        int idx = R.var_index(name);
        if (idx < 0) throw DomainError("unknown variable: " + name);
        out.push_back(static_cast<std::uint32_t>(idx));
        cur.clear();
    };
    for (char c : list) {
        if (c == ',') flush();
        else cur += c;
    }
    flush();
    if (out.empty()) throw DomainError("no variables to eliminate");
    return out;
}

json report_json(const Report& r) {
    json meta = json::object();
    for (const auto& [k, v] : r.meta) meta[k] = v;
    return json{{"suite", r.lemma},
                {"pass", r.pass},
                {"instances", r.instances},
                {"counterexamples", r.counterexamples},
                {"meta", meta},
                {"version", version}};
}

void emit(const json& j, const std::string& text) {
    if (json_out) std::cout << j.dump(2) << "\n";
    else std::cout << text << "\n";
}

template <class F> int with_ring(const std::string& path, F&& f) {
    AnyRing R = load_ringspec_file(path);
    return std::visit(std::forward<F>(f), R);
}

// Base for the tensor construction A (x) Q[t]: a plain polynomial ring over
// Q, no derivations, no quotient.
TensorRing<Rational> load_base(const std::string& path) {
    AnyRing R = load_ringspec_file(path);
    auto* r = std::get_if<DiffRing<Rational>>(&R);
    if (!r) throw DomainError("the tensor base must be a ring over Q");
    if (r->d() != 0) throw DomainError("the tensor base must not carry derivations");
    if (r->quotient()) throw DomainError("the tensor base must be a polynomial ring");
    return TensorRing<Rational>(r->ring());
}

LinDiffOp<Rational> parse_op(const std::string& s, const DiffRing<Rational>& R) {
    return LinDiffOp<Rational>(R, parse_poly_list(s, R.ring()));
}

template <class K> AffineDScheme<K> make_scheme(const DiffRing<K>& R) {
    return AffineDScheme<K>(R);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact differential algebra: ideals, trajectories, and descent"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("diffalg ") + version);
    app.add_flag("--json", json_out, "emit JSON instead of text");

    std::vector<std::pair<CLI::App*, std::function<int()>>> handlers;
    auto cmd = [&](const char* name, const char* desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };
    auto opt = [](CLI::App* s, const char* name, const char* desc, bool required = true) {
        auto v = std::make_shared<std::string>();
        auto* o = s->add_option(name, *v, desc);
        if (required) o->required();
        return v;
    };
    auto num = [](CLI::App* s, const char* name, unsigned dflt, const char* desc) {
        auto v = std::make_shared<unsigned>(dflt);
        s->add_option(name, *v, desc)->capture_default_str();
        return v;
    };

    {
        auto* s = cmd("gb", "reduced Groebner basis of an ideal");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto I = parse_ideal(*idl, R.ring());
                std::string text;
                for (const auto& g : I.groebner()) {
                    if (!text.empty()) text += "\n";
                    text += g.str();
                }
                if (text.empty()) text = "0";
                emit(json{{"basis", ideal_json(I)}}, text);
                return 0;
            });
        });
    }
    {
        auto* s = cmd("nf", "normal form of a polynomial modulo an ideal");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        auto pol = opt(s, "--poly", "polynomial to reduce");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto I = parse_ideal(*idl, R.ring());
                auto f = I.reduce(parse_poly(*pol, R.ring()));
                emit(json{{"nf", f.str()}}, f.str());
                return 0;
            });
        });
    }
    {
        auto* s = cmd("member", "ideal membership test");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        auto pol = opt(s, "--poly", "polynomial to test");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                bool in = parse_ideal(*idl, R.ring()).contains(parse_poly(*pol, R.ring()));
                emit(json{{"member", in}}, in ? "true" : "false");
                return 0;
            });
        });
    }
    {
        auto* s = cmd("intersect", "intersection of two ideals");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators of the first ideal");
        auto with = opt(s, "--with", "generators of the second ideal");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto I = ideal_intersect(parse_ideal(*idl, R.ring()),
                                         parse_ideal(*with, R.ring()));
                emit(json{{"generators", ideal_json(I)}}, ideal_str(I));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("colon", "colon ideal (I : J)");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators of I");
        auto by = opt(s, "--by", "generators of J");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto I = colon(parse_ideal(*idl, R.ring()), parse_ideal(*by, R.ring()));
                emit(json{{"generators", ideal_json(I)}}, ideal_str(I));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("sat", "saturation (I : f^inf)");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators of I");
        auto pol = opt(s, "--poly", "the saturating polynomial f");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto I = saturation(parse_ideal(*idl, R.ring()), parse_poly(*pol, R.ring()));
                emit(json{{"generators", ideal_json(I)}}, ideal_str(I));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("eliminate", "eliminate variables from an ideal");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        auto vars = opt(s, "--vars", "variables to eliminate, ','-separated");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto I = eliminate(parse_ideal(*idl, R.ring()), var_indices(*vars, R.ring()));
                emit(json{{"generators", ideal_json(I)}}, ideal_str(I));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("dclose", "close an ideal under the derivations");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        auto lv = num(s, "--levels", 4, "closure depth");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto cl = delta_close(R, parse_ideal(*idl, R.ring()), *lv);
                emit(json{{"generators", ideal_json(cl.result)},
                          {"certified", cl.certified},
                          {"levels", cl.levels}},
                     ideal_str(cl.result) +
                         (cl.certified ? ", certified=true" : ", certified=false"));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("disideal", "is the ideal stable under the derivations?");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                bool ok = is_delta_ideal(R, parse_ideal(*idl, R.ring()));
                emit(json{{"delta_ideal", ok}}, ok ? "true" : "false");
                return 0;
            });
        });
    }
    {
        auto* s = cmd("dmember", "membership in the generated differential ideal");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        auto pol = opt(s, "--poly", "polynomial to test");
        auto lv = num(s, "--levels", 4, "closure depth");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto res = delta_member(R, parse_poly(*pol, R.ring()),
                                        parse_ideal(*idl, R.ring()), *lv);
                bool yes = res.status == DeltaMemberStatus::Yes;
                const char* st = yes ? "yes" : "not-found-at-bound";
                emit(json{{"status", st},
                          {"definitive", res.definitive},
                          {"bound", res.bound}},
                     std::string("status=") + st +
                         ", definitive=" + (res.definitive ? "true" : "false") +
                         ", bound=" + std::to_string(res.bound));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("radical-delta", "radical differential ideal generated by I");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        auto lv = num(s, "--levels", 4, "closure depth");
        auto rd = num(s, "--rounds", 8, "growth rounds");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto I = radical_delta(R, parse_ideal(*idl, R.ring()), *lv, *rd);
                emit(json{{"generators", ideal_json(I)}}, ideal_str(I));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("psharp", "sharpen an ideal to its largest stable subideal");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated");
        auto D = num(s, "--degree", 6, "degree window bound");
        auto mi = num(s, "--maxiter", 32, "iteration cap");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto res = psharp(R, parse_ideal(*idl, R.ring()), *D, *mi);
                auto tr = json::array();
                for (const auto& t : res.trace) tr.push_back(ideal_json(t));
                emit(json{{"final", ideal_json(res.final_ideal)},
                          {"status", psharp_status_name(res.status)},
                          {"steps", res.steps},
                          {"degree_bound", res.degree_bound},
                          {"delta_stable_cert", res.delta_stable_cert},
                          {"contained_cert", res.contained_cert},
                          {"trace", tr}},
                     ideal_str(res.final_ideal) + ", status=" +
                         psharp_status_name(res.status));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("traj", "trajectory of a point of the affine scheme");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated", false);
        auto fix = opt(s, "--fixtures", "fixture JSON file", false);
        auto D = num(s, "--degree", 6, "degree window bound");
        auto mi = num(s, "--maxiter", 32, "iteration cap");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto S = make_scheme(R);
                if (!fix->empty()) {
                    auto fxs = load_fixtures(*fix, R.ring());
                    for (const auto& [name, I] : fxs) S.add_fixture(name, I);
                    auto arr = json::array();
                    std::string text;
                    for (const auto& [name, I] : fxs) {
                        auto res = trajectory(I, S, *D, *mi);
                        arr.push_back(json{{"name", name},
                                           {"final", ideal_json(res.final_ideal)},
                                           {"status", psharp_status_name(res.status)},
                                           {"steps", res.steps}});
                        if (!text.empty()) text += "\n";
                        text += name + ": " + ideal_str(res.final_ideal) + ", status=" +
                                psharp_status_name(res.status);
                    }
                    emit(json{{"fixtures", arr}}, text);
                    return 0;
                }
                if (idl->empty()) throw DomainError("traj needs --ideal or --fixtures");
                auto res = trajectory(parse_ideal(*idl, R.ring()), S, *D, *mi);
                emit(json{{"final", ideal_json(res.final_ideal)},
                          {"status", psharp_status_name(res.status)},
                          {"steps", res.steps}},
                     ideal_str(res.final_ideal) + ", status=" +
                         psharp_status_name(res.status));
                return 0;
            });
        });
    }
    {
        auto* s = cmd("leaf", "is the point a leaf (stable under the derivations)?");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto idl = opt(s, "--ideal", "generators, ';'-separated", false);
        auto fix = opt(s, "--fixtures", "fixture JSON file", false);
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto S = make_scheme(R);
                if (!fix->empty()) {
                    auto fxs = load_fixtures(*fix, R.ring());
                    auto arr = json::array();
                    std::string text;
                    for (const auto& [name, I] : fxs) {
                        bool lf = is_leaf(I, S);
                        arr.push_back(json{{"name", name}, {"leaf", lf}});
                        if (!text.empty()) text += "\n";
                        text += name + ": " + (lf ? "leaf" : "not-leaf");
                    }
                    emit(json{{"fixtures", arr}}, text);
                    return 0;
                }
                if (idl->empty()) throw DomainError("leaf needs --ideal or --fixtures");
                bool lf = is_leaf(parse_ideal(*idl, R.ring()), S);
                emit(json{{"leaf", lf}}, lf ? "true" : "false");
                return 0;
            });
        });
    }
    {
        auto* s = cmd("fiber", "fiber of a stable ideal of A[t] at t = c");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto idl = opt(s, "--ideal", "generators over the extended ring");
        auto cv = opt(s, "--c", "the evaluation point");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            auto p = parse_ideal(*idl, T.realization().ring());
            auto fib = fiber_intersection(T, p, scalar_of(*cv, T.base()));
            emit(json{{"generators", ideal_json(fib)}}, ideal_str(fib));
            return 0;
        });
    }
    {
        auto* s = cmd("svdp-extend", "extend an ideal of A to A[t]");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto idl = opt(s, "--ideal", "generators over the base");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            auto J = extend_ideal(T, parse_ideal(*idl, T.base()));
            emit(json{{"generators", ideal_json(J)}}, ideal_str(J));
            return 0;
        });
    }
    {
        auto* s = cmd("svdp-contract", "contract an ideal of A[t] to A");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto idl = opt(s, "--ideal", "generators over the extended ring");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            auto I = contract_ideal(T, parse_ideal(*idl, T.realization().ring()));
            emit(json{{"generators", ideal_json(I)}}, ideal_str(I));
            return 0;
        });
    }
    {
        auto* s = cmd("svdp-reduce", "flatten an element into simple tensors");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto el = opt(s, "--elem", "element of the extended ring");
        auto idl = opt(s, "--ideal", "stable ideal containing the element", false);
        auto lv = num(s, "--levels", 6, "closure depth for the default ideal");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            const auto& E = T.realization().ring();
            auto x = parse_poly(*el, E);
            Ideal<Rational> J = idl->empty()
                                    ? delta_close(T.realization(),
                                                  Ideal<Rational>(E, {x}), *lv).result
                                    : parse_ideal(*idl, E);
            auto parts = svdp_reduce(T, x, J);
            auto arr = json::array();
            std::string text;
            for (const auto& p : parts) {
                arr.push_back(json{{"a", p.a.str()}, {"lambda", p.lambda.str()}});
                if (!text.empty()) text += "\n";
                text += "a = " + p.a.str() + ", lambda = " + p.lambda.str();
            }
            if (text.empty()) text = "0";
            emit(json{{"parts", arr}}, text);
            return 0;
        });
    }
    {
        auto* s = cmd("svdp-length", "tensor length of an element of A[t]");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto el = opt(s, "--elem", "element of the extended ring");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            unsigned n = tensor_length(T, parse_poly(*el, T.realization().ring()));
            emit(json{{"length", n}}, std::to_string(n));
            return 0;
        });
    }
    {
        auto* s = cmd("ore", "product in the Ore algebra of t-linear operators");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto o1 = opt(s, "--op1", "coefficients by order, ';'-separated");
        auto o2 = opt(s, "--op2", "coefficients by order, ';'-separated");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            auto L = ore_mul(parse_op(*o1, T.realization()), parse_op(*o2, T.realization()));
            auto arr = json::array();
            for (const auto& c : L.coeffs()) arr.push_back(c.str());
            emit(json{{"op", L.str()}, {"coefficients", arr}}, L.str());
            return 0;
        });
    }
    {
        auto* s = cmd("ann", "annihilator operators of an element, up to bounds");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto el = opt(s, "--elem", "element of the extended ring");
        auto mo = num(s, "--maxord", 2, "operator order bound");
        auto cd = num(s, "--coeffdeg", 1, "coefficient degree bound");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            auto basis = ann_operator(T.realization(),
                                      parse_poly(*el, T.realization().ring()), *mo, *cd);
            auto arr = json::array();
            std::string text;
            for (const auto& L : basis) {
                arr.push_back(L.str());
                if (!text.empty()) text += "\n";
                text += L.str();
            }
            if (text.empty()) text = "none";
            emit(json{{"basis", arr}}, text);
            return 0;
        });
    }
    {
        auto* s = cmd("unit-op", "operator sending a simple-part element to 1");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto el = opt(s, "--elem", "element of the extended ring");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            auto L = unit_operator(T.realization(), parse_poly(*el, T.realization().ring()));
            emit(json{{"op", L.str()}}, L.str());
            return 0;
        });
    }
    {
        auto* s = cmd("constants", "basis of the constants up to a degree bound");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto D = num(s, "--degree", 6, "degree bound");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto basis = constants_truncated(R, *D);
                auto arr = json::array();
                std::string text;
                for (const auto& f : basis) {
                    arr.push_back(f.str());
                    if (!text.empty()) text += "\n";
                    text += f.str();
                }
                if (text.empty()) text = "0";
                emit(json{{"basis", arr}, {"degree", *D}}, text);
                return 0;
            });
        });
    }
    {
        auto* s = cmd("localize", "invert an element; emits the new ring spec");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto pol = opt(s, "--poly", "element to invert");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto L = localize(R, parse_poly(*pol, R.ring()));
                std::cout << save_ringspec(L).dump(2) << "\n";
                return 0;
            });
        });
    }
    {
        auto* s = cmd("simple-scan", "scan sample elements for proper stable closures");
        auto ring = opt(s, "--ring", "ring spec JSON file");
        auto sam = opt(s, "--samples", "sample elements, ';'-separated");
        auto lv = num(s, "--levels", 4, "closure depth");
        handlers.emplace_back(s, [=] {
            return with_ring(*ring, [&](auto& R) {
                auto S = make_scheme(R);
                auto res = simplicity_scan(S, parse_poly_list(*sam, R.ring()), *lv);
                if (res.consistent) {
                    emit(json{{"consistent", true}}, "Simple-consistent");
                } else {
                    emit(json{{"consistent", false},
                              {"witness", ideal_json(*res.witness)}},
                         "ProperDeltaIdeal(" + ideal_str(*res.witness) + ")");
                }
                return 0;
            });
        });
    }
    {
        auto* s = cmd("main-check", "leaf/fiber correspondence checks at t = c");
        auto base = opt(s, "--base", "base ring spec JSON file (over Q)");
        auto qs = opt(s, "--q", "prime of the base, ';'-separated generators");
        auto ps = opt(s, "--p", "stable prime of the extended ring (default: extension)",
                      false);
        auto cv = opt(s, "--c", "the evaluation point", false);
        auto D = num(s, "--degree", 4, "degree window bound");
        handlers.emplace_back(s, [=] {
            auto T = load_base(*base);
            auto q = parse_ideal(*qs, T.base());
            Ideal<Rational> p = ps->empty() ? extend_ideal(T, q)
                                            : parse_ideal(*ps, T.realization().ring());
            auto c = cv->empty() ? T.base().zero() : scalar_of(*cv, T.base());
            Report rep = main_theorem_check(T, q, p, c, *D);
            std::string text = rep.pass ? "pass" : "fail";
            for (const auto& cex : rep.counterexamples) text += "\n  " + cex;
            emit(report_json(rep), text);
            return rep.pass ? 0 : 1;
        });
    }
    {
        auto* s = cmd("verify", "run a named verification suite");
        auto suite = std::make_shared<std::string>();
        s->add_option("suite", *suite,
                      "one of: leibniz, colon, minrad, nilpotency, superlemma, "
                      "psharp-prime, svdp-roundtrip, propB, main-theorem, "
                      "charp-counterexamples")
            ->required();
        auto seed = std::make_shared<std::uint64_t>(0);
        auto* seed_o = s->add_option("--seed", *seed, "random seed");
        auto cases = std::make_shared<unsigned>(0);
        auto* cases_o = s->add_option("--cases", *cases, "number of random cases");
        auto trials = std::make_shared<unsigned>(0);
        auto* trials_o = s->add_option("--trials", *trials, "falsification trials");
        auto degcap = std::make_shared<unsigned>(0);
        auto* degcap_o = s->add_option("--degcap", *degcap, "falsification degree cap");
        handlers.emplace_back(s, [=] {
            auto given = [](const CLI::Option* o) { return o->count() > 0; };
            Report r;
            if (*suite == "leibniz")
                r = suite_leibniz(given(seed_o) ? *seed : 1,
                                  given(cases_o) ? *cases : 500);
            else if (*suite == "colon")
                r = suite_colon(given(seed_o) ? *seed : 1, given(cases_o) ? *cases : 40);
            else if (*suite == "minrad")
                r = suite_minrad(given(seed_o) ? *seed : 1);
            else if (*suite == "nilpotency")
                r = suite_nilpotency();
            else if (*suite == "superlemma")
                r = suite_superlemma();
            else if (*suite == "psharp-prime")
                r = suite_psharp_prime(given(seed_o) ? *seed : 7,
                                       given(trials_o) ? *trials : 200,
                                       given(degcap_o) ? *degcap : 3);
            else if (*suite == "svdp-roundtrip")
                r = suite_svdp_roundtrip(given(seed_o) ? *seed : 20260823,
                                         given(cases_o) ? *cases : 200);
            else if (*suite == "propB")
                r = suite_propB();
            else if (*suite == "main-theorem")
                r = suite_main_theorem();
            else if (*suite == "charp-counterexamples")
                r = suite_charp();
            else
                throw DomainError("unknown suite: " + *suite);
            std::cout << report_json(r).dump(2) << "\n";
            return r.pass ? 0 : 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        for (const auto& [sub, fn] : handlers)
            if (sub->parsed()) return fn();
    } catch (const ResourceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
