#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "diffalg/diffring.hpp"
#include "diffalg/parse.hpp"

// JSON ring descriptions:
//   {"field": {"type": "Q"} | {"type": "Fp", "p": <prime>},
//    "vars": [names],
//    "derivations": [{"name": str, "images": {var: polystring}}],
//    "quotient": [polystrings]}
// Derivations and quotient are optional; a variable missing from an images
// map has image zero.  All well-definedness checks run on load.

namespace diffalg {

using AnyRing = std::variant<DiffRing<Rational>, DiffRing<GFp>>;

namespace ringspec_detail {

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::string as_string(const nlohmann::json& j) { return j.get<std::string>(); }

inline const nlohmann::json& field_of(const nlohmann::json& j, const char* key,
                                      const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw DomainError(std::string("ring spec: missing ") + what);
    return j.at(key);
}

template <class K>
DiffRing<K> build(typename K::Ctx ctx, const nlohmann::json& j) {
    const auto& jvars = field_of(j, "vars", "\"vars\" array");
    if (!jvars.is_array() || jvars.empty())
        throw DomainError("ring spec: \"vars\" must be a non-empty array of names");
    std::vector<std::string> vars;
    for (const auto& v : jvars) {
        if (!v.is_string()) throw DomainError("ring spec: variable names must be strings");
        vars.push_back(as_string(v));
    }
    Ring<K> R(std::move(ctx), std::move(vars));

    std::vector<DerivationSpec<K>> derivs;
    if (j.contains("derivations")) {
        const auto& jd = j.at("derivations");
        if (!jd.is_array()) throw DomainError("ring spec: \"derivations\" must be an array");
        for (const auto& entry : jd) {
            const auto& jn = field_of(entry, "name", "derivation \"name\"");
            if (!jn.is_string()) throw DomainError("ring spec: derivation names must be strings");
            DerivationSpec<K> d{as_string(jn),
                                std::vector<Poly<K>>(R.nvars(), Poly<K>::zero(R))};
            if (entry.contains("images")) {
                const auto& ji = entry.at("images");
                if (!ji.is_object())
                    throw DomainError("ring spec: derivation images must be an object");
                for (const auto& [var, img] : ji.items()) {
                    int idx = R.var_index(var);
                    if (idx < 0)
                        throw DomainError("ring spec: derivation '" + d.name +
                                          "' names unknown variable '" + var + "'");
                    if (!img.is_string())
                        throw DomainError("ring spec: image of '" + var + "' must be a string");
                    d.images[static_cast<std::size_t>(idx)] =
                        parse_poly(as_string(img), R);
                }
            }
            derivs.push_back(std::move(d));
        }
    }

    std::optional<Ideal<K>> Q;
    if (j.contains("quotient")) {
        const auto& jq = j.at("quotient");
        if (!jq.is_array()) throw DomainError("ring spec: \"quotient\" must be an array");
        std::vector<Poly<K>> gens;
        for (const auto& g : jq) {
            if (!g.is_string())
                throw DomainError("ring spec: quotient generators must be strings");
            gens.push_back(parse_poly(as_string(g), R));
        }
        Q = Ideal<K>(R, std::move(gens));
    }
    return DiffRing<K>(std::move(R), std::move(derivs), std::move(Q));
}

} // namespace ringspec_detail

inline AnyRing load_ringspec(const nlohmann::json& j) {
    const auto& f = ringspec_detail::field_of(j, "field", "\"field\" object");
    const auto& t = ringspec_detail::field_of(f, "type", "field \"type\"");
    if (!t.is_string()) throw DomainError("ring spec: field type must be a string");
    std::string type = t.get<std::string>();
    if (type == "Q") return ringspec_detail::build<Rational>(Rational::Ctx{}, j);
    if (type == "Fp") {
        const auto& jp = ringspec_detail::field_of(f, "p", "field \"p\"");
        if (!jp.is_number_integer() || !ringspec_detail::is_prime(jp.get<long long>()))
            throw DomainError("ring spec: field \"p\" must be a prime");
        return ringspec_detail::build<GFp>(
            GFp::Ctx{static_cast<unsigned>(jp.get<long long>())}, j);
    }
    throw DomainError("ring spec: field type must be \"Q\" or \"Fp\"");
}

inline AnyRing load_ringspec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open ring spec file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("ring spec: ") + e.what());
    }
    return load_ringspec(j);
}

template <class K> nlohmann::json save_ringspec(const DiffRing<K>& R) {
    nlohmann::json j;
    unsigned p = R.characteristic();
    if (p == 0) j["field"] = {{"type", "Q"}};
    else j["field"] = {{"type", "Fp"}, {"p", p}};
    j["vars"] = R.ring().vars();
    auto jd = nlohmann::json::array();
    for (const auto& d : R.derivations()) {
        nlohmann::json images = nlohmann::json::object();
        for (std::size_t i = 0; i < d.images.size(); ++i)
            if (!d.images[i].is_zero()) images[R.ring().vars()[i]] = d.images[i].str();
        jd.push_back({{"name", d.name}, {"images", images}});
    }
    j["derivations"] = jd;
    if (R.quotient()) {
        auto jq = nlohmann::json::array();
        for (const auto& g : R.quotient()->generators()) jq.push_back(g.str());
        j["quotient"] = jq;
    }
    return j;
}

// Fixture files: a JSON list of {"name": str, "generators": [polystrings],
// "asserted": "prime"}.  Primality is caller-asserted, not checked here.
template <class K>
std::vector<std::pair<std::string, Ideal<K>>> load_fixtures(const std::string& path,
                                                            const Ring<K>& R) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open fixture file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("fixture file: ") + e.what());
    }
    if (!j.is_array()) throw DomainError("fixture file: top level must be a list");
    std::vector<std::pair<std::string, Ideal<K>>> out;
    for (const auto& entry : j) {
        const auto& jn = ringspec_detail::field_of(entry, "name", "fixture \"name\"");
        const auto& jg = ringspec_detail::field_of(entry, "generators", "fixture \"generators\"");
        const auto& ja = ringspec_detail::field_of(entry, "asserted", "fixture \"asserted\"");
        if (!jn.is_string() || !jg.is_array())
            throw DomainError("fixture file: bad entry shape");
        if (!ja.is_string() || ringspec_detail::as_string(ja) != "prime")
            throw DomainError("fixture file: \"asserted\" must be \"prime\"");
        std::vector<Poly<K>> gens;
        for (const auto& g : jg) {
            if (!g.is_string())
                throw DomainError("fixture file: generators must be strings");
            gens.push_back(parse_poly(ringspec_detail::as_string(g), R));
        }
        out.emplace_back(ringspec_detail::as_string(jn), Ideal<K>(R, std::move(gens)));
    }
    return out;
}

} // namespace diffalg
