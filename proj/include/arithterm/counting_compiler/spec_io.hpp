#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "../term_core/parse.hpp"
#include "../term_core/print.hpp"
#include "ir.hpp"

namespace arithterm {

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw DomainError(std::string("spec: missing field '") + name + "'");
    return j.at(name);
}

inline Term term_field(const nlohmann::json& j, const char* name) {
    const auto& v = field(j, name);
    if (!v.is_string()) throw DomainError(std::string("spec: field '") + name + "' must be a term string");
    try {
        return parse_term(v.get<std::string>());
    } catch (const Error& e) {
        throw DomainError(std::string("spec: field '") + name + "': " + e.what());
    }
}

}  // namespace detail

inline CountingSpec spec_from_json(const nlohmann::json& j) {
    using detail::field;
    using detail::term_field;
    CountingSpec s;
    const auto& k = field(j, "k");
    if (!k.is_number_unsigned() || k.get<unsigned>() < 1) throw DomainError("spec: k must be a positive integer");
    s.k = k.get<unsigned>();
    const auto& vars = field(j, "vars");
    if (!vars.is_array()) throw DomainError("spec: vars must be an array");
    for (const auto& v : vars) {
        if (!v.is_string()) throw DomainError("spec: vars must hold names");
        s.vars.push_back(v.get<std::string>());
    }
    s.t = term_field(j, "t");
    s.w = term_field(j, "w");
    s.poly.k = s.k;
    s.poly.epsilon = term_field(j, "epsilon");
    const auto& ms = field(j, "monomials");
    if (!ms.is_array()) throw DomainError("spec: monomials must be an array");
    for (const auto& m : ms) {
        ExpMonomial em;
        const auto& sign = field(m, "sign");
        if (sign != "+" && sign != "-") throw DomainError("spec: sign must be \"+\" or \"-\"");
        em.negative = sign == "-";
        em.coeff = term_field(m, "coeff");
        const auto& gs = field(m, "gammas");
        if (!gs.is_array() || gs.size() != s.k) throw DomainError("spec: gammas must have k entries");
        for (const auto& g : gs) {
            if (!g.is_number_unsigned()) throw DomainError("spec: gammas must be naturals");
            em.gammas.push_back(g.get<unsigned>());
        }
        const auto& fs = field(m, "factors");
        if (!fs.is_array() || fs.size() != s.k) throw DomainError("spec: factors must have k entries");
        for (const auto& f : fs) em.factors.push_back({term_field(f, "base"), term_field(f, "mult")});
        s.poly.monomials.push_back(std::move(em));
    }
    if (j.contains("box")) {
        for (const auto& v : j.at("box")) s.box_names.push_back(v.get<std::string>());
        if (s.box_names.size() != s.k) throw DomainError("spec: box must have k names");
    }
    std::uint32_t used = arity(s.t);
    used = std::max(used, arity(s.w));
    used = std::max(used, arity(s.poly.epsilon));
    for (const auto& m : s.poly.monomials) {
        used = std::max(used, arity(m.coeff));
        for (const auto& f : m.factors) used = std::max({used, arity(f.base), arity(f.mult)});
    }
    if (used > s.vars.size()) throw DomainError("spec: terms use more variables than declared in vars");
    return s;
}

inline CountingSpec parse_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("spec: ") + e.what());
    }
    return spec_from_json(j);
}

inline CountingSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("spec: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

inline nlohmann::json spec_to_json(const CountingSpec& s) {
    nlohmann::json j;
    j["k"] = s.k;
    j["vars"] = s.vars;
    if (!s.box_names.empty()) j["box"] = s.box_names;
    j["t"] = print_term(s.t);
    j["w"] = print_term(s.w);
    j["epsilon"] = print_term(s.poly.epsilon);
    j["monomials"] = nlohmann::json::array();
    for (const auto& m : s.poly.monomials) {
        nlohmann::json f = nlohmann::json::array();
        for (const auto& x : m.factors) f.push_back({{"base", print_term(x.base)}, {"mult", print_term(x.mult)}});
        j["monomials"].push_back(
            {{"sign", m.negative ? "-" : "+"}, {"coeff", print_term(m.coeff)}, {"gammas", m.gammas}, {"factors", f}});
    }
    return j;
}

}  // namespace arithterm
