#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "../combinators/primitives.hpp"
#include "../counting_compiler/compile.hpp"
#include "../term_core/term.hpp"
#include "bundled.hpp"
#include "oracles.hpp"
#include "systems.hpp"

// Closed-form terms for the gallery functions. Each takes its arguments as terms, so the
// result can be nested inside other constructions; composite constructions tag their
// inner calls so an evaluator may answer them from an oracle.
namespace arithterm::gallery {

inline const CompiledCounter& compiled_bundled(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, CompiledCounter> cache;
    const CountingSpec& spec = bundled_spec(name);
    std::lock_guard<std::mutex> lock(mu);
    std::string key = bundled_spec_path(name);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, compile_count(spec)).first->second;
}

inline const CompiledCounter& compiled_root(unsigned m) {
    static std::mutex mu;
    static std::map<unsigned, CompiledCounter> cache;
    if (m == 2 || m == 3) return compiled_bundled("root" + std::to_string(m));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    return cache.emplace(m, compile_count(systems::root_spec(m))).first->second;
}

inline Term count_of(const CompiledCounter& cc, const std::vector<Term>& args) { return substitute(cc.count_term, args); }

inline Term count_of(const std::string& spec, const std::vector<Term>& args) {
    return count_of(compiled_bundled(spec), args);
}

inline Term tau_term(const Term& n) { return with_call(count_of("tau", {n}), "tau", {n}); }
inline Term sigma_term(const Term& n) { return with_call(count_of("sigma", {n}), "sigma", {n}); }
inline Term phi_term(const Term& n) { return with_call(count_of("phi", {n}), "phi", {n}); }
inline Term inv_term(const Term& m, const Term& n) { return with_call(count_of("inv", {m, n}), "inv", {m, n}); }

// count of the four-variable system minus one
inline Term sqrt_term(const Term& n) {
    return with_call(monus_exact(count_of("sqrt", {n}), c(1), "sqrt.offset"), "sqrt", {n});
}

inline Term root_term(unsigned m, const Term& n) {
    return with_call(monus_exact(count_of(compiled_root(m), {n}), c(1), "root.offset"), "root" + std::to_string(m), {n});
}

inline Term log_term(const Term& m, const Term& n) {
    return with_call(monus_exact(count_of("log", {m, n}), c(1), "log.offset"), "log", {m, n});
}

// phi(n) / count, with phi given by its own closed form
inline Term ord_term(const Term& m, const Term& n) {
    Term ph = phi_term(n);
    return fdiv_exact(ph, count_of("ord", {m, n, ph}), "ord.div");
}

inline Term dlog_term(const Term& m, const Term& g, const Term& n) { return count_of("dlog", {m, g, n, phi_term(n)}); }

// floor(gcd(n, p^n)^(n+1) mod (p^(n+1) - 1)^2 / (p^(n+1) - 1))
inline Term nu_basic_term(const Term& p, const Term& n) {
    Term q = monus(pow(p, n + c(1)), c(1));
    return fdiv(mod(pow(gcd(n, pow(p, n)), n + c(1)), pow(q, c(2))), q);
}

// Same shape with the exponent cut down to floor(log_p n) + 3.
inline Term nu_efficient_term(const Term& p, const Term& n) {
    Term L = log_term(p, n);
    Term e = L + c(3);
    Term q = monus(pow(p, e), c(1));
    return fdiv(mod(pow(gcd(n, pow(p, L + c(1))), e), pow(q, c(2))), q);
}

// larger prime factor of N = pq: (N - phi(N) + 1 + sqrt((N - phi(N) + 1)^2 - 4N)) / 2
inline Term rsa_term(const Term& N) {
    Term s = monus_exact(N + c(1), phi_term(N), "rsa.sum");
    Term disc = monus_exact(pow(s, c(2)), mul(c(4), N), "rsa.disc");
    return fdiv_exact(s + sqrt_term(disc), c(2), "rsa.half");
}

struct CantorTerms {
    Term w, x, y;
};

// inverse of Cantor's pairing: w = (r - 2 + (r mod 2))/2 with r = floor(sqrt(8n+1))
inline CantorTerms cantor_terms(const Term& n) {
    Term r = sqrt_term(mul(c(8), n) + c(1));
    Term w = fdiv_exact(monus_exact(r + mod(r, c(2)), c(2), "cantor.w"), c(2), "cantor.half");
    Term t = fdiv_exact(pow(w, c(2)) + w, c(2), "cantor.t");
    Term x = monus_exact(n, t, "cantor.x");
    Term y = monus_exact(w, x, "cantor.y");
    return {w, x, y};
}

// 1 if a = b, else 0
inline Term equals_term(const Term& a, const Term& b) { return monus(c(1), monus(a, b) + monus(b, a)); }

inline Term prime_term(const Term& n) { return equals_term(tau_term(n), c(2)); }
inline Term perfect_term(const Term& n) { return equals_term(sigma_term(n), mul(c(2), n)); }

inline const CompiledCounter& compiled_root_uniform() {
    static const CompiledCounter cc = compile_count(systems::root_uniform_spec());
    return cc;
}

inline Term root_uniform_term(const Term& m, const Term& n) {
    return monus_exact(count_of(compiled_root_uniform(), {m, n}), c(1), "root.offset");
}

}  // namespace arithterm::gallery
