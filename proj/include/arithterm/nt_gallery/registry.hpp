#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "../counting_compiler/enumerate.hpp"
#include "../term_core/eval.hpp"
#include "oracles.hpp"
#include "terms.hpp"

namespace arithterm::gallery {

struct TermOptions {
    std::string variant;  // empty selects the default
    unsigned m = 2;       // root degree for "root"
};

struct FunctionEntry {
    std::string name;
    std::vector<std::string> params;
    std::string characterization;  // what the counted set or closed form is
    std::function<void(const std::vector<Nat>&)> check_domain;  // throws DomainError
    std::function<Nat(const std::vector<Nat>&)> oracle;
    std::optional<std::string> spec;  // bundled counting spec
    // spec bindings for the arguments and the answer from the spec's count
    std::function<std::vector<Nat>(const std::vector<Nat>&)> spec_bindings;
    std::function<Nat(const Nat&, const std::vector<Nat>&)> from_count;
    std::function<Term(const TermOptions&)> term;  // over var(0..arity-1)
    std::vector<std::string> variants;             // first is the default
    std::string verified_range;

    std::size_t arity() const { return params.size(); }
    bool has_term() const { return static_cast<bool>(term); }
};

inline const OracleTable& default_oracles() {
    static const OracleTable t = [] {
        OracleTable o;
        o["tau"] = [](const std::vector<Nat>& a) { return oracle::tau(a[0]); };
        o["sigma"] = [](const std::vector<Nat>& a) { return oracle::sigma(a[0]); };
        o["phi"] = [](const std::vector<Nat>& a) { return oracle::phi(a[0]); };
        o["inv"] = [](const std::vector<Nat>& a) { return oracle::inv(a[0], a[1]); };
        o["sqrt"] = [](const std::vector<Nat>& a) { return oracle::root(2, a[0]); };
        o["log"] = [](const std::vector<Nat>& a) { return oracle::log(a[0], a[1]); };
        for (unsigned m = 2; m <= 16; ++m)
            o["root" + std::to_string(m)] = [m](const std::vector<Nat>& a) { return oracle::root(m, a[0]); };
        return o;
    }();
    return t;
}

namespace detail {

inline void need(bool ok, const std::string& msg) {
    if (!ok) throw DomainError(msg);
}

inline std::vector<Nat> same(const std::vector<Nat>& a) { return a; }
inline Nat count_is_value(const Nat& c, const std::vector<Nat>&) { return c; }
inline Nat count_minus_one(const Nat& c, const std::vector<Nat>&) { return c - 1; }

inline Term v(unsigned i) { return var(i); }

inline std::vector<FunctionEntry> build_registry() {
    using oracle::is_prime;
    std::vector<FunctionEntry> r;
    auto pos = [](const std::vector<Nat>& a) { need(a[0] >= 1, "needs n >= 1"); };
    auto coprime_lt = [](const Nat& m, const Nat& n, long lo_m, long lo_n) {
        need(n >= lo_n, "needs n >= " + std::to_string(lo_n));
        need(m >= lo_m && m < n, "needs " + std::to_string(lo_m) + " <= m < n");
        need(gcd_nat(m, n) == 1, "needs gcd(m, n) = 1");
    };

    r.push_back({"tau", {"n"}, "number of pairs (a, b) in {0..n}^2 with ab = n", pos,
                 [](auto& a) { return oracle::tau(a[0]); }, "tau", same, count_is_value,
                 [](const TermOptions&) { return tau_term(v(0)); }, {}, "n = 1..25"});
    r.push_back({"sigma", {"n"}, "number of (a, b, c) in {0..n}^3 with (a+b+1)c = n", pos,
                 [](auto& a) { return oracle::sigma(a[0]); }, "sigma", same, count_is_value,
                 [](const TermOptions&) { return sigma_term(v(0)); }, {}, "n = 1..25"});
    r.push_back({"phi", {"n"}, "number of (a, b, c) in {0..n}^3 with ab - cn = 1",
                 [](auto& a) { need(a[0] >= 2, "needs n >= 2"); }, [](auto& a) { return oracle::phi(a[0]); }, "phi",
                 same, count_is_value, [](const TermOptions&) { return phi_term(v(0)); }, {}, "n = 2..25"});
    r.push_back({"inv", {"m", "n"}, "number of (a, b, c, d) in {0..n}^4 with ma - nb = 1, a = c + d + 1",
                 [=](auto& a) { coprime_lt(a[0], a[1], 1, 2); }, [](auto& a) { return oracle::inv(a[0], a[1]); },
                 "inv", same, count_is_value, [](const TermOptions&) { return inv_term(v(0), v(1)); }, {},
                 "coprime (m, n), n = 2..10"});
    r.push_back({"sqrt", {"n"}, "one less than the number of (a, b, c, d) in {0..n}^4 with a + d = n, b = c, cb = d",
                 pos, [](auto& a) { return oracle::root(2, a[0]); }, "sqrt", same, count_minus_one,
                 [](const TermOptions&) { return sqrt_term(v(0)); }, {}, "n = 1..15"});
    r.push_back({"root", {"m", "n"}, "one less than the number of (a, b) in {0..n}^2 with a + b^m = n",
                 [](auto& a) {
                     need(a[0] >= 2 && a[0] <= 16, "needs 2 <= m <= 16");
                     need(a[1] >= 1, "needs n >= 1");
                 },
                 [](auto& a) { return oracle::root(a[0], a[1]); }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions& o) { return root_term(o.m, v(1)); }, {}, "m = 3, n = 1..10"});
    r.push_back({"log", {"m", "n"}, "one less than the number of (a, b) in {0..n}^2 with a + m^b = n",
                 [](auto& a) {
                     need(a[0] >= 2, "needs m >= 2");
                     need(a[1] >= 1, "needs n >= 1");
                 },
                 [](auto& a) { return oracle::log(a[0], a[1]); }, "log", same, count_minus_one,
                 [](const TermOptions&) { return log_term(v(0), v(1)); }, {}, "m = 2..5, n = 1..25"});
    r.push_back({"nu", {"p", "n"}, "exponent of the prime p in n, from gcd(n, p^L) written in base p^L - 1",
                 [](auto& a) {
                     need(is_prime(a[0]), "needs p prime");
                     need(a[1] >= 1, "needs n >= 1");
                 },
                 [](auto& a) { return oracle::nu(a[0], a[1]); }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions& o) {
                     if (o.variant == "basic") return nu_basic_term(v(0), v(1));
                     if (o.variant.empty() || o.variant == "efficient") return nu_efficient_term(v(0), v(1));
                     throw DomainError("unknown variant: " + o.variant);
                 },
                 {"efficient", "basic"}, "p in {2, 3, 5}, n = 1..50"});
    r.push_back({"ord", {"m", "n"},
                 "phi(n) over the number of (a, b, c, d) in {0..m^phi(n)}^4 with m^a = nb + 1, a = c + 1, a + d = phi(n)",
                 [=](auto& a) { coprime_lt(a[0], a[1], 2, 3); }, [](auto& a) { return oracle::ord(a[0], a[1]); },
                 "ord", [](auto& a) { return std::vector<Nat>{a[0], a[1], oracle::phi(a[1])}; },
                 [](const Nat& c, const std::vector<Nat>& a) {
                     if (c == 0) throw ExactDivisionViolation("empty set");
                     return Nat(oracle::phi(a[1]) / c);
                 },
                 [](const TermOptions&) { return ord_term(v(0), v(1)); }, {}, "(2, 5)"});
    r.push_back({"dlog", {"m", "g", "n"},
                 "number of (a, b, c, d) in {0..g^phi(n)}^4 with a + b + c + 1 = phi(n), g^(a+b+1) = nd + m",
                 [=](auto& a) {
                     coprime_lt(a[0], a[2], 2, 3);
                     need(a[1] >= 2 && oracle::is_primitive_root(a[1], a[2]), "needs a primitive root g >= 2");
                 },
                 [](auto& a) { return oracle::dlog(a[0], a[1], a[2]); }, "dlog",
                 [](auto& a) { return std::vector<Nat>{a[0], a[1], a[2], oracle::phi(a[2])}; }, count_is_value,
                 [](const TermOptions&) { return dlog_term(v(0), v(1), v(2)); }, {}, "(3, 3, 4)"});
    r.push_back({"rsa", {"N"}, "larger factor of N = pq from p + q = N - phi(N) + 1 and q - p = sqrt((p+q)^2 - 4N)",
                 [](auto& a) { oracle::factor_semiprime(a[0]); },
                 [](auto& a) { return oracle::factor_semiprime(a[0]).second; }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions&) { return rsa_term(v(0)); }, {}, "pq with p < q <= 13"});
    r.push_back({"cantor_x", {"n"}, "first coordinate of the inverse of Cantor's pairing", [](auto&) {},
                 [](auto& a) { return oracle::cantor_unpair(a[0]).first; }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions&) { return cantor_terms(v(0)).x; }, {}, "n = 0..10^4"});
    r.push_back({"cantor_y", {"n"}, "second coordinate of the inverse of Cantor's pairing", [](auto&) {},
                 [](auto& a) { return oracle::cantor_unpair(a[0]).second; }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions&) { return cantor_terms(v(0)).y; }, {}, "n = 0..10^4"});
    r.push_back({"prime", {"n"}, "1 if tau(n) = 2, else 0", pos,
                 [](auto& a) { return Nat(is_prime(a[0]) ? 1 : 0); }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions&) { return prime_term(v(0)); }, {}, "n = 1..100"});
    r.push_back({"perfect", {"n"}, "1 if sigma(n) = 2n, else 0", pos,
                 [](auto& a) { return Nat(oracle::sigma(a[0]) == 2 * a[0] ? 1 : 0); }, std::nullopt, nullptr,
                 nullptr, [](const TermOptions&) { return perfect_term(v(0)); }, {}, "n = 1..30"});
    r.push_back({"hw", {"n"}, "number of one bits; the kernel variant is the dyadic valuation of binom(2n, n)",
                 [](auto&) {}, [](auto& a) { return oracle::popcount_nat(a[0]); }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions& o) {
                     if (o.variant.empty() || o.variant == "native") return hw(v(0));
                     if (o.variant == "kernel") return hw_arith_term(v(0));
                     throw DomainError("unknown variant: " + o.variant);
                 },
                 {"native", "kernel"}, "n = 0..64 native, n = 0..2 kernel"});
    r.push_back({"gcd", {"m", "n"}, "greatest common divisor; the closed variant uses powers of two",
                 [](auto& a) { need(a[0] >= 1 && a[1] >= 1, "needs m, n >= 1"); },
                 [](auto& a) { return oracle::euclid_gcd(a[0], a[1]); }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions& o) {
                     if (o.variant.empty() || o.variant == "closed") return gcd_arith_term(v(0), v(1));
                     if (o.variant == "native") return gcd(v(0), v(1));
                     throw DomainError("unknown variant: " + o.variant);
                 },
                 {"closed", "native"}, "1..12 squared"});
    r.push_back({"cbinom", {"n"}, "binom(2n, n)", pos, [](auto& a) { return oracle::central_binomial(a[0]); },
                 std::nullopt, nullptr, nullptr, [](const TermOptions&) { return central_binomial_term(v(0)); }, {},
                 "n = 1..10"});
    r.push_back({"root_uniform", {"m", "n"},
                 "one less than the number of zeros of the seven-variable system in {0..2^(nm^2+nm+1)-1}^7",
                 [](auto& a) {
                     need(a[0] >= 2, "needs m >= 2");
                     need(a[1] >= 1, "needs n >= 1");
                 },
                 [](auto& a) { return oracle::root(a[0], a[1]); }, std::nullopt, nullptr, nullptr,
                 [](const TermOptions&) { return root_uniform_term(v(0), v(1)); }, {}, "builds only"});
    return r;
}

}  // namespace detail

inline const std::vector<FunctionEntry>& registry() {
    static const std::vector<FunctionEntry> r = detail::build_registry();
    return r;
}

inline const FunctionEntry& lookup(const std::string& name) {
    for (const auto& e : registry())
        if (e.name == name) return e;
    throw DomainError("unknown function: " + name);
}

inline void check_args(const FunctionEntry& e, const std::vector<Nat>& args) {
    if (args.size() != e.arity())
        throw ArityMismatch(e.name + " takes " + std::to_string(e.arity()) + " arguments, got " +
                            std::to_string(args.size()));
    for (const auto& a : args)
        if (a < 0) throw DomainError("arguments must be naturals");
    e.check_domain(args);
}

inline Nat oracle_eval(const std::string& fn, const std::vector<Nat>& args) {
    const auto& e = lookup(fn);
    check_args(e, args);
    return e.oracle(args);
}

inline TermOptions term_options(const FunctionEntry& e, const std::vector<Nat>& args, const std::string& variant) {
    TermOptions o;
    o.variant = variant;
    if (e.name == "root" && !args.empty()) o.m = static_cast<unsigned>(to_ulong_checked(args[0], "m"));
    return o;
}

// Term for fn; built terms are cached per (fn, variant, m).
inline Term term_of(const std::string& fn, const TermOptions& opts = {}) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, std::string, unsigned>, Term> cache;
    const auto& e = lookup(fn);
    if (!e.has_term()) throw DomainError(fn + " has no term");
    auto key = std::make_tuple(fn, opts.variant, e.name == "root" ? opts.m : 0u);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Term t = e.term(opts);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, t).first->second;
}

struct EvalOptions {
    std::string variant;
    bool oracle_subst = false;  // answer tagged inner calls from oracles
    std::uint64_t bit_budget = kDefaultBitBudget;
};

struct GalleryValue {
    Nat value;
    EvalReport report;
};

inline GalleryValue evaluate(const std::string& fn, const std::vector<Nat>& args, const EvalOptions& opts = {}) {
    const auto& e = lookup(fn);
    check_args(e, args);
    Term t = term_of(fn, term_options(e, args, opts.variant));
    EvalContext ctx;
    ctx.bindings = args;
    ctx.bit_budget = opts.bit_budget;
    if (opts.oracle_subst) ctx.oracles = &default_oracles();
    EvalReport rep = eval(t, ctx);
    return {rep.result, rep};
}

// The characterized quantity computed by enumerating the bundled spec's box.
inline Nat spec_count_eval(const std::string& fn, const std::vector<Nat>& args,
                           std::uint64_t budget = kDefaultEnumerationBudget) {
    const auto& e = lookup(fn);
    check_args(e, args);
    if (!e.spec) throw DomainError(fn + " has no counting spec");
    auto b = e.spec_bindings(args);
    Nat c(static_cast<unsigned long>(enumerate_count(bundled_spec(*e.spec), b, budget)));
    return e.from_count(c, args);
}

}  // namespace arithterm::gallery
