#pragma once

#include <algorithm>
#include <chrono>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "../term_core/print.hpp"
#include "registry.hpp"

namespace arithterm::gallery {

enum class Strategy { OracleVsTerm, OracleVsSpecCount, Identity };

inline Strategy parse_strategy(const std::string& s) {
    if (s == "oracle-vs-term") return Strategy::OracleVsTerm;
    if (s == "oracle-vs-spec-count") return Strategy::OracleVsSpecCount;
    if (s == "identity") return Strategy::Identity;
    throw DomainError("unknown strategy: " + s);
}

struct VerifyOptions {
    EvalOptions eval;
    std::uint64_t enum_budget = kDefaultEnumerationBudget;
    unsigned parallel = 1;
};

struct VerifyRow {
    std::vector<Nat> args;
    std::string expected;
    std::string got;
    bool match = false;
    std::uint64_t peak_bits = 0;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    std::size_t matches() const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.match; }));
    }
    bool all_match() const { return matches() == rows.size(); }
    std::string summary() const { return std::to_string(matches()) + "/" + std::to_string(rows.size()) + " match"; }
};

// Inclusive ranges per argument, e.g. "1..25" or "2..5,1..25"; the grid is in row-major order.
inline std::vector<std::vector<Nat>> parse_range(const std::string& spec) {
    std::vector<std::pair<Nat, Nat>> dims;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dots = part.find("..");
        try {
            if (dots == std::string::npos) {
                Nat v = parse_nat(part);
                dims.emplace_back(v, v);
            } else {
                dims.emplace_back(parse_nat(part.substr(0, dots)), parse_nat(part.substr(dots + 2)));
            }
        } catch (const std::exception&) {
            throw DomainError("bad range: " + spec);
        }
        if (dims.back().first > dims.back().second) throw DomainError("empty range: " + part);
    }
    if (dims.empty()) throw DomainError("bad range: " + spec);
    std::vector<std::vector<Nat>> out{{}};
    for (const auto& [lo, hi] : dims) {
        std::vector<std::vector<Nat>> next;
        for (const auto& prefix : out)
            for (Nat v = lo; v <= hi; ++v) {
                auto a = prefix;
                a.push_back(v);
                next.push_back(std::move(a));
            }
        out = std::move(next);
    }
    return out;
}

inline std::vector<std::vector<Nat>> in_domain(const std::string& fn, const std::vector<std::vector<Nat>>& grid) {
    const auto& e = lookup(fn);
    std::vector<std::vector<Nat>> out;
    for (const auto& a : grid) {
        try {
            check_args(e, a);
            out.push_back(a);
        } catch (const Error&) {
        }
    }
    return out;
}

// Runs f on every item, at most `parallel` at a time, keeping input order.
template <class T, class F>
auto ordered_map(const std::vector<T>& items, unsigned parallel, F f) {
    using R = decltype(f(items.front()));
    std::vector<R> out(items.size());
    if (parallel <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
        return out;
    }
    for (std::size_t base = 0; base < items.size(); base += parallel) {
        std::vector<std::future<R>> fs;
        std::size_t end = std::min(items.size(), base + parallel);
        for (std::size_t i = base; i < end; ++i) fs.push_back(std::async(std::launch::async, f, std::cref(items[i])));
        for (std::size_t i = base; i < end; ++i) out[i] = fs[i - base].get();
    }
    return out;
}

namespace detail {

inline std::string str(const Nat& x) { return x.get_str(); }

// nu_p(n) (tau(pn) - tau(n)) = 2 tau(n) - tau(pn), with nu from its term and tau by trial division,
// plus the defining property p^nu | n, p^(nu+1) does not divide n.
inline VerifyRow nu_identity(const std::vector<Nat>& a, const EvalOptions& o) {
    VerifyRow r;
    r.args = a;
    const Nat &p = a[0], &n = a[1];
    auto v = evaluate("nu", a, o);
    r.peak_bits = v.report.peak_bits;
    Nat tn = oracle::tau(n), tpn = oracle::tau(p * n);
    Nat lhs = v.value * (tpn - tn), rhs = 2 * tn - tpn;
    unsigned long nu = to_ulong_checked(v.value, "nu");
    bool defining = n % pow_nat(p, nu) == 0 && n % pow_nat(p, nu + 1) != 0;
    r.expected = str(rhs);
    r.got = str(lhs);
    r.match = lhs == rhs && defining;
    if (!defining) r.got += " (valuation property fails)";
    return r;
}

// m^phi(n) = 1 mod n with phi from its term
inline VerifyRow euler_identity(const std::vector<Nat>& a, const EvalOptions& o) {
    VerifyRow r;
    r.args = a;
    const Nat &m = a[0], &n = a[1];
    if (gcd_nat(m, n) != 1) throw DomainError("needs gcd(m, n) = 1");
    auto v = evaluate("phi", {n}, o);
    r.peak_bits = v.report.peak_bits;
    Nat x;
    mpz_powm(x.get_mpz_t(), m.get_mpz_t(), v.value.get_mpz_t(), n.get_mpz_t());
    r.expected = str(Nat(1) % n);
    r.got = str(x);
    r.match = x == Nat(1) % n;
    return r;
}

// ord(m, n) | phi(n), and ord | r for every r <= 2 phi(n) with m^r = 1 mod n;
// ord comes from the counted set as phi(n) / count
inline VerifyRow ord_identity(const std::vector<Nat>& a, std::uint64_t enum_budget) {
    VerifyRow r;
    r.args = a;
    const Nat &m = a[0], &n = a[1];
    Nat ord = spec_count_eval("ord", a, enum_budget);
    Nat ph = oracle::phi(n);
    std::size_t bad = ph % ord == 0 ? 0 : 1;
    Nat x = 1;
    for (Nat e = 1; e <= 2 * ph; ++e) {
        x = (x * m) % n;
        if (x == Nat(1) % n && e % ord != 0) ++bad;
    }
    r.expected = "0";
    r.got = std::to_string(bad);
    r.match = bad == 0;
    return r;
}

// (m inv(m, n)) mod n = 1 with inv from its term
inline VerifyRow inv_identity(const std::vector<Nat>& a, const EvalOptions& o) {
    VerifyRow r;
    r.args = a;
    auto v = evaluate("inv", a, o);
    r.peak_bits = v.report.peak_bits;
    Nat x = (a[0] * v.value) % a[1];
    r.expected = "1";
    r.got = str(x);
    r.match = x == 1;
    return r;
}

}  // namespace detail

inline bool has_identity(const std::string& fn) { return fn == "nu" || fn == "phi" || fn == "ord" || fn == "inv"; }

// Identity suites take their own argument shapes: nu (p, n), phi (m, n), ord (m, n), inv (m, n).
inline VerifyRow verify_one(const std::string& fn, const std::vector<Nat>& args, Strategy s, const VerifyOptions& o) {
    VerifyRow r;
    r.args = args;
    try {
        switch (s) {
        case Strategy::OracleVsTerm: {
            Nat want = oracle_eval(fn, args);
            r.expected = want.get_str();
            auto v = evaluate(fn, args, o.eval);
            r.got = v.value.get_str();
            r.peak_bits = v.report.peak_bits;
            r.match = v.value == want && v.report.assertions_ok();
            if (!v.report.assertions_ok()) r.got += " (assertion failed)";
            break;
        }
        case Strategy::OracleVsSpecCount: {
            Nat want = oracle_eval(fn, args);
            r.expected = want.get_str();
            Nat got = spec_count_eval(fn, args, o.enum_budget);
            r.got = got.get_str();
            r.match = got == want;
            break;
        }
        case Strategy::Identity:
            if (fn == "nu") return detail::nu_identity(args, o.eval);
            if (fn == "phi") return detail::euler_identity(args, o.eval);
            if (fn == "ord") return detail::ord_identity(args, o.enum_budget);
            if (fn == "inv") return detail::inv_identity(args, o.eval);
            throw DomainError("no identity suite for " + fn);
        }
    } catch (const Error& e) {
        r.got = e.what();
        r.match = false;
    }
    return r;
}

inline VerifyReport verify_range(const std::string& fn, const std::vector<std::vector<Nat>>& args, Strategy s,
                                 const VerifyOptions& o = {}) {
    lookup(fn);
    VerifyReport rep;
    rep.rows = ordered_map(args, o.parallel, [&](const std::vector<Nat>& a) { return verify_one(fn, a, s, o); });
    return rep;
}

inline std::string csv_args(const std::vector<Nat>& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + a[i].get_str();
    return s;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

inline std::string to_csv(const VerifyReport& rep) {
    std::string out = "args,expected,got,match,peak_bits\n";
    for (const auto& r : rep.rows)
        out += csv_args(r.args) + "," + csv_field(r.expected) + "," + csv_field(r.got) + "," +
               (r.match ? "1" : "0") + "," + std::to_string(r.peak_bits) + "\n";
    return out;
}

struct BenchRow {
    std::vector<Nat> args;
    double term_ms = 0;
    double oracle_ms = 0;
    std::uint64_t peak_bits = 0;
    std::size_t nodes = 0;
    std::string error;
};

inline BenchRow bench_one(const std::string& fn, const std::vector<Nat>& args, const EvalOptions& o) {
    using clock = std::chrono::steady_clock;
    BenchRow r;
    r.args = args;
    try {
        const auto& e = lookup(fn);
        check_args(e, args);
        r.nodes = size_metrics(term_of(fn, term_options(e, args, o.variant))).nodes;
        auto t0 = clock::now();
        auto v = evaluate(fn, args, o);
        auto t1 = clock::now();
        volatile bool sink = oracle_eval(fn, args) == v.value;
        (void)sink;
        auto t2 = clock::now();
        r.term_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        r.oracle_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
        r.peak_bits = v.report.peak_bits;
    } catch (const Error& e) {
        r.error = e.what();
    }
    return r;
}

// Wall times vary between runs; the other columns are deterministic.
inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "args,term_ms,oracle_ms,peak_bits,nodes,error\n";
    char buf[64];
    for (const auto& r : rows) {
        out += csv_args(r.args);
        std::snprintf(buf, sizeof buf, ",%.3f,%.3f,", r.term_ms, r.oracle_ms);
        out += buf + std::to_string(r.peak_bits) + "," + std::to_string(r.nodes) + "," + csv_field(r.error) + "\n";
    }
    return out;
}

inline std::vector<BenchRow> bench_range(const std::string& fn, const std::vector<std::vector<Nat>>& args,
                                         const EvalOptions& o = {}) {
    std::vector<BenchRow> rows;
    for (const auto& a : args) rows.push_back(bench_one(fn, a, o));
    return rows;
}

// "n value" lines for a unary function
inline std::string bfile(const std::string& fn, const std::vector<std::vector<Nat>>& args, const EvalOptions& o = {}) {
    const auto& e = lookup(fn);
    if (e.arity() != 1) throw DomainError("b-file export needs a unary function; " + fn + " takes " +
                                          std::to_string(e.arity()));
    std::string out;
    for (const auto& a : args) out += a[0].get_str() + " " + evaluate(fn, a, o).value.get_str() + "\n";
    return out;
}

}  // namespace arithterm::gallery
