#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "../term_core/term.hpp"
#include "primitives.hpp"

namespace arithterm {

// Numerator of G_r(q,t) over (q-1)^(r+1), as a signed sum of c * t^i * q^(e),
// where e = t + off when tied to t, or e = off otherwise.
struct RationalFormula {
    struct Key {
        bool tied;
        long off;
        unsigned tpow;
        auto operator<=>(const Key&) const = default;
    };

    unsigned r = 0;
    std::map<Key, Nat> num;

    unsigned den_exp() const { return r + 1; }

    Nat numerator_at(const Nat& q, unsigned long t) const {
        Nat s = 0;
        for (const auto& [k, c] : num) {
            long e = (k.tied ? static_cast<long>(t) : 0) + k.off;
            if (e < 0) throw DomainError("negative power of q in G formula");
            s += c * pow_nat(Nat(t), k.tpow) * pow_nat(q, static_cast<unsigned long>(e));
        }
        return s;
    }

    Nat eval(const Nat& q, unsigned long t) const {
        Nat n = numerator_at(q, t);
        Nat d = pow_nat(q - 1, den_exp());
        if (d == 0) throw DomainError("G formula needs q >= 2");
        Nat quo, rem;
        mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (rem != 0) throw ExactDivisionViolation("G_" + std::to_string(r) + " numerator not divisible");
        return quo;
    }

    // Lowest q exponent offset among terms tied to t (must be >= 0 for t = 0 to make sense).
    long min_tied_offset() const {
        long m = 0;
        bool first = true;
        for (const auto& [k, c] : num)
            if (k.tied && (first || k.off < m)) {
                m = k.off;
                first = false;
            }
        return m;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& [k, c] : num) {
            s += (c < 0 ? " - " : (s.empty() ? "" : " + "));
            Nat a = abs(c);
            s += a.get_str();
            if (k.tpow) s += "*t^" + std::to_string(k.tpow);
            s += "*q^(";
            if (k.tied) s += "t+";
            s += std::to_string(k.off) + ")";
        }
        return "(" + s + ")/(q-1)^" + std::to_string(den_exp());
    }
};

namespace detail {

using GNum = std::map<RationalFormula::Key, Nat>;

inline void gadd(GNum& acc, const RationalFormula::Key& k, const Nat& c) {
    if (c == 0) return;
    Nat& slot = acc[k];
    slot += c;
    if (slot == 0) acc.erase(k);
}

inline Nat binom(unsigned long n, unsigned long k) {
    Nat r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline GNum shift_t(const GNum& n) {
    GNum out;
    for (const auto& [k, c] : n)
        for (unsigned l = 0; l <= k.tpow; ++l)
            gadd(out, {k.tied, k.tied ? k.off + 1 : k.off, l}, c * binom(k.tpow, l));
    return out;
}

inline GNum d_dq(const GNum& n) {
    GNum out;
    for (const auto& [k, c] : n) {
        if (k.tied) {
            gadd(out, {true, k.off - 1, k.tpow + 1}, c);
            gadd(out, {true, k.off - 1, k.tpow}, c * k.off);
        } else if (k.off != 0) {
            gadd(out, {false, k.off - 1, k.tpow}, c * k.off);
        }
    }
    return out;
}

inline GNum times_q_minus_1_pow(const GNum& n, unsigned e) {
    GNum out;
    for (const auto& [k, c] : n)
        for (unsigned s = 0; s <= e; ++s) {
            Nat coef = c * binom(e, s);
            if ((e - s) % 2) coef = -coef;
            gadd(out, {k.tied, k.off + static_cast<long>(s), k.tpow}, coef);
        }
    return out;
}

}  // namespace detail

// G_r via the recurrence G_{r+1}(q,t) = d/dq G_r(q,t+1) - sum_j binom(r+1,j) G_j(q,t).
inline RationalFormula gen_G_formula(unsigned r) {
    static std::mutex mu;
    static std::vector<detail::GNum> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        detail::GNum g0;
        detail::gadd(g0, {true, 1, 0}, 1);
        detail::gadd(g0, {false, 0, 0}, -1);
        cache.push_back(g0);
    }
    while (cache.size() <= r) {
        unsigned cur = static_cast<unsigned>(cache.size()) - 1;
        detail::GNum s = detail::shift_t(cache[cur]);
        detail::GNum next = detail::times_q_minus_1_pow(detail::d_dq(s), 1);
        for (const auto& [k, c] : s) detail::gadd(next, k, -c * (cur + 1));
        for (unsigned j = 0; j <= cur; ++j) {
            auto part = detail::times_q_minus_1_pow(cache[j], cur + 1 - j);
            Nat b = detail::binom(cur + 1, j);
            for (const auto& [k, c] : part) detail::gadd(next, k, -c * b);
        }
        cache.push_back(next);
    }
    RationalFormula f;
    f.r = r;
    f.num = cache[r];
    return f;
}

// Brute-force sum_{k=0}^t k^r q^k.
inline Nat geom_sum_direct(unsigned r, const Nat& q, unsigned long t) {
    Nat s = 0, qk = 1;
    for (unsigned long k = 0; k <= t; ++k) {
        s += pow_nat(Nat(k), r) * qk;
        qk *= q;
    }
    return s;
}

namespace detail {

inline Nat exact_div(const Nat& n, const Nat& d, const char* what) {
    Nat q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    if (r != 0) throw ExactDivisionViolation(what);
    return q;
}

}  // namespace detail

// G_r(q,t) from the closed forms (r <= 2) or the generated formula.
inline Nat geom_sum(unsigned r, const Nat& q, unsigned long t) {
    if (q < 2) throw DomainError("geom_sum needs q >= 2");
    Nat T(t);
    auto qp = [&](unsigned long e) { return pow_nat(q, e); };
    switch (r) {
    case 0: return detail::exact_div(qp(t + 1) - 1, q - 1, "G_0");
    case 1: return detail::exact_div(q * (T * qp(t + 1) - (T + 1) * qp(t) + 1), pow_nat(q - 1, 2), "G_1");
    case 2:
        return detail::exact_div(
            q * (T * T * qp(t + 2) - (2 * T * T + 2 * T - 1) * qp(t + 1) + (T + 1) * (T + 1) * qp(t) - q - 1),
            pow_nat(q - 1, 3), "G_2");
    default: return gen_G_formula(r).eval(q, t);
    }
}

// Term for G_r(q,t). Every subtraction in a numerator is grouped as positive part minus
// negative part, which never truncates because the numerator equals G_r(q,t)(q-1)^(r+1) >= 0.
inline Term geom_term(unsigned r, const Term& q, const Term& t) {
    Term qm1 = monus(q, c(1));
    switch (r) {
    case 0: return fdiv_exact(monus(pow(q, t + c(1)), c(1)), qm1, "G0.div");
    case 1: {
        Term pos = mul(t, pow(q, t + c(1))) + c(1);
        Term neg = mul(t + c(1), pow(q, t));
        return fdiv_exact(mul(q, monus_exact(pos, neg, "G1.num")), pow(qm1, c(2)), "G1.div");
    }
    case 2: {
        Term t2 = pow(t, c(2));
        Term q1 = pow(q, t + c(1));
        Term pos = mul(t2, pow(q, t + c(2))) + mul(pow(t + c(1), c(2)), pow(q, t)) + q1;
        Term neg = mul(mul(c(2), t2) + mul(c(2), t), q1) + q + c(1);
        return fdiv_exact(mul(q, monus_exact(pos, neg, "G2.num")), pow(qm1, c(3)), "G2.div");
    }
    default: break;
    }
    RationalFormula f = gen_G_formula(r);
    std::vector<Term> pos, neg;
    for (const auto& [k, coef] : f.num) {
        std::vector<Term> fs;
        Nat a = abs(coef);
        if (a != 1) fs.push_back(cnst(a));
        if (k.tpow == 1) fs.push_back(t);
        else if (k.tpow > 1) fs.push_back(pow(t, c(k.tpow)));
        if (k.off < 0) throw DomainError("G formula has a negative q offset");
        Term e = k.tied ? (k.off == 0 ? t : t + c(static_cast<unsigned long>(k.off))) : c(static_cast<unsigned long>(k.off));
        if (k.tied || k.off > 1) fs.push_back(pow(q, e));
        else if (k.off == 1) fs.push_back(q);
        Term m = product_of(fs);
        (coef > 0 ? pos : neg).push_back(m);
    }
    std::string tag = "G" + std::to_string(r);
    return fdiv_exact(monus_exact(sum_of(pos), sum_of(neg), tag + ".num"), pow(qm1, c(r + 1)), tag + ".div");
}

}  // namespace arithterm
