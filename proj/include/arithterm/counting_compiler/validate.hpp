#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "enumerate.hpp"
#include "ir.hpp"

namespace arithterm {

struct BoundsReport {
    Nat limit;  // 2^w
    Nat majorant;
    bool majorant_ok = false;
    bool exhaustive_run = false;
    bool exhaustive_ok = false;
    Nat exhaustive_min, exhaustive_max;
    std::uint64_t points = 0;
    std::string note;

    bool ok() const { return majorant_ok || (exhaustive_run && exhaustive_ok); }
};

// Same term with every monus replaced by +; bounds |x - y| from above.
inline Term plus_substitute(const Term& t) {
    std::unordered_map<const Node*, Term> memo;
    std::function<Term(const Term&)> go = [&](const Term& x) -> Term {
        auto it = memo.find(x.get());
        if (it != memo.end()) return it->second;
        const Node& n = x.node();
        Term out = x;
        if (n.kind == Kind::Monus) out = add(go(x.lhs()), go(x.rhs()));
        else if (n.kind == Kind::Add) out = add(go(x.lhs()), go(x.rhs()));
        else if (n.kind == Kind::Mul) out = mul(go(x.lhs()), go(x.rhs()));
        memo.emplace(x.get(), out);
        return out;
    };
    return go(t);
}

// (a) sum of absolute monomial values at the corner (t-1,...,t-1) against 2^w;
// (b) when the box has at most exhaustive_limit points, the exact range of the polynomial.
inline BoundsReport validate_bounds(const CountingSpec& spec, const std::vector<Nat>& bindings,
                                    std::uint64_t exhaustive_limit = 1'000'000,
                                    std::uint64_t bit_budget = kDefaultBitBudget) {
    BoundsReport r;
    Nat w = eval_at(spec.w, bindings, bit_budget);
    Nat t = eval_at(spec.t, bindings, bit_budget);
    if (t < 1) {
        r.note = "box bound t must be at least 1";
        return r;
    }
    r.limit = pow2(to_ulong_checked(w, "w"));
    try {
        Nat top = t - 1;
        Nat maj = eval_at(plus_substitute(spec.poly.epsilon), bindings, bit_budget);
        for (const auto& m : spec.poly.monomials) {
            Nat v = eval_at(plus_substitute(m.coeff), bindings, bit_budget);
            for (unsigned i = 0; i < spec.k && v != 0; ++i) {
                if (m.gammas[i]) v *= pow_nat(top, m.gammas[i]);
                if (!is_no_factor(m.factors[i])) {
                    Nat b = eval_at(m.factors[i].base, bindings, bit_budget);
                    Nat e = eval_at(m.factors[i].mult, bindings, bit_budget) * top;
                    if (b > 1 && bit_length(b) * e > Nat(static_cast<unsigned long>(bit_budget)))
                        throw BitBudgetExceeded("majorant too large");
                    v *= pow_nat(b, to_ulong_checked(e, "exponent"));
                }
            }
            maj += v;
        }
        r.majorant = maj;
        r.majorant_ok = maj < r.limit;
    } catch (const BitBudgetExceeded&) {
        r.note = "majorant exceeds the bit budget";
    }
    if (t.fits_ulong_p()) {
        std::vector<std::uint64_t> bounds(spec.k, t.get_ui());
        unsigned __int128 total = 1;
        for (auto b : bounds) total = total > exhaustive_limit ? total : total * b;
        if (total <= exhaustive_limit) {
            BoundPoly bp = bind_poly(spec.poly, bindings, bit_budget);
            std::vector<std::uint64_t> x(spec.k, 0);
            bool first = true;
            std::function<void(unsigned)> rec = [&](unsigned i) {
                if (i == spec.k) {
                    Nat v = bp.eval(x);
                    if (first || v > r.exhaustive_max) r.exhaustive_max = v;
                    if (first || v < r.exhaustive_min) r.exhaustive_min = v;
                    first = false;
                    ++r.points;
                    return;
                }
                for (x[i] = 0; x[i] < bounds[i]; ++x[i]) rec(i + 1);
            };
            rec(0);
            r.exhaustive_run = true;
            r.exhaustive_ok = r.exhaustive_min >= 0 && r.exhaustive_max < r.limit;
        }
    }
    return r;
}

}  // namespace arithterm
