#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lower.hpp"
#include "term.hpp"

namespace arithterm {

using OracleFn = std::function<Nat(const std::vector<Nat>&)>;
using OracleTable = std::map<std::string, OracleFn>;

inline constexpr std::uint64_t kDefaultBitBudget = std::uint64_t{1} << 25;

enum class EvalMode { Accelerated, KernelStrict };

struct EvalContext {
    std::vector<Nat> bindings;
    EvalMode mode = EvalMode::Accelerated;
    bool checked_monus = true;
    bool exact_division = true;
    std::uint64_t bit_budget = kDefaultBitBudget;
    bool accelerated_modpow = false;
    ProductForm kernel_product = ProductForm::Marchenkov;  // lowering used in kernel-strict mode
    // When set, subterms tagged with a CallSite whose fn is in the table are answered by the table.
    const OracleTable* oracles = nullptr;
};

struct AssertionRecord {
    std::string site;
    std::string kind;  // "monus" or "div"
    bool ok;
};

struct EvalReport {
    Nat result;
    std::uint64_t peak_bits = 0;
    std::vector<AssertionRecord> log;

    bool assertions_ok() const {
        for (const auto& r : log)
            if (!r.ok) return false;
        return true;
    }
};

namespace detail {

class Evaluator {
public:
    explicit Evaluator(const EvalContext& ctx) : ctx_(ctx) {}

    Nat run(const Term& t, EvalReport& rep) {
        rep_ = &rep;
        return eval(t.get());
    }

private:
    const EvalContext& ctx_;
    EvalReport* rep_ = nullptr;
    std::unordered_map<const Node*, Nat> memo_;

    void note(const Nat& v) {
        auto bits = bit_length(v);
        if (bits > ctx_.bit_budget)
            throw BitBudgetExceeded("intermediate of " + std::to_string(bits) + " bits exceeds budget " +
                                    std::to_string(ctx_.bit_budget));
        if (bits > rep_->peak_bits) rep_->peak_bits = bits;
    }

    void need_bits(std::uint64_t bits) const {
        if (bits > ctx_.bit_budget)
            throw BitBudgetExceeded("result needs about " + std::to_string(bits) + " bits, budget " +
                                    std::to_string(ctx_.bit_budget));
    }

    static std::string site_of(const Node& n) { return n.note.site.empty() ? kind_name(n.kind) : n.note.site; }

    Nat power(const Nat& b, const Nat& e) {
        if (e == 0) return 1;
        if (b == 0 || b == 1) return b;
        std::uint64_t bb = bit_length(b);
        if (!e.fits_ulong_p()) need_bits(~std::uint64_t{0});
        unsigned long ue = e.get_ui();
        // (bb-1)*e+1 <= bits(b^e) <= bb*e
        unsigned __int128 lo = static_cast<unsigned __int128>(bb - 1) * ue + 1;
        if (lo > ctx_.bit_budget) need_bits(lo > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(lo));
        return pow_nat(b, ue);
    }

    Nat eval(const Node* n) {
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        Nat r = compute(*n);
        note(r);
        memo_.emplace(n, r);
        return r;
    }

    Nat compute(const Node& n) {
        if (n.note.call && ctx_.oracles) {
            auto f = ctx_.oracles->find(n.note.call->fn);
            if (f != ctx_.oracles->end()) {
                std::vector<Nat> args;
                for (const auto& a : n.note.call->args) args.push_back(eval(a.get()));
                return f->second(args);
            }
        }
        switch (n.kind) {
        case Kind::Const: return n.value;
        case Kind::Var:
            if (n.index >= ctx_.bindings.size())
                throw ArityMismatch("no binding for var " + std::to_string(n.index));
            if (ctx_.bindings[n.index] < 0) throw DomainError("negative binding");
            return ctx_.bindings[n.index];
        case Kind::Add: return eval(n.a.get()) + eval(n.b.get());
        case Kind::Monus: {
            Nat x = eval(n.a.get()), y = eval(n.b.get());
            bool trunc = y > x;
            if (n.note.exact && ctx_.checked_monus) rep_->log.push_back({site_of(n), "monus", !trunc});
            if (trunc) return 0;
            return x - y;
        }
        case Kind::FloorDiv: {
            Nat x = eval(n.a.get()), y = eval(n.b.get());
            if (y == 0) {
                if (n.note.exact && ctx_.exact_division) {
                    rep_->log.push_back({site_of(n), "div", false});
                    throw ExactDivisionViolation("division by zero at " + site_of(n));
                }
                return 0;
            }
            Nat q, r;
            mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            if (n.note.exact && ctx_.exact_division) {
                rep_->log.push_back({site_of(n), "div", r == 0});
                if (r != 0) throw ExactDivisionViolation("remainder left at " + site_of(n));
            }
            return q;
        }
        case Kind::Pow: return power(eval(n.a.get()), eval(n.b.get()));
        case Kind::Mul: {
            Nat x = eval(n.a.get()), y = eval(n.b.get());
            need_bits(bit_length(x) + bit_length(y) > 0 ? bit_length(x) + bit_length(y) - 1 : 0);
            return x * y;
        }
        case Kind::Mod: {
            if (ctx_.accelerated_modpow && n.a->kind == Kind::Pow) {
                Nat m = eval(n.b.get());
                if (m > 0) {
                    Nat b = eval(n.a->a.get()), e = eval(n.a->b.get()), r;
                    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
                    return r;
                }
            }
            Nat x = eval(n.a.get()), m = eval(n.b.get());
            if (m == 0) return x;
            Nat r;
            mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
            return r;
        }
        case Kind::Max: {
            Nat x = eval(n.a.get()), y = eval(n.b.get());
            return x > y ? x : y;
        }
        case Kind::Gcd: return gcd_nat(eval(n.a.get()), eval(n.b.get()));
        case Kind::HW: return Nat(static_cast<unsigned long>(popcount(eval(n.a.get()))));
        }
        throw AssertionFailure("unknown node kind");
    }
};

}  // namespace detail

inline EvalReport eval(const Term& term, const EvalContext& ctx) {
    if (ctx.bit_budget < 64) throw DomainError("bit budget must be at least 64");
    auto ar = arity(term);
    if (ctx.bindings.size() < ar)
        throw ArityMismatch("term uses " + std::to_string(ar) + " vars, " + std::to_string(ctx.bindings.size()) +
                            " bound");
    EvalReport rep;
    detail::Evaluator ev(ctx);
    if (ctx.mode == EvalMode::KernelStrict) rep.result = ev.run(lower(term, ctx.kernel_product), rep);
    else rep.result = ev.run(term, rep);
    return rep;
}

inline Nat eval_value(const Term& term, const std::vector<Nat>& bindings = {}) {
    EvalContext ctx;
    ctx.bindings = bindings;
    return eval(term, ctx).result;
}

}  // namespace arithterm
