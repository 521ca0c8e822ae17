#pragma once

#include <functional>
#include <unordered_map>
#include <utility>

#include "../combinators/primitives.hpp"
#include "term.hpp"

namespace arithterm {

// Marchenkov's product needs 2^(x+y); the square form stays polynomial and is the
// only one that evaluates once operands are themselves large powers.
enum class ProductForm { Marchenkov, Squares };

// Rewrites every extended node into kernel operations. Kernel subterms are returned unchanged.
inline Term lower(const Term& t, ProductForm pf = ProductForm::Marchenkov) {
    auto prod = [pf](const Term& x, const Term& y) {
        return pf == ProductForm::Squares ? square_product_term(x, y) : product_term(x, y);
    };
    // keys are kept alive so addresses of temporaries are never reused
    std::unordered_map<const Node*, std::pair<Term, Term>> memo;
    std::function<Term(const Term&)> go = [&](const Term& x) -> Term {
        auto it = memo.find(x.get());
        if (it != memo.end()) return it->second.second;
        const Node& n = x.node();
        Term out;
        switch (n.kind) {
        case Kind::Const:
        case Kind::Var: out = x; break;
        case Kind::Add:
        case Kind::Monus:
        case Kind::FloorDiv:
        case Kind::Pow: {
            Term a = go(x.lhs()), b = go(x.rhs());
            if (a.get() == n.a.get() && b.get() == n.b.get()) out = x;
            else out = make_binary(n.kind, a, b, n.note);
            break;
        }
        case Kind::Mul: out = prod(go(x.lhs()), go(x.rhs())); break;
        case Kind::Mod: {
            Term a = go(x.lhs()), b = go(x.rhs());
            out = monus(a, prod(b, fdiv(a, b)));
            break;
        }
        case Kind::Max: out = max_term(go(x.lhs()), go(x.rhs())); break;
        case Kind::Gcd: out = go(gcd_arith_term(go(x.lhs()), go(x.rhs()))); break;
        case Kind::HW: out = go(hw_arith_term(go(x.lhs()))); break;
        }
        memo.emplace(x.get(), std::make_pair(x, out));
        return out;
    };
    return go(t);
}

}  // namespace arithterm
