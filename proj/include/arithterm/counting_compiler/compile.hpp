#pragma once

#include <string>
#include <vector>

#include "../combinators/blocks.hpp"
#include "../term_core/eval.hpp"
#include "../term_core/lower.hpp"
#include "../term_core/print.hpp"
#include "ir.hpp"

namespace arithterm {

struct CountEval {
    Nat count;
    EvalReport report;
};

struct CompiledCounter {
    Term pos_part;    // C block plus the A blocks of negative-sign monomials
    Term neg_part;    // A blocks of positive-sign monomials
    Term m_term;      // PosPart monus NegPart
    Term count_term;  // HW(M)/w monus t^k
    unsigned k = 0;
    Term t, w;
    std::size_t blocks = 0;
    SizeMetrics metrics;

    // The same count with every extended node expanded into kernel operations.
    Term kernel_count_term(ProductForm pf = ProductForm::Marchenkov) const { return lower(count_term, pf); }
    Term kernel_m_term(ProductForm pf = ProductForm::Marchenkov) const { return lower(m_term, pf); }

    CountEval evaluate(const std::vector<Nat>& bindings, EvalContext ctx = {}) const {
        ctx.bindings = bindings;
        EvalReport rep = eval(count_term, ctx);
        return {rep.result, rep};
    }
};

inline CompiledCounter compile_count(const CountingSpec& spec) {
    const ExpPolynomial& p = spec.poly;
    if (p.k != spec.k) throw DomainError("spec arity does not match polynomial arity");
    BlockBuilder bb(spec.k, spec.t, spec.w);
    std::vector<Term> pos{bb.c_block(p.epsilon)}, neg;
    for (const auto& m : p.monomials) {
        SignedTerm a = bb.a_block(m.negative, m.coeff, m.gammas, m.factors);
        (a.negative ? neg : pos).push_back(a.magnitude);
    }
    CompiledCounter cc;
    cc.k = spec.k;
    cc.t = spec.t;
    cc.w = spec.w;
    cc.blocks = 1 + p.monomials.size();
    cc.pos_part = sum_of(pos);
    cc.neg_part = sum_of(neg);
    cc.m_term = monus_exact(cc.pos_part, cc.neg_part, "M.sign");
    cc.count_term = monus_exact(fdiv_exact(hw(cc.m_term), spec.w, "count.div"), pow(spec.t, cnst(spec.k)), "count.range");
    cc.metrics = size_metrics(cc.count_term);
    return cc;
}

}  // namespace arithterm
