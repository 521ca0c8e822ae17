#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "../term_core/print.hpp"
#include "../term_core/term.hpp"
#include "geometric.hpp"
#include "primitives.hpp"

namespace arithterm {

// delta(a,w) = (2^w - 1)(2^w - a + 1); its popcount is 2w for a = 0 and w otherwise.
inline Nat delta(const Nat& a, unsigned long w) {
    Nat p = pow2(w);
    if (a < 0 || a >= p) throw DomainError("delta needs 0 <= a < 2^w");
    return (p - 1) * (p - a + 1);
}

inline Term delta_term(const Term& a, const Term& w) {
    Term p = pow(c(2), w);
    return mul(monus(p, c(1)), monus_exact(p + c(1), a, "delta.a"));
}

inline std::uint64_t hamming_weight(const Nat& n) { return popcount(n); }

struct SignedTerm {
    bool negative = false;
    Term magnitude;
};

struct BlockFactor {
    Term base;  // b_i
    Term mult;  // beta_i; the factor is b_i^(beta_i * x_i)
};

inline bool is_const(const Term& t, unsigned long v) { return t.kind() == Kind::Const && t.node().value == v; }

// Builds C and A blocks for one (k, t, w), sharing common subterms between blocks so that an
// evaluator memoizing by node evaluates each G only once.
class BlockBuilder {
public:
    BlockBuilder(unsigned k, Term t, Term w) : k_(k), t_(std::move(t)), w_(std::move(w)) {
        pw_ = pow(c(2), w_);
        two_w_ = mul(c(2), w_);
        tm1_ = monus_exact(t_, c(1), "box.t-1");
    }

    // sum over the box of 2^(2w v(a)) (2^w-1)(2^w-eps+1), written as (2^w-eps+1)(2^(2wt^k)-1)/(2^w+1)
    Term c_block(const Term& eps) const {
        Term big = monus(pow(c(2), mul(two_w_, pow(t_, c(k_)))), c(1));
        return fdiv_exact(mul(monus_exact(pw_ + c(1), eps, "C.eps"), big), pw_ + c(1), "C.div");
    }

    // -(2^w-1) * coeff * prod_i G_{gamma_i}(b_i^{beta_i} 2^{2w t^{i-1}}, t-1), coeff given as sign + magnitude
    SignedTerm a_block(bool coeff_negative, const Term& coeff, const std::vector<unsigned>& gammas,
                       const std::vector<BlockFactor>& factors) {
        if (gammas.size() != k_ || factors.size() != k_) throw DomainError("a_block arity mismatch");
        std::vector<Term> fs{monus(pw_, c(1)), coeff};
        for (unsigned i = 0; i < k_; ++i) fs.push_back(g_of(i, gammas[i], factors[i]));
        return {!coeff_negative, product_of(fs)};
    }

    const Term& t() const { return t_; }
    const Term& w() const { return w_; }
    unsigned k() const { return k_; }

private:
    unsigned k_;
    Term t_, w_, pw_, two_w_, tm1_;
    std::map<unsigned, Term> shift_;
    std::map<std::tuple<unsigned, unsigned, std::string>, Term> gcache_;

    const Term& shift(unsigned i) {
        auto it = shift_.find(i);
        if (it != shift_.end()) return it->second;
        Term e = i == 0 ? two_w_ : mul(two_w_, i == 1 ? t_ : pow(t_, c(i)));
        return shift_.emplace(i, pow(c(2), e)).first->second;
    }

    Term g_of(unsigned i, unsigned gamma, const BlockFactor& f) {
        std::string key = is_const(f.mult, 0) ? std::string("-") : print_term(f.base) + "^" + print_term(f.mult);
        auto ck = std::make_tuple(i, gamma, key);
        auto it = gcache_.find(ck);
        if (it != gcache_.end()) return it->second;
        Term q;
        if (is_const(f.mult, 0)) q = shift(i);
        else if (is_const(f.mult, 1)) q = mul(f.base, shift(i));
        else q = mul(pow(f.base, f.mult), shift(i));
        Term g = geom_term(gamma, q, tm1_);
        gcache_.emplace(ck, g);
        return g;
    }
};

inline Term c_block(const Term& eps, unsigned k, const Term& t, const Term& w) {
    return BlockBuilder(k, t, w).c_block(eps);
}

inline SignedTerm a_block(bool coeff_negative, const Term& coeff, const std::vector<unsigned>& gammas,
                          const std::vector<BlockFactor>& factors, unsigned k, const Term& t, const Term& w) {
    BlockBuilder b(k, t, w);
    return b.a_block(coeff_negative, coeff, gammas, factors);
}

// Value-level blocks (signed), used as cross-checks.
inline Nat c_block_value(const Nat& eps, unsigned k, unsigned long t, unsigned long w) {
    Nat pw = pow2(w);
    unsigned long tk = to_ulong_checked(pow_nat(Nat(t), k), "t^k");
    return detail::exact_div((pw - eps + 1) * (pow2(2 * w * tk) - 1), pw + 1, "C block");
}

inline Nat a_block_value(const Nat& coeff, const std::vector<unsigned>& gammas, const std::vector<Nat>& bases,
                         const std::vector<unsigned long>& mults, unsigned k, unsigned long t, unsigned long w) {
    Nat prod = -(pow2(w) - 1) * coeff;
    for (unsigned i = 0; i < k; ++i) {
        unsigned long ti = to_ulong_checked(pow_nat(Nat(t), i), "t^i");
        Nat q = pow_nat(bases[i], mults[i]) * pow2(2 * w * ti);
        prod *= geom_sum(gammas[i], q, t - 1);
    }
    return prod;
}

}  // namespace arithterm
