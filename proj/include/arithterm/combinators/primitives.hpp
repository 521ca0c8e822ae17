#pragma once

#include "../term_core/term.hpp"

namespace arithterm {

// Closed forms of the derived operations. They are built with Mul/Mod nodes so that
// they read like the usual displays; lower() turns them into kernel-only terms.

inline Term c(unsigned long v) { return cnst(v); }

// x*y = floor(2^(x+y+4) / floor(floor(2^(x+y+4)/(x+1))/(y+1))) - (x+y+1)
inline Term product_term(const Term& x, const Term& y) {
    Term p = pow(c(2), x + y + c(4));
    return monus(fdiv(p, fdiv(fdiv(p, x + c(1)), y + c(1))), x + y + c(1));
}

// x*y = ((x+y)^2 - x^2 - y^2)/2, polynomial in the operand sizes
inline Term square_product_term(const Term& x, const Term& y) {
    return fdiv(monus(monus(pow(x + y, c(2)), pow(x, c(2))), pow(y, c(2))), c(2));
}

// n mod m = n - m*floor(n/m), the product written with product_term
inline Term mod_term(const Term& n, const Term& m) {
    return monus(n, product_term(m, fdiv(n, m)));
}

inline Term max_term(const Term& m, const Term& n) {
    return fdiv(m + n + monus(m, n) + monus(n, m), c(2));
}

// n^m = 2^((nm+n+1)m) mod (2^(nm+n+1) - n)
inline Term pow_ident_term(const Term& n, const Term& m) {
    Term e = mul(n, m) + n + c(1);
    return mod(pow(c(2), mul(e, m)), monus(pow(c(2), e), n));
}

// gcd(m,n) as a closed form in powers of two
inline Term gcd_arith_term(const Term& m, const Term& n) {
    Term m2 = pow(m, c(2));
    Term n2 = pow(n, c(2));
    Term m2n = mul(m2, n);
    Term m2n2 = mul(m2, n2);
    Term num = mul(monus(pow(c(2), mul(m2n, n + c(1))), pow(c(2), m2n)),
                   monus(pow(c(2), m2n2), c(1)));
    Term den = mul(mul(monus(pow(c(2), m2n), c(1)), monus(pow(c(2), mul(m, n2)), c(1))),
                   pow(c(2), m2n2));
    return mod(fdiv(num, den), pow(c(2), mul(m, n)));
}

// binom(2n, n) for n >= 1
inline Term central_binomial_term(const Term& n) {
    Term two_n = mul(c(2), n);
    return mod(fdiv(pow(c(1) + pow(c(2), two_n), two_n), pow(c(2), mul(c(2), pow(n, c(2))))),
               pow(c(2), two_n));
}

// dyadic valuation of x >= 1, through the gcd closed form
inline Term nu2_term(const Term& x) {
    Term q = monus(pow(c(2), x + c(1)), c(1));
    return fdiv(mod(pow(gcd_arith_term(x, pow(c(2), x)), x + c(1)), pow(q, c(2))), q);
}

// Hamming weight as the dyadic valuation of the central binomial coefficient
inline Term hw_arith_term(const Term& n) { return nu2_term(central_binomial_term(n)); }

inline Term hw_arith_term() { return hw_arith_term(var(0)); }

}  // namespace arithterm
