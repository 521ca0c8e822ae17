#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace arithterm {

using Nat = mpz_class;

inline std::uint64_t bit_length(const Nat& x) {
    if (x == 0) return 0;
    return mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline std::uint64_t popcount(const Nat& x) {
    if (x < 0) throw DomainError("popcount of a negative value");
    return mpz_popcount(x.get_mpz_t());
}

inline Nat pow_nat(const Nat& base, unsigned long e) {
    Nat r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Nat pow2(unsigned long e) {
    Nat r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline Nat isqrt(const Nat& n) {
    Nat r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// floor(n^(1/m)) for n >= 0, m >= 1
inline Nat iroot(const Nat& n, unsigned long m) {
    Nat r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), m);
    return r;
}

inline Nat gcd_nat(const Nat& a, const Nat& b) {
    Nat r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline unsigned long to_ulong_checked(const Nat& x, const char* what) {
    if (x < 0 || !x.fits_ulong_p()) throw DomainError(std::string(what) + " out of machine range");
    return x.get_ui();
}

inline Nat parse_nat(const std::string& s) {
    if (s.empty()) throw DomainError("empty natural");
    for (char c : s)
        if (c < '0' || c > '9') throw DomainError("not a natural: " + s);
    return Nat(s);
}

}  // namespace arithterm
