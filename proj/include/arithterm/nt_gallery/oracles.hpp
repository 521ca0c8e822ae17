#pragma once

#include <string>
#include <utility>
#include <vector>

#include "../nat.hpp"

// Naive reference implementations used as test oracles.
namespace arithterm::oracle {

inline bool is_prime(const Nat& n) {
    if (n < 2) return false;
    for (Nat d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline Nat tau(const Nat& n) {
    if (n < 1) throw DomainError("tau needs n >= 1");
    Nat c = 0;
    for (Nat d = 1; d <= n; ++d)
        if (n % d == 0) ++c;
    return c;
}

inline Nat sigma(const Nat& n) {
    if (n < 1) throw DomainError("sigma needs n >= 1");
    Nat s = 0;
    for (Nat d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

inline Nat phi(const Nat& n) {
    if (n < 1) throw DomainError("phi needs n >= 1");
    Nat c = 0;
    for (Nat a = 1; a <= n; ++a)
        if (gcd_nat(a, n) == 1) ++c;
    return c;
}

inline Nat inv(const Nat& m, const Nat& n) {
    if (n < 2 || m < 1 || m >= n || gcd_nat(m, n) != 1) throw DomainError("inv needs coprime 1 <= m < n");
    for (Nat a = 1; a < n; ++a)
        if ((m * a) % n == 1) return a;
    throw DomainError("no inverse");
}

inline Nat root(const Nat& m, const Nat& n) {
    if (m < 1 || n < 0) throw DomainError("root needs m >= 1, n >= 0");
    unsigned long e = to_ulong_checked(m, "m");
    Nat b = 0;
    while (pow_nat(b + 1, e) <= n) ++b;
    return b;
}

inline Nat log(const Nat& m, const Nat& n) {
    if (m < 2 || n < 1) throw DomainError("log needs m >= 2, n >= 1");
    Nat b = 0, p = m;
    while (p <= n) {
        p *= m;
        ++b;
    }
    return b;
}

inline Nat nu(const Nat& p, const Nat& n) {
    if (!is_prime(p) || n < 1) throw DomainError("nu needs p prime, n >= 1");
    Nat x = n, v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

inline Nat ord(const Nat& m, const Nat& n) {
    if (n < 2 || gcd_nat(m, n) != 1) throw DomainError("ord needs coprime m, n >= 2");
    Nat r = 1, x = m % n;
    while (x != 1 % n) {
        x = (x * m) % n;
        ++r;
    }
    return r;
}

inline bool is_primitive_root(const Nat& g, const Nat& n) {
    return n >= 2 && gcd_nat(g, n) == 1 && ord(g, n) == phi(n);
}

inline Nat dlog(const Nat& m, const Nat& g, const Nat& n) {
    if (!is_primitive_root(g, n)) throw DomainError("dlog needs a primitive root g");
    Nat ph = phi(n), x = g % n;
    for (Nat d = 1; d <= ph; ++d) {
        if (x == m % n) return d;
        x = (x * g) % n;
    }
    throw DomainError("m is not a power of g");
}

inline std::pair<Nat, Nat> factor_semiprime(const Nat& N) {
    for (Nat p = 2; p * p <= N; ++p)
        if (N % p == 0) {
            Nat q = N / p;
            if (p < q && is_prime(p) && is_prime(q)) return {p, q};
            break;
        }
    throw DomainError("not a product of two distinct primes");
}

inline Nat cantor_pair(const Nat& x, const Nat& y) { return (x + y) * (x + y + 1) / 2 + x; }

// inverse of the pairing by search along diagonals
inline std::pair<Nat, Nat> cantor_unpair(const Nat& n) {
    Nat s = 0;
    while ((s + 1) * (s + 2) / 2 <= n) ++s;
    Nat x = n - s * (s + 1) / 2;
    return {x, s - x};
}

inline Nat popcount_nat(const Nat& n) { return Nat(static_cast<unsigned long>(popcount(n))); }

inline Nat central_binomial(const Nat& n) {
    // Pascal's triangle row 2n
    unsigned long m = 2 * to_ulong_checked(n, "n");
    std::vector<Nat> row{1};
    for (unsigned long i = 0; i < m; ++i) {
        std::vector<Nat> next(row.size() + 1, 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            next[j] += row[j];
            next[j + 1] += row[j];
        }
        row = std::move(next);
    }
    return row[m / 2];
}

inline Nat euclid_gcd(Nat a, Nat b) {
    while (b != 0) {
        Nat r = a % b;
        a = b;
        b = r;
    }
    return a;
}

}  // namespace arithterm::oracle
