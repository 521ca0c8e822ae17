#pragma once

#include <set>
#include <vector>

#include "../counting_compiler/enumerate.hpp"
#include "oracles.hpp"
#include "systems.hpp"

// Zeros of the seven-variable root system, built directly instead of by enumerating the box.
namespace arithterm::uniform_root {

using Point = std::vector<Nat>;

// One point per g in 0..floor(n^(1/m)):
// x1 = g(m+1)+1, x2 = m x1, x7 = g, x3 and x4 the quotient and remainder of 2^x2 by 2^x1 - g,
// x5 = 2^x1 - g - 1 - x4, x6 = n - x4.
inline std::vector<Point> witnesses(unsigned long m, const Nat& n) {
    std::vector<Point> out;
    Nat r = oracle::root(Nat(m), n);
    for (Nat g = 0; g <= r; ++g) {
        Nat x1 = g * (m + 1) + 1;
        Nat x2 = m * x1;
        Nat d = pow2(to_ulong_checked(x1, "x1")) - g;
        Nat p = pow2(to_ulong_checked(x2, "x2"));
        Nat x3 = p / d, x4 = p % d;
        out.push_back({x1, x2, x3, x4, d - 1 - x4, n - x4, g});
    }
    return out;
}

inline Nat box_limit(unsigned long m, const Nat& n) {
    unsigned long nn = to_ulong_checked(n, "n");
    return pow2(nn * m * m + nn * m + 1);
}

struct WitnessReport {
    std::size_t count = 0;
    std::size_t expected = 0;
    bool all_zero = true;
    bool in_box = true;
    bool distinct = true;
    bool ok() const { return all_zero && in_box && distinct && count == expected; }
};

inline WitnessReport check_witnesses(unsigned long m, const Nat& n) {
    WitnessReport rep;
    auto sys = systems::root_uniform();
    auto pts = witnesses(m, n);
    Nat t = box_limit(m, n);
    std::set<Point> seen;
    for (const auto& p : pts) {
        if (eval_system(sys, {Nat(m), n}, p) != 0) rep.all_zero = false;
        for (const auto& x : p)
            if (x < 0 || x >= t) rep.in_box = false;
        if (!seen.insert(p).second) rep.distinct = false;
    }
    rep.count = pts.size();
    rep.expected = oracle::root(Nat(m), n).get_ui() + 1;
    return rep;
}

}  // namespace arithterm::uniform_root
