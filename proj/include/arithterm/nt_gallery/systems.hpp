#pragma once

#include <string>
#include <vector>

#include "../combinators/primitives.hpp"
#include "../counting_compiler/expand.hpp"
#include "../counting_compiler/ir.hpp"

// Equation systems whose box zeros are counted by each gallery function.
// Input variables are Poly::var(i) in the order of the function's arguments.
namespace arithterm::systems {

inline Lin in(const SystemBuilder& b, unsigned i) { return b.num(Poly::var(i)); }

inline EquationSystem make(unsigned k, std::vector<std::string> names) {
    EquationSystem s;
    s.k = k;
    s.box_names = std::move(names);
    return s;
}

// n - ab
inline EquationSystem tau() {
    auto s = make(2, {"a", "b"});
    auto b = s.builder();
    s.eqs.push_back(in(b, 0) - b.x(0) * b.x(1));
    return s;
}

// n - (a+b+1)c
inline EquationSystem sigma() {
    auto s = make(3, {"a", "b", "c"});
    auto b = s.builder();
    s.eqs.push_back(in(b, 0) - (b.x(0) + b.x(1) + b.num(1)) * b.x(2));
    return s;
}

// ab - cn - 1
inline EquationSystem phi() {
    auto s = make(3, {"a", "b", "c"});
    auto b = s.builder();
    s.eqs.push_back(b.x(0) * b.x(1) - b.x(2) * in(b, 0) - b.num(1));
    return s;
}

// ma - nb - 1, a - c - d - 1 over (m, n)
inline EquationSystem inv() {
    auto s = make(4, {"a", "b", "c", "d"});
    auto b = s.builder();
    s.eqs.push_back(in(b, 0) * b.x(0) - in(b, 1) * b.x(1) - b.num(1));
    s.eqs.push_back(b.x(0) - b.x(2) - b.x(3) - b.num(1));
    return s;
}

// a + b^m - n, for a fixed m
inline EquationSystem root(unsigned m) {
    auto s = make(2, {"a", "b"});
    auto b = s.builder();
    Lin bm = b.x(1);
    for (unsigned i = 1; i < m; ++i) bm = bm * b.x(1);
    s.eqs.push_back(b.x(0) + bm - in(b, 0));
    return s;
}

// a + b^2 - n before gamma reduction; reduced it has four box variables
inline EquationSystem sqrt_unreduced() { return root(2); }

inline EquationSystem sqrt() { return gamma_reduce(sqrt_unreduced()).first; }

// a + m^b - n over (m, n)
inline EquationSystem log() {
    auto s = make(2, {"a", "b"});
    auto b = s.builder();
    s.eqs.push_back(b.x(0) + b.exp(var(0), 1) - in(b, 1));
    return s;
}

// m^a - nb - 1, a - c - 1, phi - d - a over (m, n, phi)
inline EquationSystem ord() {
    auto s = make(4, {"a", "b", "c", "d"});
    auto b = s.builder();
    s.eqs.push_back(b.exp(var(0), 0) - in(b, 1) * b.x(1) - b.num(1));
    s.eqs.push_back(b.x(0) - b.x(2) - b.num(1));
    s.eqs.push_back(in(b, 2) - b.x(3) - b.x(0));
    return s;
}

// a + b + c + 1 - phi, g^(a+b+1) - nd - m over (m, g, n, phi)
inline EquationSystem dlog() {
    auto s = make(4, {"a", "b", "c", "d"});
    auto b = s.builder();
    s.eqs.push_back(b.x(0) + b.x(1) + b.x(2) + b.num(1) - in(b, 3));
    s.eqs.push_back(in(b, 1) * b.exp(var(1), 0) * b.exp(var(1), 1) - in(b, 2) * b.x(3) - in(b, 0));
    return s;
}

// The seven-variable system for the m-th root with m as an input, over (m, n):
// x1 = (m+1)x7 + 1, x2 = m x1, x4 = 2^{x2} mod (2^{x1} - x7) via quotient x3 and slack x5,
// x4 + x6 = n; its zeros are one per g in 0..floor(n^(1/m)).
inline EquationSystem root_uniform() {
    auto s = make(7, {"x1", "x2", "x3", "x4", "x5", "x6", "x7"});
    auto b = s.builder();
    Lin m = in(b, 0), n = in(b, 1), one = b.num(1);
    Term two = cnst(2);
    s.eqs.push_back(b.x(0) - (m + one) * b.x(6) - one);
    s.eqs.push_back(b.x(1) - m * b.x(0));
    s.eqs.push_back(b.exp(two, 1) - b.x(2) * b.exp(two, 0) + b.x(2) * b.x(6) - b.x(3));
    s.eqs.push_back(b.x(3) + b.x(4) - b.exp(two, 0) + b.x(6) + one);
    s.eqs.push_back(b.x(3) + b.x(5) - n);
    return s;
}

inline CountingSpec to_spec(const EquationSystem& sys, std::vector<std::string> vars, Term t, Term w) {
    CountingSpec sp;
    sp.poly = square_expand(sys);
    sp.k = sys.k;
    sp.t = std::move(t);
    sp.w = std::move(w);
    sp.vars = std::move(vars);
    sp.box_names = sys.box_names;
    return sp;
}

// Spec for the fixed-m root: t = n+1, w = 2mn.
inline CountingSpec root_spec(unsigned m) {
    return to_spec(root(m), {"n"}, var(0) + c(1), mul(c(2 * m), var(0)));
}

// t = 2^(nm^2+nm+1), w = 2^(nm^2+nm+2) + 2(nm^2+nm) + 9 over (m, n)
inline CountingSpec root_uniform_spec() {
    Term m = var(0), n = var(1);
    Term e = mul(n, pow(m, c(2))) + mul(n, m);
    Term t = pow(c(2), e + c(1));
    Term w = pow(c(2), e + c(2)) + mul(c(2), e) + c(9);
    return to_spec(root_uniform(), {"m", "n"}, t, w);
}

}  // namespace arithterm::systems
