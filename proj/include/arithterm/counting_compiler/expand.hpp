#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ir.hpp"

namespace arithterm {

// Poly with mixed signs becomes Pos - Neg, both as terms.
inline Term signed_poly_term(const Poly& p, const std::string& site) {
    Poly neg = p.negative_part_abs();
    if (neg.is_zero()) return p.positive_part().to_term();
    return monus_exact(p.positive_part().to_term(), neg.to_term(), site);
}

// Sum of the squares of the equations, with like monomials merged. Coefficients are merged
// as exact integer polynomials; a coefficient with terms of both signs is split into one
// positive and one negative monomial of the same shape.
inline ExpPolynomial square_expand(const EquationSystem& sys) {
    std::vector<SysMonomial> groups;
    std::map<std::string, std::size_t> index;
    Poly eps;
    auto accumulate = [&](const SysMonomial& m) {
        if (m.is_constant()) {
            eps = eps + m.coeff;
            return;
        }
        auto key = m.shape_key();
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, groups.size());
            groups.push_back(m);
        } else {
            groups[it->second].coeff = groups[it->second].coeff + m.coeff;
        }
    };
    for (const auto& e : sys.eqs)
        for (std::size_t i = 0; i < e.ms.size(); ++i)
            for (std::size_t j = i; j < e.ms.size(); ++j) {
                SysMonomial m = mono_mul(e.ms[i], e.ms[j]);
                if (i != j) m.coeff = m.coeff * Poly(2);
                accumulate(m);
            }
    ExpPolynomial out;
    out.k = sys.k;
    out.epsilon = signed_poly_term(eps, "eps.sign");
    for (const auto& g : groups) {
        Poly pos = g.coeff.positive_part(), neg = g.coeff.negative_part_abs();
        if (!pos.is_zero()) out.monomials.push_back({false, pos.to_term(), g.gammas, g.factors});
        if (!neg.is_zero()) out.monomials.push_back({true, neg.to_term(), g.gammas, g.factors});
    }
    return out;
}

inline VariableMap original_vars(const EquationSystem& sys) {
    VariableMap vm;
    for (unsigned i = 0; i < sys.k; ++i)
        vm.push_back({i < sys.box_names.size() ? sys.box_names[i] : "x" + std::to_string(i + 1),
                      VarInfo::Role::Original, -1, 1});
    return vm;
}

// Rewrites every non-exponential power x^d with d >= 2 into chain variables
// y_1 = x, y_j = y_{j-1} x, replacing x^d by y_d, so each equation is of degree <= 1 per
// variable and its square only needs G_0..G_2. Chain variables follow the originals.
inline std::pair<EquationSystem, VariableMap> gamma_reduce(const EquationSystem& sys) {
    std::vector<unsigned> deg(sys.k, 0);
    for (const auto& e : sys.eqs)
        for (const auto& m : e.ms)
            for (unsigned i = 0; i < sys.k; ++i) deg[i] = std::max(deg[i], m.gammas[i]);

    EquationSystem out = sys;
    VariableMap vm = original_vars(sys);
    std::vector<std::vector<unsigned>> chain(sys.k);  // chain[i][d] = index of y_d for x_i
    std::vector<std::string> names;
    unsigned next = sys.k;
    for (unsigned i = 0; i < sys.k; ++i) {
        if (deg[i] < 2) continue;
        chain[i].assign(deg[i] + 1, 0);
        for (unsigned d = 1; d <= deg[i]; ++d) {
            chain[i][d] = next++;
            std::string nm = vm[i].name + "^" + std::to_string(d);
            names.push_back(nm);
            vm.push_back({nm, VarInfo::Role::Chain, static_cast<int>(i), d});
        }
    }
    if (names.empty()) return {out, vm};
    out.add_vars(names);
    for (auto& e : out.eqs)
        for (auto& m : e.ms)
            for (unsigned i = 0; i < sys.k; ++i)
                if (m.gammas[i] >= 2) {
                    m.gammas[chain[i][m.gammas[i]]] += 1;
                    m.gammas[i] = 0;
                }
    SystemBuilder b = out.builder();
    for (unsigned i = 0; i < sys.k; ++i) {
        if (chain[i].empty()) continue;
        out.eqs.push_back(b.x(i) - b.x(chain[i][1]));
        for (unsigned d = 2; d <= deg[i]; ++d) out.eqs.push_back(b.x(chain[i][d - 1]) * b.x(i) - b.x(chain[i][d]));
    }
    return {out, vm};
}

struct PowGadget {
    unsigned y1, y2, y3, y4, y5;  // y1 stands for x_i^(x_j)
};

// Adds five variables and four equations forcing y1 = x_i^(x_j), through
// a^b = 2^((ab+a+1)b) mod (2^(ab+a+1) - a). Each solution in (x_i, x_j) lifts uniquely.
inline PowGadget pow_var_eliminate(EquationSystem& sys, unsigned i, unsigned j, VariableMap* vm = nullptr) {
    if (i >= sys.k || j >= sys.k) throw DomainError("pow_var_eliminate: variable out of range");
    unsigned base = sys.k;
    std::string tag = "[" + std::to_string(i) + "^" + std::to_string(j) + "]";
    std::vector<std::string> names;
    for (int d = 1; d <= 5; ++d) names.push_back("y" + std::to_string(d) + tag);
    sys.add_vars(names);
    if (vm) {
        vm->resize(base);
        for (unsigned d = 0; d < 5; ++d) vm->push_back({names[d], VarInfo::Role::Gadget, static_cast<int>(i), 1});
    }
    PowGadget g{base, base + 1, base + 2, base + 3, base + 4};
    SystemBuilder b = sys.builder();
    Lin one = b.num(1);
    Term two = cnst(2);
    sys.eqs.push_back(b.x(g.y2) - b.x(i) * b.x(j) - b.x(i) - one);
    sys.eqs.push_back(b.x(g.y3) - b.x(g.y2) * b.x(j));
    sys.eqs.push_back((b.exp(two, g.y2) - b.x(i)) * b.x(g.y4) + b.x(g.y1) - b.exp(two, g.y3));
    sys.eqs.push_back(b.x(g.y1) + b.x(g.y5) + one - b.exp(two, g.y2) + b.x(i));
    return g;
}

}  // namespace arithterm
