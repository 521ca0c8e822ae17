#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "../combinators/blocks.hpp"
#include "../term_core/eval.hpp"
#include "../term_core/print.hpp"
#include "../term_core/term.hpp"

namespace arithterm {

// Integer polynomial in the input variables; used for coefficients while expanding squares.
class Poly {
public:
    using Exps = std::vector<unsigned>;

    Poly() = default;
    Poly(long v) {  // NOLINT(google-explicit-constructor)
        if (v != 0) terms_[{}] = Nat(v);
    }
    static Poly constant(const Nat& v) {
        Poly p;
        if (v != 0) p.terms_[{}] = v;
        return p;
    }
    static Poly var(unsigned i) {
        Poly p;
        Exps e(i + 1, 0);
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Exps, Nat>& terms() const { return terms_; }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [e, c] : o.terms_) r.acc(e, c);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) {
                Exps e(std::max(e1.size(), e2.size()), 0);
                for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
                for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
                r.acc(trim(e), c1 * c2);
            }
        return r;
    }
    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    Poly positive_part() const {
        Poly r;
        for (const auto& [e, c] : terms_)
            if (c > 0) r.terms_[e] = c;
        return r;
    }
    Poly negative_part_abs() const {
        Poly r;
        for (const auto& [e, c] : terms_)
            if (c < 0) r.terms_[e] = -c;
        return r;
    }

    Nat eval(const std::vector<Nat>& x) const {
        Nat s = 0;
        for (const auto& [e, c] : terms_) {
            Nat m = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) m *= pow_nat(x.at(i), e[i]);
            s += m;
        }
        return s;
    }

    // Term for a polynomial with nonnegative coefficients; highest total degree first.
    Term to_term() const {
        if (terms_.empty()) return cnst(0);
        std::vector<Term> parts;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, coef] = *it;
            if (coef < 0) throw DomainError("to_term on a polynomial with a negative coefficient");
            std::vector<Term> fs;
            if (coef != 1 || std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; })) fs.push_back(cnst(coef));
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 1) fs.push_back(arithterm::var(static_cast<std::uint32_t>(i)));
                else if (e[i] > 1) fs.push_back(pow(arithterm::var(static_cast<std::uint32_t>(i)), c(e[i])));
            }
            parts.push_back(product_of(fs));
        }
        return sum_of(parts);
    }

private:
    std::map<Exps, Nat> terms_;

    static Exps trim(Exps e) {
        while (!e.empty() && e.back() == 0) e.pop_back();
        return e;
    }
    void acc(const Exps& e0, const Nat& c) {
        Exps e = trim(e0);
        Nat& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }
};

inline BlockFactor no_factor() { return {cnst(2), cnst(0)}; }

inline bool is_no_factor(const BlockFactor& f) { return is_const(f.mult, 0); }

inline std::string factor_key(const BlockFactor& f) {
    if (is_no_factor(f)) return "-";
    return print_term(f.base) + "^" + print_term(f.mult);
}

inline Term fold_add(const Term& a, const Term& b) {
    if (a.kind() == Kind::Const && b.kind() == Kind::Const) return cnst(a.node().value + b.node().value);
    return add(a, b);
}

// b1^(m1 x) * b2^(m2 x) as a single factor
inline BlockFactor merge_factor(const BlockFactor& f, const BlockFactor& g) {
    if (is_no_factor(f)) return g;
    if (is_no_factor(g)) return f;
    if (structurally_equal(f.base, g.base)) return {f.base, fold_add(f.mult, g.mult)};
    auto powered = [](const BlockFactor& h) { return is_const(h.mult, 1) ? h.base : pow(h.base, h.mult); };
    return {mul(powered(f), powered(g)), cnst(1)};
}

// One signed monomial of a system equation: coeff * prod x_i^gamma_i * prod b_i^(beta_i x_i).
struct SysMonomial {
    Poly coeff;
    std::vector<unsigned> gammas;
    std::vector<BlockFactor> factors;

    std::string shape_key() const {
        std::string s;
        for (auto g : gammas) s += std::to_string(g) + ",";
        s += "|";
        for (const auto& f : factors) s += factor_key(f) + ";";
        return s;
    }
    bool is_constant() const {
        for (auto g : gammas)
            if (g) return false;
        for (const auto& f : factors)
            if (!is_no_factor(f)) return false;
        return true;
    }
};

// Linear combination of monomials: the left-hand side of one equation.
struct Lin {
    std::vector<SysMonomial> ms;
};

inline SysMonomial mono_mul(const SysMonomial& a, const SysMonomial& b) {
    SysMonomial r;
    r.coeff = a.coeff * b.coeff;
    for (std::size_t i = 0; i < a.gammas.size(); ++i) {
        r.gammas.push_back(a.gammas[i] + b.gammas[i]);
        r.factors.push_back(merge_factor(a.factors[i], b.factors[i]));
    }
    return r;
}

inline Lin operator+(const Lin& a, const Lin& b) {
    Lin r = a;
    r.ms.insert(r.ms.end(), b.ms.begin(), b.ms.end());
    return r;
}
inline Lin operator-(const Lin& a) {
    Lin r = a;
    for (auto& m : r.ms) m.coeff = -m.coeff;
    return r;
}
inline Lin operator-(const Lin& a, const Lin& b) { return a + (-b); }
inline Lin operator*(const Lin& a, const Lin& b) {
    Lin r;
    for (const auto& x : a.ms)
        for (const auto& y : b.ms) r.ms.push_back(mono_mul(x, y));
    return r;
}

// Constructors for equations over k box variables.
class SystemBuilder {
public:
    explicit SystemBuilder(unsigned k) : k_(k) {}

    Lin num(const Poly& p) const {
        SysMonomial m = unit();
        m.coeff = p;
        return {{m}};
    }
    Lin x(unsigned j) const {
        SysMonomial m = unit();
        m.gammas.at(j) = 1;
        return {{m}};
    }
    // base^(mult * x_j)
    Lin exp(const Term& base, unsigned j, const Term& mult = cnst(1)) const {
        SysMonomial m = unit();
        m.factors.at(j) = {base, mult};
        return {{m}};
    }
    unsigned k() const { return k_; }

private:
    unsigned k_;
    SysMonomial unit() const {
        SysMonomial m;
        m.coeff = 1;
        m.gammas.assign(k_, 0);
        m.factors.assign(k_, no_factor());
        return m;
    }
};

// Left-hand sides S_1..S_f whose sum of squares is the counted polynomial.
struct EquationSystem {
    unsigned k = 0;
    std::vector<Lin> eqs;
    std::vector<std::string> box_names;

    // Appends fresh box variables; existing monomials get zero exponents for them.
    void add_vars(const std::vector<std::string>& names) {
        for (auto& e : eqs)
            for (auto& m : e.ms) {
                m.gammas.resize(k + names.size(), 0);
                m.factors.resize(k + names.size(), no_factor());
            }
        k += static_cast<unsigned>(names.size());
        box_names.insert(box_names.end(), names.begin(), names.end());
    }
    SystemBuilder builder() const { return SystemBuilder(k); }
};

struct ExpMonomial {
    bool negative = false;
    Term coeff;
    std::vector<unsigned> gammas;
    std::vector<BlockFactor> factors;
};

struct ExpPolynomial {
    unsigned k = 0;
    Term epsilon = cnst(0);
    std::vector<ExpMonomial> monomials;
};

struct VarInfo {
    enum class Role { Original, Chain, Gadget };
    std::string name;
    Role role = Role::Original;
    int source = -1;     // variable this one is derived from
    unsigned power = 1;  // for chain variables: the power of source it equals
};

using VariableMap = std::vector<VarInfo>;

struct CountingSpec {
    ExpPolynomial poly;
    Term t;
    Term w;
    unsigned k = 0;
    std::vector<std::string> vars;       // input variable names
    std::vector<std::string> box_names;  // box variable names
};

}  // namespace arithterm
