#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "../term_core/eval.hpp"
#include "ir.hpp"

namespace arithterm {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

inline Nat eval_at(const Term& t, const std::vector<Nat>& bindings, std::uint64_t bit_budget = kDefaultBitBudget) {
    EvalContext ctx;
    ctx.bindings = bindings;
    ctx.bit_budget = bit_budget;
    return eval(t, ctx).result;
}

// An exponential polynomial with the input variables already bound: signed integer data only.
struct BoundPoly {
    struct Mono {
        Nat coeff;  // signed
        std::vector<unsigned> gammas;
        std::vector<Nat> bases;
        std::vector<Nat> mults;
    };
    unsigned k = 0;
    Nat eps;
    std::vector<Mono> ms;

    Nat eval(const std::vector<std::uint64_t>& x) const {
        Nat s = eps;
        for (const auto& m : ms) {
            Nat v = m.coeff;
            for (unsigned i = 0; i < k && v != 0; ++i) {
                if (m.gammas[i]) v *= pow_nat(Nat(static_cast<unsigned long>(x[i])), m.gammas[i]);
                if (m.mults[i] != 0 && x[i] != 0)
                    v *= pow_nat(m.bases[i], to_ulong_checked(m.mults[i] * Nat(static_cast<unsigned long>(x[i])), "exponent"));
            }
            s += v;
        }
        return s;
    }
};

inline BoundPoly bind_poly(const ExpPolynomial& p, const std::vector<Nat>& bindings,
                           std::uint64_t bit_budget = kDefaultBitBudget) {
    BoundPoly bp;
    bp.k = p.k;
    bp.eps = eval_at(p.epsilon, bindings, bit_budget);
    for (const auto& m : p.monomials) {
        BoundPoly::Mono bm;
        bm.coeff = eval_at(m.coeff, bindings, bit_budget);
        if (m.negative) bm.coeff = -bm.coeff;
        bm.gammas = m.gammas;
        for (const auto& f : m.factors) {
            bm.bases.push_back(eval_at(f.base, bindings, bit_budget));
            bm.mults.push_back(eval_at(f.mult, bindings, bit_budget));
        }
        bp.ms.push_back(std::move(bm));
    }
    return bp;
}

namespace detail {

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(z & kMersenne61) + static_cast<std::uint64_t>(z >> 61);
    r = (r & kMersenne61) + (r >> 61);
    return r >= kMersenne61 ? r - kMersenne61 : r;
}

inline std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r >= kMersenne61 ? r - kMersenne61 : r;
}

inline std::uint64_t to_mod61(const Nat& x) {
    return mpz_fdiv_ui(x.get_mpz_t(), kMersenne61);
}

// Box enumeration in residues mod 2^61-1; every residue zero is confirmed exactly.
template <class F>
class ZeroScanner {
public:
    ZeroScanner(const BoundPoly& bp, const std::vector<std::uint64_t>& bounds, F& on_zero)
        : bp_(bp), bounds_(bounds), on_zero_(on_zero), x_(bp.k, 0) {
        const std::size_t nm = bp.ms.size();
        Nat P(static_cast<unsigned long>(kMersenne61));
        tab_.assign(nm, std::vector<std::vector<std::uint64_t>>(bp.k));
        for (std::size_t m = 0; m < nm; ++m) {
            const auto& mono = bp.ms[m];
            for (unsigned i = 0; i < bp.k; ++i) {
                Nat bm;
                mpz_powm(bm.get_mpz_t(), mono.bases[i].get_mpz_t(), mono.mults[i].get_mpz_t(), P.get_mpz_t());
                std::uint64_t b = to_mod61(bm), run = 1;
                auto& col = tab_[m][i];
                col.resize(bounds[i]);
                for (std::uint64_t x = 0; x < bounds[i]; ++x) {
                    std::uint64_t xp = 1;
                    for (unsigned g = 0; g < mono.gammas[i]; ++g) xp = mulmod61(xp, x % kMersenne61);
                    col[x] = mulmod61(xp, run);
                    run = mulmod61(run, b);
                }
            }
        }
        acc_.assign(bp.k + 1, std::vector<std::uint64_t>(nm, 0));
        for (std::size_t m = 0; m < nm; ++m) acc_[0][m] = to_mod61(bp.ms[m].coeff);
        eps_ = to_mod61(bp.eps);
        // monomials whose last-variable columns coincide are summed before the inner loop
        unsigned L = bp.k - 1;
        for (std::size_t m = 0; m < nm; ++m) {
            std::size_t g = 0;
            while (g < group_rep_.size() && tab_[group_rep_[g]][L] != tab_[m][L]) ++g;
            if (g == group_rep_.size()) group_rep_.push_back(m);
            group_of_.push_back(g);
        }
        gsum_.assign(group_rep_.size(), 0);
    }

    std::uint64_t run() {
        if (bp_.k == 0) {
            if (bp_.eps == 0) {
                on_zero_(x_);
                return 1;
            }
            return 0;
        }
        for (auto b : bounds_)
            if (b == 0) return 0;
        rec(0);
        return count_;
    }

private:
    const BoundPoly& bp_;
    const std::vector<std::uint64_t>& bounds_;
    F& on_zero_;
    std::vector<std::uint64_t> x_;
    std::vector<std::vector<std::vector<std::uint64_t>>> tab_;  // [monomial][var][value]
    std::vector<std::vector<std::uint64_t>> acc_;                // prefix products per level
    std::uint64_t eps_ = 0;
    std::vector<std::size_t> group_rep_, group_of_;
    std::vector<std::uint64_t> gsum_;
    std::uint64_t count_ = 0;

    void rec(unsigned level) {
        const std::size_t nm = bp_.ms.size();
        unsigned L = bp_.k - 1;
        if (level == L) {
            std::fill(gsum_.begin(), gsum_.end(), 0);
            for (std::size_t m = 0; m < nm; ++m) gsum_[group_of_[m]] = addmod61(gsum_[group_of_[m]], acc_[level][m]);
            const std::size_t ng = group_rep_.size();
            for (std::uint64_t x = 0; x < bounds_[L]; ++x) {
                std::uint64_t s = eps_;
                for (std::size_t g = 0; g < ng; ++g) s = addmod61(s, mulmod61(gsum_[g], tab_[group_rep_[g]][L][x]));
                if (s != 0) continue;
                x_[L] = x;
                if (bp_.eval(x_) == 0) {
                    ++count_;
                    on_zero_(x_);
                }
            }
            return;
        }
        for (std::uint64_t x = 0; x < bounds_[level]; ++x) {
            x_[level] = x;
            for (std::size_t m = 0; m < nm; ++m) acc_[level + 1][m] = mulmod61(acc_[level][m], tab_[m][level][x]);
            rec(level + 1);
        }
    }
};

}  // namespace detail

inline std::uint64_t box_points(const std::vector<std::uint64_t>& bounds, std::uint64_t budget) {
    unsigned __int128 total = 1;
    for (auto b : bounds) {
        total *= b;
        if (total > budget)
            throw EnumerationBudgetExceeded("box has more than " + std::to_string(budget) + " points");
    }
    return static_cast<std::uint64_t>(total);
}

// Calls on_zero(point) for each point of prod [0, bounds_i) where the polynomial vanishes.
template <class F>
std::uint64_t for_each_zero(const BoundPoly& bp, const std::vector<std::uint64_t>& bounds, std::uint64_t budget,
                            F&& on_zero) {
    if (bounds.size() != bp.k) throw ArityMismatch("bounds do not match box arity");
    box_points(bounds, budget);
    detail::ZeroScanner<std::remove_reference_t<F>> sc(bp, bounds, on_zero);
    return sc.run();
}

inline std::vector<std::uint64_t> uniform_bounds(const CountingSpec& spec, const std::vector<Nat>& bindings,
                                                 std::uint64_t budget) {
    Nat t = eval_at(spec.t, bindings);
    if (t < 0 || !t.fits_ulong_p()) throw EnumerationBudgetExceeded("box bound too large");
    std::vector<std::uint64_t> bounds(spec.k, t.get_ui());
    box_points(bounds, budget);
    return bounds;
}

// Exact number of zeros of the spec's polynomial in {0..t-1}^k by direct evaluation.
inline std::uint64_t enumerate_count(const CountingSpec& spec, const std::vector<Nat>& bindings,
                                     std::uint64_t budget = kDefaultEnumerationBudget) {
    auto bounds = uniform_bounds(spec, bindings, budget);
    BoundPoly bp = bind_poly(spec.poly, bindings);
    auto ignore = [](const std::vector<std::uint64_t>&) {};
    return for_each_zero(bp, bounds, budget, ignore);
}

// Value of one equation left-hand side, and of the sum of squares, at a point.
inline Nat eval_lin(const Lin& e, const std::vector<Nat>& bindings, const std::vector<Nat>& x) {
    Nat s = 0;
    for (const auto& m : e.ms) {
        Nat v = m.coeff.eval(bindings);
        for (std::size_t i = 0; i < m.gammas.size() && v != 0; ++i) {
            if (m.gammas[i]) v *= pow_nat(x.at(i), m.gammas[i]);
            if (!is_no_factor(m.factors[i])) {
                Nat b = eval_at(m.factors[i].base, bindings), e2 = eval_at(m.factors[i].mult, bindings);
                v *= pow_nat(b, to_ulong_checked(e2 * x.at(i), "exponent"));
            }
        }
        s += v;
    }
    return s;
}

inline Nat eval_system(const EquationSystem& sys, const std::vector<Nat>& bindings, const std::vector<Nat>& x) {
    Nat s = 0;
    for (const auto& e : sys.eqs) {
        Nat v = eval_lin(e, bindings, x);
        s += v * v;
    }
    return s;
}

}  // namespace arithterm
