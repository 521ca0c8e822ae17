#include <doctest.h>

#include "arithterm/combinators/blocks.hpp"
#include "arithterm/combinators/geometric.hpp"
#include "arithterm/combinators/primitives.hpp"
#include "arithterm/term_core/eval.hpp"

using namespace arithterm;

namespace {

EvalReport run(const Term& t, std::vector<Nat> b = {}) {
    EvalContext ctx;
    ctx.bindings = std::move(b);
    return eval(t, ctx);
}

Nat ev(const Term& t, std::vector<Nat> b = {}) { return run(t, std::move(b)).result; }

Nat pascal(unsigned long n, unsigned long k) {
    std::vector<Nat> row{1};
    for (unsigned long i = 0; i < n; ++i) {
        std::vector<Nat> next(row.size() + 1, 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            next[j] += row[j];
            next[j + 1] += row[j];
        }
        row = next;
    }
    return row[k];
}

unsigned long nu2_trial(Nat x) {
    unsigned long v = 0;
    while (x % 2 == 0) {
        x /= 2;
        ++v;
    }
    return v;
}

// sum over {0..t-1}^k of f(point) 2^(2w v(point)) with v(a) = sum a_i t^(i-1)
template <class F>
Nat box_sum(unsigned k, unsigned long t, unsigned long w, F f) {
    std::vector<unsigned long> a(k, 0);
    Nat s = 0;
    while (true) {
        unsigned long v = 0, tp = 1;
        for (unsigned i = 0; i < k; ++i) {
            v += a[i] * tp;
            tp *= t;
        }
        s += f(a) * pow2(2 * w * v);
        unsigned i = 0;
        while (i < k && ++a[i] == t) a[i++] = 0;
        if (i == k) break;
    }
    return s;
}

}  // namespace

TEST_CASE("delta examples") {
    CHECK(delta(0, 3) == 63);
    CHECK(hamming_weight(delta(0, 3)) == 6);
    CHECK(delta(1, 3) == 56);
    CHECK(hamming_weight(delta(1, 3)) == 3);
    CHECK(delta(5, 3) == 28);
    CHECK(hamming_weight(delta(5, 3)) == 3);
    CHECK_THROWS_AS(delta(8, 3), DomainError);
    CHECK(ev(delta_term(cnst(5), cnst(3))) == 28);
}

TEST_CASE("delta popcount is 2w at zero and w elsewhere") {
    for (unsigned long w = 1; w <= 12; ++w)
        for (unsigned long a = 0; a < (1ul << w); ++a)
            REQUIRE(hamming_weight(delta(a, w)) == (a == 0 ? 2 * w : w));
}

TEST_CASE("hamming weight") {
    CHECK(hamming_weight(0) == 0);
    CHECK(hamming_weight(7) == 3);
    for (unsigned long k = 0; k <= 20; ++k) CHECK(hamming_weight(pow2(k)) == 1);
    for (unsigned long n = 1; n <= 64; ++n) CHECK(nu2_trial(pascal(2 * n, n)) == hamming_weight(n));
    for (unsigned long n = 0; n <= 2; ++n) CHECK(ev(hw_arith_term(cnst(n))) == hamming_weight(n));
    CHECK(is_kernel_only(lower(hw_arith_term())));
}

TEST_CASE("geometric sums") {
    CHECK(geom_sum(0, 2, 3) == 15);
    for (unsigned long q = 2; q <= 6; ++q) CHECK(geom_sum(1, q, 0) == 0);
    CHECK(geom_sum(2, 2, 2) == 18);
    CHECK_THROWS_AS(geom_sum(0, 1, 3), DomainError);
    for (unsigned r = 0; r <= 5; ++r)
        for (unsigned long q = 2; q <= 5; ++q)
            for (unsigned long t = 0; t <= 6; ++t) {
                Nat brute = geom_sum_direct(r, q, t);
                CHECK(geom_sum(r, q, t) == brute);
                CHECK(gen_G_formula(r).eval(q, t) == brute);
                auto rep = run(geom_term(r, cnst(q), cnst(t)));
                CHECK(rep.result == brute);
                CHECK(rep.assertions_ok());
            }
}

TEST_CASE("generated G numerators match the closed forms") {
    auto g0 = gen_G_formula(0), g1 = gen_G_formula(1), g2 = gen_G_formula(2);
    CHECK(g0.den_exp() == 1);
    CHECK(g1.den_exp() == 2);
    CHECK(g2.den_exp() == 3);
    for (long q = 2; q <= 7; ++q)
        for (long t = 0; t <= 8; ++t) {
            Nat Q(q), T(t);
            auto qp = [&](long e) { return pow_nat(Q, static_cast<unsigned long>(e)); };
            CHECK(g0.numerator_at(Q, t) == qp(t + 1) - 1);
            // q (t q^(t+1) - (t+1) q^t + 1)
            CHECK(g1.numerator_at(Q, t) == Q * (T * qp(t + 1) - (T + 1) * qp(t) + 1));
            // t^2 q^(t+3) - (2t^2 + 2t - 1) q^(t+2) + (t+1)^2 q^(t+1) - q^2 - q
            CHECK(g2.numerator_at(Q, t) ==
                  T * T * qp(t + 3) - (2 * T * T + 2 * T - 1) * qp(t + 2) + (T + 1) * (T + 1) * qp(t + 1) - Q * Q - Q);
        }
}

TEST_CASE("G1 with a trailing +1 in place of +q is wrong at t = 0") {
    for (long q = 2; q <= 7; ++q) {
        Nat Q(q);
        Nat plus_one = 0 * pow_nat(Q, 2) - 1 * Q + 1;
        CHECK(plus_one != 0);
        CHECK(gen_G_formula(1).numerator_at(Q, 0) == 0);
    }
}

TEST_CASE("products of G sums equal box sums") {
    for (unsigned k = 1; k <= 3; ++k)
        for (unsigned long t = 2; t <= 4; ++t)
            for (unsigned g = 0; g < 27; ++g) {
                std::vector<unsigned> gam{g % 3, g / 3 % 3, g / 9 % 3};
                gam.resize(k);
                if (k < 3 && g >= 9) continue;
                std::vector<Nat> base{2, 3, 5};
                std::vector<unsigned long> mult{1, 0, 2};
                unsigned long w = 3;
                Nat prod = 1;
                for (unsigned i = 0; i < k; ++i) {
                    unsigned long ti = pow_nat(Nat(t), i).get_ui();
                    prod *= geom_sum(gam[i], pow_nat(base[i], mult[i]) * pow2(2 * w * ti), t - 1);
                }
                Nat brute = box_sum(k, t, w, [&](const std::vector<unsigned long>& a) {
                    Nat f = 1;
                    for (unsigned i = 0; i < k; ++i) f *= pow_nat(Nat(a[i]), gam[i]) * pow_nat(base[i], mult[i] * a[i]);
                    return f;
                });
                CHECK(prod == brute);
            }
}

TEST_CASE("C block") {
    for (unsigned long w = 1; w <= 6; ++w)
        for (unsigned k = 1; k <= 2; ++k) {
            unsigned long t = 3;
            Nat want = pow2(2 * w * pow_nat(Nat(t), k).get_ui()) - 1;
            CHECK(ev(c_block(cnst(0), k, cnst(t), cnst(w))) == want);
        }
    // eps = n^2, k = 2, t = n+1, w = n+4 at n = 1
    Term n = var(0);
    Term cb = c_block(pow(n, cnst(2)), 2, n + cnst(1), n + cnst(4));
    auto brute = [](unsigned k, unsigned long t, unsigned long w, const Nat& eps) {
        return box_sum(k, t, w, [&](const std::vector<unsigned long>&) { return Nat((pow2(w) - 1) * (pow2(w) - eps + 1)); });
    };
    auto rep = run(cb, {1});
    CHECK(rep.result == brute(2, 2, 5, 1));
    CHECK(rep.assertions_ok());
    CHECK(ev(c_block(cnst(1), 3, cnst(3), cnst(6))) == brute(3, 3, 6, 1));
    CHECK(c_block_value(1, 3, 3, 6) == brute(3, 3, 6, 1));
}

TEST_CASE("A block") {
    BlockBuilder b(2, cnst(2), cnst(5));
    auto zero = b.a_block(false, cnst(0), {1, 1}, {{cnst(2), cnst(0)}, {cnst(2), cnst(0)}});
    CHECK(ev(zero.magnitude) == 0);

    // coefficient -2n at n = 1 with gammas (1,1): the block is +(2^w-1) 2n sum a1 a2 2^(2wv)
    auto blk = b.a_block(true, cnst(2), {1, 1}, {{cnst(2), cnst(0)}, {cnst(2), cnst(0)}});
    CHECK_FALSE(blk.negative);
    Nat brute = box_sum(2, 2, 5, [](const std::vector<unsigned long>& a) { return Nat(31 * 2 * a[0] * a[1]); });
    CHECK(ev(blk.magnitude) == brute);
    CHECK(a_block_value(-2, {1, 1}, {2, 2}, {0, 0}, 2, 2, 5) == brute);

    // the base-code block A(a, U, B, V, k, t, w) on the phi vectors at n = 2, t = 3, w = 7
    auto phi_blk = a_block(true, cnst(4), {1, 1, 1}, {{cnst(2), cnst(0)}, {cnst(2), cnst(0)}, {cnst(2), cnst(0)}}, 3,
                           cnst(3), cnst(7));
    Nat bphi = box_sum(3, 3, 7, [](const std::vector<unsigned long>& a) { return Nat(127 * 4 * a[0] * a[1] * a[2]); });
    CHECK(ev(phi_blk.magnitude) == bphi);
    CHECK(a_block_value(-4, {1, 1, 1}, {2, 2, 2}, {0, 0, 0}, 3, 3, 7) == bphi);

    // exponential factors: b^(beta x)
    auto ex = a_block(false, cnst(3), {0, 2}, {{cnst(3), cnst(2)}, {cnst(5), cnst(1)}}, 2, cnst(3), cnst(4));
    CHECK(ex.negative);
    Nat bex = box_sum(2, 3, 4, [](const std::vector<unsigned long>& a) {
        return Nat(15 * 3 * pow_nat(Nat(3), 2 * a[0]) * a[1] * a[1] * pow_nat(Nat(5), a[1]));
    });
    CHECK(ev(ex.magnitude) == bex);
}

TEST_CASE("primitive closed forms") {
    for (unsigned long x = 0; x <= 30; ++x)
        for (unsigned long y = 0; y <= 30; ++y) {
            std::vector<Nat> b{x, y};
            CHECK(ev(product_term(var(0), var(1)), b) == x * y);
            CHECK(ev(square_product_term(var(0), var(1)), b) == x * y);
            CHECK(ev(mod_term(var(0), var(1)), b) == (y == 0 ? x : x % y));
            CHECK(ev(max_term(var(0), var(1)), b) == std::max(x, y));
        }
    CHECK(ev(pow_ident_term(cnst(3), cnst(4))) == 81);
    for (unsigned long n = 0; n <= 8; ++n)
        for (unsigned long m = 0; m <= 8; ++m) CHECK(ev(pow_ident_term(cnst(n), cnst(m))) == pow_nat(Nat(n), m));
    CHECK(ev(gcd_arith_term(cnst(6), cnst(4))) == 2);
    for (unsigned long m = 1; m <= 12; ++m)
        for (unsigned long n = 1; n <= 12; ++n) CHECK(ev(gcd_arith_term(cnst(m), cnst(n))) == gcd_nat(m, n));
    CHECK(ev(central_binomial_term(cnst(1))) == 2);
    CHECK(ev(central_binomial_term(cnst(2))) == 6);
    for (unsigned long n = 1; n <= 10; ++n) CHECK(ev(central_binomial_term(cnst(n))) == pascal(2 * n, n));
}
