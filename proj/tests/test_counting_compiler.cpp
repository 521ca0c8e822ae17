#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "arithterm/arithterm.hpp"

using namespace arithterm;

namespace {

std::string shape(const ExpMonomial& m) {
    std::string s;
    for (auto g : m.gammas) s += std::to_string(g) + ",";
    for (const auto& f : m.factors) s += factor_key(f) + ";";
    return s;
}

std::set<std::string> shapes(const ExpPolynomial& p) {
    std::set<std::string> out;
    for (const auto& m : p.monomials) out.insert(shape(m));
    return out;
}

std::vector<std::uint64_t> random_point(std::mt19937& rng, unsigned k, std::uint64_t hi) {
    std::vector<std::uint64_t> x(k);
    for (auto& v : x) v = std::uniform_int_distribution<std::uint64_t>(0, hi)(rng);
    return x;
}

std::vector<Nat> as_nat(const std::vector<std::uint64_t>& x) {
    std::vector<Nat> out;
    for (auto v : x) out.push_back(Nat(static_cast<unsigned long>(v)));
    return out;
}

// zeros of the system in prod [0, bounds_i), by direct evaluation of the squares
std::vector<std::vector<std::uint64_t>> zeros_of(const EquationSystem& sys, const std::vector<Nat>& bindings,
                                                 const std::vector<std::uint64_t>& bounds) {
    std::vector<std::vector<std::uint64_t>> out;
    BoundPoly bp = bind_poly(square_expand(sys), bindings);
    for_each_zero(bp, bounds, kDefaultEnumerationBudget, [&](const std::vector<std::uint64_t>& x) { out.push_back(x); });
    return out;
}

}  // namespace

TEST_CASE("square expansion of the divisor system") {
    auto p = square_expand(systems::tau());
    CHECK(p.k == 2);
    for (unsigned long n = 0; n <= 6; ++n) CHECK(eval_at(p.epsilon, {n}) == n * n);
    REQUIRE(p.monomials.size() == 2);
    const auto& a = p.monomials[0];
    const auto& b = p.monomials[1];
    CHECK(a.negative);
    CHECK(a.gammas == std::vector<unsigned>{1, 1});
    CHECK(eval_at(a.coeff, {5}) == 10);
    CHECK_FALSE(b.negative);
    CHECK(b.gammas == std::vector<unsigned>{2, 2});
    CHECK(eval_at(b.coeff, {5}) == 1);

    EquationSystem empty;
    empty.k = 2;
    auto e = square_expand(empty);
    CHECK(e.monomials.empty());
    CHECK(eval_at(e.epsilon, {}) == 0);
}

TEST_CASE("the inverse system has thirteen groups") {
    auto p = square_expand(systems::inv());
    CHECK(p.monomials.size() == 12);
    CHECK(shapes(p).size() == 12);
    for (unsigned long m = 1; m <= 4; ++m)
        for (unsigned long n = 2; n <= 5; ++n) CHECK(eval_at(p.epsilon, {m, n}) == 2);
}

TEST_CASE("expansion equals the sum of squares pointwise") {
    std::mt19937 rng(99);
    struct Case {
        EquationSystem sys;
        std::vector<Nat> bindings;
    };
    std::vector<Case> cases{{systems::tau(), {6}},        {systems::sigma(), {7}},       {systems::phi(), {9}},
                            {systems::inv(), {3, 7}},     {systems::sqrt(), {10}},       {systems::log(), {3, 20}},
                            {systems::ord(), {2, 5, 4}},  {systems::dlog(), {3, 3, 4, 2}}, {systems::root(3), {9}},
                            {systems::root_uniform(), {2, 3}}};
    for (const auto& c : cases) {
        BoundPoly bp = bind_poly(square_expand(c.sys), c.bindings);
        for (int i = 0; i < 200; ++i) {
            auto x = random_point(rng, c.sys.k, 6);
            CHECK(bp.eval(x) == eval_system(c.sys, c.bindings, as_nat(x)));
        }
    }
}

TEST_CASE("the seven-variable root system matches its 32-term expansion") {
    auto sys = systems::root_uniform();
    auto p = square_expand(sys);
    CHECK(shapes(p).size() == 31);
    std::mt19937 rng(5);
    for (int i = 0; i < 300; ++i) {
        Nat m = std::uniform_int_distribution<int>(2, 4)(rng), n = std::uniform_int_distribution<int>(1, 6)(rng);
        auto xs = random_point(rng, 7, 7);
        auto X = as_nat(xs);
        const Nat &x1 = X[0], &x2 = X[1], &x3 = X[2], &x4 = X[3], &x5 = X[4], &x6 = X[5], &x7 = X[6];
        unsigned long e1 = xs[0], e2 = xs[1];
        Nat p1 = pow2(e1 + 1), p2 = pow2(e2 + 1);
        Nat table = 2 + n * n - 2 * m * x1 * x2 + (m * m + 1) * x1 * x1 - x4 * p1 - 2 * x1 - 2 * (m + 1) * x1 * x7 +
                    x2 * x2 - x5 * p1 + 2 * x5 + 2 * x4 * x5 + 3 * x4 * x4 - x7 * p1 + 2 * (1 - n) * x4 +
                    2 * x4 * x6 + x5 * x5 - x4 * p2 - 2 * n * x6 + 2 * x4 * x7 + x6 * x6 + x3 * x4 * p1 +
                    2 * (m + 2) * x7 + 2 * x5 * x7 + (m * m + 2 * m + 2) * x7 * x7 + x3 * x7 * p2 -
                    2 * x3 * x4 * x7 - p1 + pow2(2 * e1) - x3 * x3 * x7 * p1 + x3 * x3 * x7 * x7 +
                    x3 * x3 * pow2(2 * e1) + pow2(2 * e2) - x3 * pow2(e1 + e2 + 1);
        BoundPoly bp = bind_poly(p, {m, n});
        CHECK(bp.eval(xs) == table);
        CHECK(eval_system(sys, {m, n}, X) == table);
    }
}

TEST_CASE("bundled specs match the expanded systems") {
    std::mt19937 rng(11);
    struct Case {
        std::string name;
        EquationSystem sys;
        std::vector<Nat> bindings;
    };
    std::vector<Case> cases{{"tau", systems::tau(), {6}},         {"sigma", systems::sigma(), {7}},
                            {"phi", systems::phi(), {9}},         {"inv", systems::inv(), {3, 7}},
                            {"sqrt", systems::sqrt(), {10}},      {"log", systems::log(), {3, 20}},
                            {"ord", systems::ord(), {2, 5, 4}},   {"dlog", systems::dlog(), {3, 3, 4, 2}},
                            {"root2", systems::root(2), {9}},     {"root3", systems::root(3), {9}}};
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const auto& spec = bundled_spec(c.name);
        REQUIRE(spec.k == c.sys.k);
        BoundPoly a = bind_poly(spec.poly, c.bindings);
        BoundPoly b = bind_poly(square_expand(c.sys), c.bindings);
        for (int i = 0; i < 200; ++i) {
            auto x = random_point(rng, spec.k, 5);
            CHECK(a.eval(x) == b.eval(x));
        }
    }
}

TEST_CASE("gamma reduction of a + b^2 - n") {
    auto [red, vm] = gamma_reduce(systems::sqrt_unreduced());
    CHECK(red.k == 4);
    CHECK(red.eqs.size() == 3);
    CHECK(red.box_names == std::vector<std::string>{"a", "b", "b^1", "b^2"});
    REQUIRE(vm.size() == 4);
    CHECK(vm[3].role == VarInfo::Role::Chain);
    CHECK(vm[3].source == 1);
    CHECK(vm[3].power == 2);
    for (const auto& m : square_expand(red).monomials)
        for (auto g : m.gammas) CHECK(g <= 2);

    auto [same, vm2] = gamma_reduce(systems::tau());
    CHECK(same.k == 2);
    CHECK(same.eqs.size() == 1);
    CHECK(vm2.size() == 2);
}

TEST_CASE("gamma reduction preserves zero counts and lifts uniquely") {
    std::mt19937 rng(2024);
    int trials = 0;
    for (int trial = 0; trial < 120; ++trial) {
        unsigned k = std::uniform_int_distribution<unsigned>(1, 2)(rng);
        std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(2, 5)(rng);
        unsigned hi = std::uniform_int_distribution<unsigned>(0, k - 1)(rng);
        unsigned deg = std::uniform_int_distribution<unsigned>(2, 3)(rng);
        EquationSystem sys;
        sys.k = k;
        for (unsigned i = 0; i < k; ++i) sys.box_names.push_back("x" + std::to_string(i + 1));
        auto b = sys.builder();
        unsigned neqs = std::uniform_int_distribution<unsigned>(1, 2)(rng);
        for (unsigned e = 0; e < neqs; ++e) {
            Lin eq = b.num(Poly(std::uniform_int_distribution<long>(-20, 20)(rng)));
            for (unsigned i = 0; i < k; ++i) {
                unsigned top = i == hi ? deg : 1;
                Lin p = b.num(1);
                for (unsigned d = 1; d <= top; ++d) {
                    p = p * b.x(i);
                    long c = std::uniform_int_distribution<long>(-3, 3)(rng);
                    if (c) eq = eq + b.num(Poly(c)) * p;
                }
            }
            if (k == 2 && std::uniform_int_distribution<int>(0, 1)(rng)) eq = eq - b.x(0) * b.x(1);
            sys.eqs.push_back(eq);
        }
        auto zs = zeros_of(sys, {}, std::vector<std::uint64_t>(k, t));
        auto [red, vm] = gamma_reduce(sys);
        std::vector<std::uint64_t> bounds;
        for (const auto& v : vm) bounds.push_back(v.role == VarInfo::Role::Chain ? pow_nat(Nat(t - 1), v.power).get_ui() + 1 : t);
        auto lifted = zeros_of(red, {}, bounds);
        std::map<std::vector<std::uint64_t>, int> lifts;
        for (const auto& z : lifted) lifts[std::vector<std::uint64_t>(z.begin(), z.begin() + k)]++;
        CHECK(lifted.size() == zs.size());
        for (const auto& z : zs) CHECK(lifts[z] == 1);
        CHECK(lifts.size() == zs.size());
        ++trials;
    }
    CHECK(trials >= 100);
}

TEST_CASE("x^y gadget") {
    auto lift = [](unsigned long a, unsigned long b) {
        std::vector<std::vector<Nat>> sols;
        EquationSystem sys;
        sys.k = 2;
        sys.box_names = {"x1", "x2"};
        auto g = pow_var_eliminate(sys, 0, 1);
        CHECK(sys.k == 7);
        CHECK(sys.eqs.size() == 4);
        unsigned long y2 = a * b + a + 1, y3 = y2 * b;
        // y1 < 2^y2 - a is forced by the last equation; y4, y5 follow from y1
        Nat mod = pow2(y2) - a;
        for (Nat y1 = 0; y1 < pow2(y2); ++y1) {
            Nat y5 = pow2(y2) - a - 1 - y1;
            if (y5 < 0) continue;
            Nat rest = pow2(y3) - y1;
            if (mod == 0 || rest < 0 || rest % mod != 0) continue;
            std::vector<Nat> x(7);
            x[0] = a;
            x[1] = b;
            x[g.y1] = y1;
            x[g.y2] = y2;
            x[g.y3] = y3;
            x[g.y4] = rest / mod;
            x[g.y5] = y5;
            if (eval_system(sys, {}, x) == 0) sols.push_back(x);
        }
        return std::make_pair(sols, g);
    };
    for (unsigned long a = 0; a <= 3; ++a)
        for (unsigned long b = 0; b <= 3; ++b) {
            auto [sols, g] = lift(a, b);
            REQUIRE(sols.size() == 1);
            CHECK(sols[0][g.y1] == pow_nat(Nat(a), b));
        }
    CHECK(lift(2, 3).first[0][lift(2, 3).second.y1] == 8);
    CHECK(lift(0, 0).first[0][lift(0, 0).second.y1] == 1);
}

TEST_CASE("x^y gadget by full enumeration of small boxes") {
    // every zero with y2 <= 14 and the other auxiliaries bounded projects to a unique lift
    EquationSystem sys;
    sys.k = 2;
    sys.box_names = {"x1", "x2"};
    auto g = pow_var_eliminate(sys, 0, 1);
    std::vector<std::uint64_t> bounds(7);
    bounds[0] = bounds[1] = 3;
    bounds[g.y1] = 9;
    bounds[g.y2] = 8;
    bounds[g.y3] = 15;
    bounds[g.y4] = 9;
    bounds[g.y5] = 64;
    auto zs = zeros_of(sys, {}, bounds);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint64_t>> by_base;
    for (const auto& z : zs) {
        auto key = std::make_pair(z[0], z[1]);
        CHECK(by_base.count(key) == 0);
        by_base[key] = z;
        CHECK(pow_nat(Nat(static_cast<unsigned long>(z[0])), z[1]) == static_cast<unsigned long>(z[g.y1]));
    }
    // (0,0) (0,1) (0,2) (1,0) (1,1) (1,2) (2,0) fit these bounds; (2,1) needs y4 = 10
    CHECK(by_base.size() == 7);
}

TEST_CASE("compiled counts agree with enumeration on the divisor spec") {
    const auto& spec = bundled_spec("tau");
    auto cc = compile_count(spec);
    std::uint64_t prev = 0;
    for (unsigned long n = 1; n <= 25; ++n) {
        auto r = cc.evaluate({n});
        CHECK(r.count == oracle::tau(n));
        CHECK(r.count == enumerate_count(spec, {n}));
        CHECK(r.report.assertions_ok());
        CHECK(r.report.peak_bits >= prev);
        prev = r.report.peak_bits;
        // M has about 2 w t^k bits
        Nat m = eval_at(cc.m_term, {n});
        std::uint64_t est = 2 * (n + 4) * (n + 1) * (n + 1);
        CHECK(bit_length(m) + 64 >= est);
        CHECK(bit_length(m) <= est + 64);
    }
    CHECK(enumerate_count(spec, {6}) == 4);
    CHECK(enumerate_count(bundled_spec("sigma"), {6}) == 12);
}

TEST_CASE("compiled terms are deterministic") {
    const auto& spec = bundled_spec("phi");
    auto a = compile_count(spec), b = compile_count(spec);
    CHECK(structurally_equal(a.count_term, b.count_term));
    CHECK(print_term(a.count_term) == print_term(b.count_term));
    CHECK(a.blocks == 1 + spec.poly.monomials.size());
}

TEST_CASE("kernel form of M evaluates to the same value") {
    auto cc = compile_count(bundled_spec("tau"));
    Term km = cc.kernel_m_term(ProductForm::Squares);
    CHECK(is_kernel_only(km));
    CHECK(is_kernel_only(cc.kernel_count_term()));
    for (unsigned long n = 1; n <= 5; ++n) CHECK(eval_at(km, {n}) == eval_at(cc.m_term, {n}));
}

TEST_CASE("a spec without zeros counts zero") {
    CountingSpec spec = bundled_spec("tau");
    spec.poly.epsilon = add(spec.poly.epsilon, cnst(1));
    auto cc = compile_count(spec);
    for (unsigned long n = 1; n <= 6; ++n) {
        CHECK(enumerate_count(spec, {n}) == 0);
        CHECK(cc.evaluate({n}).count == 0);
    }
    CountingSpec big = bundled_spec("tau");
    big.poly.monomials.clear();
    big.poly.epsilon = cnst(1000);
    CHECK(enumerate_count(big, {3}) == 0);
}

TEST_CASE("enumeration budget") {
    CHECK_THROWS_AS(enumerate_count(bundled_spec("tau"), {20000}), EnumerationBudgetExceeded);
    CHECK_THROWS_AS(enumerate_count(bundled_spec("tau"), {20}, 100), EnumerationBudgetExceeded);
}

TEST_CASE("bound validation") {
    auto tau5 = validate_bounds(bundled_spec("tau"), {5});
    CHECK(tau5.exhaustive_run);
    CHECK(tau5.exhaustive_max == 400);
    CHECK(tau5.exhaustive_ok);
    CHECK(tau5.ok());
    auto inv4 = validate_bounds(bundled_spec("inv"), {1, 4});
    CHECK(inv4.exhaustive_max <= 4 * 4 * 4 * 4 + 6 * 4 * 4 + 4 * 4 + 2);
    Nat best = 0;
    for (unsigned long m = 1; m <= 3; ++m) best = std::max(best, validate_bounds(bundled_spec("inv"), {m, 4}).exhaustive_max);
    CHECK(best <= 370);
    CountingSpec zero_w = bundled_spec("tau");
    zero_w.w = cnst(0);
    for (unsigned long n = 1; n <= 5; ++n) {
        auto r = validate_bounds(zero_w, {n});
        CHECK_FALSE(r.majorant_ok);
        CHECK_FALSE(r.ok());
    }
}

TEST_CASE("spec files") {
    const auto& spec = bundled_spec("sigma");
    auto again = parse_spec(spec_to_json(spec).dump());
    CHECK(again.k == spec.k);
    CHECK(again.vars == spec.vars);
    CHECK(print_term(compile_count(again).count_term) == print_term(compile_count(spec).count_term));
    CHECK_THROWS_AS(parse_spec("{"), DomainError);
    CHECK_THROWS_AS(parse_spec(R"({"k": 1})"), DomainError);
    CHECK_THROWS_AS(parse_spec(R"j({"k":1,"vars":["n"],"t":"(var 3)","w":"1","epsilon":"0","monomials":[]})j"),
                    DomainError);
}

TEST_CASE("explicit display of M for the divisor count") {
    auto cc = compile_count(bundled_spec("tau"));
    for (unsigned long n = 1; n <= 10; ++n) {
        mpq_class N(n);
        auto p2 = [](const Nat& e) { return mpq_class(pow2(e.get_ui())); };
        Nat w = n + 4;
        Nat a = 2 * w * (n + 1), b = 2 * w * n, c2 = 2 * w * (n + 1) * (n + 1), d = 2 * w * (n + 1) * n;
        mpq_class first = (p2(w) - N * N + 1) / (p2(w) + 1) * (p2(c2) - 1);
        mpq_class second = p2(2 * w * (n + 2) + 1) * N * (p2(w) - 1) / ((p2(2 * w) - 1) * (p2(2 * w) - 1)) /
                           ((p2(a) - 1) * (p2(a) - 1)) * (p2(a) * N - p2(b) * (N + 1) + 1) *
                           (p2(c2) * N - p2(d) * (N + 1) + 1);
        mpq_class g1 = p2(2 * w * (n + 2)) * N * N - p2(a) * (2 * N * N + 2 * N - 1) + p2(b) * (N + 1) * (N + 1) -
                       p2(2 * w) - 1;
        mpq_class g2 = p2(2 * w * (n + 1) * (n + 2)) * N * N - p2(c2) * (2 * N * N + 2 * N - 1) +
                       p2(d) * (N + 1) * (N + 1) - p2(a) - 1;
        mpq_class den = (p2(2 * w) - 1) * (p2(2 * w) - 1) * (p2(2 * w) - 1) * (p2(a) - 1) * (p2(a) - 1) * (p2(a) - 1);
        mpq_class third = p2(2 * w * (n + 2)) * (p2(w) - 1) / den * g1 * g2;
        mpq_class m = first + second - third;
        m.canonicalize();
        REQUIRE(m.get_den() == 1);
        CHECK(Nat(m.get_num()) == eval_at(cc.m_term, {n}));
    }
}
