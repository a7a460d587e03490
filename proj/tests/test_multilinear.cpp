#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdb/multilinear.hpp"
#include "fdb/prng.hpp"

using namespace fdb;

namespace {

// test-side symbolic oracle: differentiate the term list directly
Polynomial poly_partial(const Polynomial& p, int var) {
    Polynomial d;
    d.in_dim = p.in_dim;
    d.out_dim = p.out_dim;
    for (auto term : p.terms) {
        if (term.exponents[var] == 0) continue;
        term.coeff *= term.exponents[var];
        --term.exponents[var];
        d.terms.push_back(std::move(term));
    }
    return d;
}

Rat oracle_partial_at(const Polynomial& p, const std::vector<int>& vars,
                      const std::vector<Rat>& x, int out_index) {
    Polynomial cur = p;
    for (int v : vars) cur = poly_partial(cur, v);
    return cur.eval_at(x)[out_index];
}

SymMap<Rat> random_symmap(SplitMix64& rng, int arity, int in_dim, int out_dim) {
    SymMap<Rat> T;
    T.arity = arity;
    T.in_dim = in_dim;
    T.out_dim = out_dim;
    for_each_multi_index(in_dim, arity, [&](const MultiIndex& mi) {
        std::vector<Rat> v;
        for (int j = 0; j < out_dim; ++j) v.push_back(Rat(rng.range(-4, 4)));
        T.set(mi, std::move(v));
    });
    return T;
}

std::vector<Rat> random_vec(SplitMix64& rng, int dim) {
    std::vector<Rat> v;
    for (int i = 0; i < dim; ++i) v.push_back(rng.rational(3, 2));
    return v;
}

}  // namespace

TEST_CASE("eval of a linear identity map") {
    SymMap<Rat> T;
    T.arity = 1;
    T.in_dim = T.out_dim = 2;
    T.set(MultiIndex{{0}}, {Rat(1), Rat(0)});
    T.set(MultiIndex{{1}}, {Rat(0), Rat(1)});
    CHECK(eval(T, {{Rat(0), Rat(1)}}) == std::vector<Rat>{Rat(0), Rat(1)});
}

TEST_CASE("eval of the x1*x2 Hessian is symmetric in the arguments") {
    SymMap<Rat> T;
    T.arity = 2;
    T.in_dim = 2;
    T.out_dim = 1;
    T.set(MultiIndex{{0, 1}}, {Rat(1)});
    std::vector<Rat> e1{Rat(1), Rat(0)}, e2{Rat(0), Rat(1)};
    CHECK(eval(T, {e1, e2}) == std::vector<Rat>{Rat(1)});
    CHECK(eval(T, {e2, e1}) == std::vector<Rat>{Rat(1)});
}

TEST_CASE("eval is invariant under argument permutation (exact ring)") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int k = static_cast<int>(rng.range(1, 4));
        int p = static_cast<int>(rng.range(1, 3));
        auto T = random_symmap(rng, k, p, 2);
        std::vector<std::vector<Rat>> args;
        for (int i = 0; i < k; ++i) args.push_back(random_vec(rng, p));
        auto base = eval(T, args);
        for (int swaps = 0; swaps < 3; ++swaps) {
            int a = static_cast<int>(rng.below(k)), b = static_cast<int>(rng.below(k));
            std::swap(args[a], args[b]);
            CHECK(eval(T, args) == base);
        }
    }
}

TEST_CASE("eval is multilinear in each slot (exact ring)") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        int k = static_cast<int>(rng.range(1, 3));
        int p = static_cast<int>(rng.range(1, 3));
        auto T = random_symmap(rng, k, p, 1);
        std::vector<std::vector<Rat>> args;
        for (int i = 0; i < k; ++i) args.push_back(random_vec(rng, p));
        int slot = static_cast<int>(rng.below(k));
        Rat a = rng.rational(3, 2), b = rng.rational(3, 2);
        auto u = random_vec(rng, p), w = random_vec(rng, p);

        auto with = [&](const std::vector<Rat>& v) {
            auto copy = args;
            copy[slot] = v;
            return eval(T, copy)[0];
        };
        std::vector<Rat> combo(p);
        for (int i = 0; i < p; ++i) combo[i] = a * u[i] + b * w[i];
        CHECK(with(combo) == a * with(u) + b * with(w));
    }
}

TEST_CASE("float eval permutation invariance within 1e-12 relative") {
    SplitMix64 rng(13);
    SymMap<double> T;
    T.arity = 3;
    T.in_dim = 2;
    T.out_dim = 1;
    for_each_multi_index(2, 3, [&](const MultiIndex& mi) {
        T.set(mi, {static_cast<double>(rng.range(-9, 9)) / 7.0});
    });
    std::vector<std::vector<double>> args{{0.3, -1.2}, {2.0, 0.7}, {-0.5, 1.1}};
    double base = eval(T, args)[0];
    std::swap(args[0], args[2]);
    CHECK(std::abs(eval(T, args)[0] - base) <= 1e-12 * std::abs(base));
}

TEST_CASE("tower of x1*x2 at the origin") {
    Polynomial p;
    p.in_dim = 2;
    p.out_dim = 1;
    p.terms = {{Rat(1), {1, 1}, 0}};
    auto t = tower_polynomial<Rat>(p, {Rat(0), Rat(0)}, 2);
    CHECK(t.value == std::vector<Rat>{Rat(0)});
    CHECK(t.derivs[0].coeffs.empty());
    CHECK(t.derivs[1].coeff(MultiIndex{{0, 1}}) == std::vector<Rat>{Rat(1)});
    CHECK(t.derivs[1].coeff(MultiIndex{{0, 0}}) == std::vector<Rat>{Rat(0)});
    CHECK(t.derivs[1].coeff(MultiIndex{{1, 1}}) == std::vector<Rat>{Rat(0)});
    CHECK(t.valid());
}

TEST_CASE("tower of x^3 at 2 matches the symbolic oracle") {
    Polynomial p;
    p.in_dim = p.out_dim = 1;
    p.terms = {{Rat(1), {3}, 0}};
    auto t = tower_polynomial<Rat>(p, {Rat(2)}, 3);
    CHECK(t.value == std::vector<Rat>{Rat(8)});
    CHECK(t.derivs[0].coeff(MultiIndex{{0}})[0] == oracle_partial_at(p, {0}, {Rat(2)}, 0));
    CHECK(t.derivs[1].coeff(MultiIndex{{0, 0}})[0] ==
          oracle_partial_at(p, {0, 0}, {Rat(2)}, 0));
    CHECK(t.derivs[2].coeff(MultiIndex{{0, 0, 0}})[0] ==
          oracle_partial_at(p, {0, 0, 0}, {Rat(2)}, 0));
    CHECK(t.derivs[0].coeff(MultiIndex{{0}})[0] == 12);
    CHECK(t.derivs[1].coeff(MultiIndex{{0, 0}})[0] == 12);
    CHECK(t.derivs[2].coeff(MultiIndex{{0, 0, 0}})[0] == 6);
}

TEST_CASE("random polynomial towers match the symbolic oracle coefficientwise") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial p;
        p.in_dim = static_cast<int>(rng.range(1, 3));
        p.out_dim = static_cast<int>(rng.range(1, 2));
        for (int j = 0; j < p.out_dim; ++j)
            for (int t = 0; t < 2; ++t) {
                PolyTerm term;
                term.out_index = j;
                term.coeff = rng.rational(3, 2);
                term.exponents.assign(p.in_dim, 0);
                int budget = 3;
                for (int l = 0; l < p.in_dim; ++l) {
                    term.exponents[l] = static_cast<int>(rng.range(0, budget));
                    budget -= term.exponents[l];
                }
                p.terms.push_back(std::move(term));
            }
        std::vector<Rat> x = random_vec(rng, p.in_dim);
        auto tower = tower_polynomial<Rat>(p, x, 3);
        for (int k = 1; k <= 3; ++k)
            for_each_multi_index(p.in_dim, k, [&](const MultiIndex& mi) {
                auto got = tower.derivs[k - 1].coeff(mi);
                for (int j = 0; j < p.out_dim; ++j)
                    CHECK(got[j] == oracle_partial_at(p, mi.idx, x, j));
            });
    }
}

TEST_CASE("tower order 0 carries only the value") {
    Polynomial p;
    p.in_dim = p.out_dim = 1;
    p.terms = {{Rat(5), {2}, 0}};
    auto t = tower_polynomial<Rat>(p, {Rat(3)}, 0);
    CHECK(t.order() == 0);
    CHECK(t.value == std::vector<Rat>{Rat(45)});
}

TEST_CASE("derivative tensors above the polynomial degree vanish") {
    Polynomial p;
    p.in_dim = 2;
    p.out_dim = 1;
    p.terms = {{Rat(2), {1, 1}, 0}, {Rat(-1), {0, 2}, 0}};
    auto t = tower_polynomial<Rat>(p, {Rat(1), Rat(-2)}, 5);
    for (int k = 3; k <= 5; ++k) CHECK(t.derivs[k - 1].coeffs.empty());
}

TEST_CASE("basis-vector round trip recovers stored coefficients") {
    Polynomial p;
    p.in_dim = 2;
    p.out_dim = 1;
    p.terms = {{Rat(3, 2), {2, 1}, 0}, {Rat(-2), {0, 3}, 0}};
    auto t = tower_polynomial<Rat>(p, {Rat(1, 2), Rat(1)}, 3);
    std::vector<std::vector<Rat>> basis{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    for (int k = 1; k <= 3; ++k)
        for_each_multi_index(2, k, [&](const MultiIndex& mi) {
            std::vector<std::vector<Rat>> args;
            for (int i : mi.idx) args.push_back(basis[i]);
            CHECK(eval(t.derivs[k - 1], args) == t.derivs[k - 1].coeff(mi));
        });
}

TEST_CASE("exp tower at 0 and 1") {
    auto t0 = tower_exp(0.0, 4);
    CHECK(t0.value[0] == doctest::Approx(1.0));
    for (int k = 1; k <= 4; ++k)
        CHECK(t0.derivs[k - 1].coeff(MultiIndex{std::vector<int>(k, 0)})[0] ==
              doctest::Approx(1.0));

    auto t1 = tower_exp(1.0, 2);
    const double e = std::exp(1.0);
    CHECK(t1.value[0] == doctest::Approx(e));
    CHECK(t1.derivs[0].coeff(MultiIndex{{0}})[0] == doctest::Approx(e));
    CHECK(t1.derivs[1].coeff(MultiIndex{{0, 0}})[0] == doctest::Approx(e));
}

TEST_CASE("sin tower at 0") {
    auto t = tower_sin(0.0, 3);
    CHECK(t.value[0] == doctest::Approx(0.0));
    CHECK(t.derivs[0].coeff(MultiIndex{{0}})[0] == doctest::Approx(1.0));
    CHECK(t.derivs[1].coeff(MultiIndex{{0, 0}})[0] == doctest::Approx(0.0));
    CHECK(t.derivs[2].coeff(MultiIndex{{0, 0, 0}})[0] == doctest::Approx(-1.0));
}

TEST_CASE("linear towers: identity, zero, and a 2x2 map") {
    std::vector<std::vector<Rat>> id{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    auto t = tower_linear<Rat>(id, {Rat(3), Rat(4)}, 3);
    CHECK(t.value == std::vector<Rat>{Rat(3), Rat(4)});
    CHECK(t.derivs[0].coeff(MultiIndex{{0}}) == std::vector<Rat>{Rat(1), Rat(0)});
    CHECK(t.derivs[1].coeffs.empty());
    CHECK(t.derivs[2].coeffs.empty());

    std::vector<std::vector<Rat>> zero{{Rat(0)}, {Rat(0)}};
    auto tz = tower_linear<Rat>(zero, {Rat(7)}, 2);
    CHECK(tz.value == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(tz.derivs[0].coeffs.empty());

    std::vector<std::vector<Rat>> A{{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
    auto ta = tower_linear<Rat>(A, {Rat(1), Rat(0)}, 2);
    CHECK(ta.value == std::vector<Rat>{Rat(1), Rat(3)});
    CHECK(ta.derivs[1].coeffs.empty());
}

TEST_CASE("dimension mismatches are rejected") {
    SymMap<Rat> T;
    T.arity = 2;
    T.in_dim = 2;
    T.out_dim = 1;
    CHECK_THROWS_AS(eval(T, {{Rat(1), Rat(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(eval(T, {{Rat(1)}, {Rat(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(
        tower_linear<Rat>({{Rat(1), Rat(2)}}, {Rat(1)}, 1), std::invalid_argument);
}
