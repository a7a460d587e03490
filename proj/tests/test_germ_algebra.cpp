#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdb/germ_algebra.hpp"
#include "fdb/multilinear.hpp"
#include "fdb/prng.hpp"

using namespace fdb;

namespace {

TruncatedSeries from_coeffs(int vars, int cap,
                            std::vector<std::pair<std::vector<int>, Rat>> entries) {
    TruncatedSeries s(vars, cap);
    for (auto& [e, c] : entries) s.add_coeff(e, c);
    return s;
}

// test-side univariate composition oracle on plain coefficient vectors,
// truncated at degree cap: (a o b)(t) mod t^(cap+1)
std::vector<Rat> poly_mul_trunc(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> out(a.size(), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size() && j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Rat> poly_compose_trunc(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> out(a.size(), Rat(0));
    std::vector<Rat> power(a.size(), Rat(0));
    power[0] = 1;  // b^0
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[k] * power[i];
        power = poly_mul_trunc(power, b);
    }
    return out;
}

TruncatedSeries random_series(SplitMix64& rng, int vars, int cap, int deg) {
    TruncatedSeries s(vars, cap);
    for (int t = 0; t < 3; ++t) {
        std::vector<int> e(vars, 0);
        int budget = static_cast<int>(rng.range(0, deg));
        for (int l = 0; l < vars && budget > 0; ++l) {
            e[l] = static_cast<int>(rng.range(0, budget));
            budget -= e[l];
        }
        s.add_coeff(e, rng.rational(3, 2));
    }
    return s;
}

PrimitiveVector prim(std::vector<Rat> coords) { return PrimitiveVector{std::move(coords)}; }

PrimitiveVector basis_prim(int i, int n) {
    std::vector<Rat> c(n, Rat(0));
    c[i] = 1;
    return PrimitiveVector{std::move(c)};
}

}  // namespace

TEST_CASE("multiplication: unit, truncation, difference of squares") {
    auto one = TruncatedSeries::constant(1, 2, 4);
    auto F = from_coeffs(2, 4, {{{1, 0}, Rat(2)}, {{0, 2}, Rat(-1)}, {{0, 0}, Rat(3)}});
    CHECK(series_mul(F, one) == F);

    auto t1_cap1 = TruncatedSeries::variable(0, 1, 1);
    CHECK(series_mul(t1_cap1, t1_cap1).is_zero());

    auto a = from_coeffs(1, 3, {{{0}, Rat(1)}, {{1}, Rat(1)}});
    auto b = from_coeffs(1, 3, {{{0}, Rat(1)}, {{1}, Rat(-1)}});
    auto want = from_coeffs(1, 3, {{{0}, Rat(1)}, {{2}, Rat(-1)}});
    CHECK(series_mul(a, b) == want);
}

TEST_CASE("substitute through the identity germ is the identity") {
    auto F = from_coeffs(2, 5, {{{2, 1}, Rat(7, 3)}, {{1, 0}, Rat(-2)}});
    CHECK(substitute(F, identity_germ(2, 5)) == F);
}

TEST_CASE("substituting T1+T2 into T1^2 expands the binomial") {
    auto F = from_coeffs(1, 3, {{{2}, Rat(1)}});  // T1^2 in one variable
    GermMap phi;
    phi.source_vars = 2;
    phi.target_vars = 1;
    phi.components = {from_coeffs(2, 3, {{{1, 0}, Rat(1)}, {{0, 1}, Rat(1)}})};
    auto got = substitute(F, phi);
    auto want = from_coeffs(2, 3, {{{2, 0}, Rat(1)}, {{1, 1}, Rat(2)}, {{0, 2}, Rat(1)}});
    CHECK(got == want);
}

TEST_CASE("truncated exp composed with e^T - 1 gives Bell-over-factorial coefficients") {
    const int D = 4;
    // exp truncated: sum T^k / k!
    std::vector<Rat> exp_coeffs{Rat(1), Rat(1), Rat(1, 2), Rat(1, 6), Rat(1, 24)};
    TruncatedSeries F(1, D);
    for (int k = 0; k <= D; ++k) F.add_coeff({k}, exp_coeffs[k]);

    // e^T - 1 truncated, constant-free
    std::vector<Rat> em1{Rat(0), Rat(1), Rat(1, 2), Rat(1, 6), Rat(1, 24)};
    GermMap phi;
    phi.source_vars = 1;
    phi.target_vars = 1;
    TruncatedSeries comp(1, D);
    for (int k = 0; k <= D; ++k) comp.add_coeff({k}, em1[k]);
    phi.components = {comp};

    auto got = substitute(F, phi);
    CHECK(got.coeff({0}) == Rat(1));
    CHECK(got.coeff({1}) == Rat(1));
    CHECK(got.coeff({2}) == Rat(1));
    CHECK(got.coeff({3}) == Rat(5, 6));
    CHECK(got.coeff({4}) == Rat(5, 8));

    // independent brute-force composition oracle on plain vectors
    auto oracle = poly_compose_trunc(exp_coeffs, em1);
    for (int k = 0; k <= D; ++k) CHECK(got.coeff({k}) == oracle[k]);
}

TEST_CASE("substitute is a ring homomorphism on random pairs") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        int m = static_cast<int>(rng.range(1, 3));
        int n = static_cast<int>(rng.range(1, 3));
        int cap = static_cast<int>(rng.range(3, 5));
        GermMap phi;
        phi.source_vars = n;
        phi.target_vars = m;
        for (int j = 0; j < m; ++j) {
            auto comp = random_series(rng, n, cap, 2);
            comp.add_coeff(std::vector<int>(n, 0), -comp.constant_term());
            if (comp.is_zero()) comp = TruncatedSeries::variable(0, n, cap);
            phi.components.push_back(std::move(comp));
        }
        auto F = random_series(rng, m, cap, 2);
        auto G = random_series(rng, m, cap, 2);
        CHECK(substitute(series_mul(F, G), phi) ==
              series_mul(substitute(F, phi), substitute(G, phi)));
        CHECK(substitute(series_add(F, G), phi) ==
              series_add(substitute(F, phi), substitute(G, phi)));
    }
}

TEST_CASE("derivative functionals on coordinates and squares") {
    auto T2 = TruncatedSeries::variable(1, 3, 4);
    CHECK(derivative_functional({basis_prim(1, 3)}, T2) == Rat(1));
    CHECK(derivative_functional({basis_prim(0, 3)}, T2) == Rat(0));

    auto T1sq = from_coeffs(1, 4, {{{2}, Rat(1)}});
    CHECK(derivative_functional({basis_prim(0, 1), basis_prim(0, 1)}, T1sq) == Rat(2));
}

TEST_CASE("mixed-basis functionals equal coefficient times multiplicities") {
    SplitMix64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        auto F = random_series(rng, 2, 5, 3);
        // <F^(k)(0), e_{i1} (x) ... (x) e_{ik}> = coeff(m) * prod m_l!
        for (auto idx : std::vector<std::vector<int>>{{0}, {1}, {0, 0}, {0, 1}, {1, 1},
                                                      {0, 0, 1}, {0, 1, 1}}) {
            std::vector<PrimitiveVector> vs;
            std::vector<int> m(2, 0);
            for (int i : idx) {
                vs.push_back(basis_prim(i, 2));
                ++m[i];
            }
            Rat mult = 1;
            for (int l = 0; l < 2; ++l)
                for (int c = 2; c <= m[l]; ++c) mult *= c;
            CHECK(derivative_functional(vs, F) == F.coeff(m) * mult);
        }
    }
}

TEST_CASE("repeated-direction functionals match the univariate restriction oracle") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int cap = 4;
        auto F = random_series(rng, 2, cap, 3);
        PrimitiveVector v = prim({rng.rational(2, 2), rng.rational(2, 2)});

        // restriction F(t v) expanded termwise: coeff of t^k collects
        // c * v1^e1 * v2^e2 over monomials of total degree k
        std::vector<Rat> restricted(cap + 1, Rat(0));
        for (const auto& [e, c] : F.coeffs()) {
            Rat w = c;
            for (int i = 0; i < e[0]; ++i) w *= v.coords[0];
            for (int i = 0; i < e[1]; ++i) w *= v.coords[1];
            restricted[e[0] + e[1]] += w;
        }
        for (int k = 0; k <= cap; ++k) {
            std::vector<PrimitiveVector> vs(k, v);
            Rat kfact = 1;
            for (int i = 2; i <= k; ++i) kfact *= i;
            CHECK(derivative_functional(vs, F) == kfact * restricted[k]);
        }
    }
}

TEST_CASE("derivative functionals are symmetric and multilinear") {
    SplitMix64 rng(37);
    auto F = random_series(rng, 3, 5, 3);
    auto v1 = prim({Rat(1), Rat(-2), Rat(1, 2)});
    auto v2 = prim({Rat(0), Rat(3), Rat(1)});
    auto v3 = prim({Rat(2), Rat(1), Rat(-1)});
    CHECK(derivative_functional({v1, v2, v3}, F) == derivative_functional({v3, v1, v2}, F));
    CHECK(derivative_functional({v1, v2, v3}, F) == derivative_functional({v2, v1, v3}, F));

    Rat a(3, 2), b(-2);
    PrimitiveVector combo;
    for (int i = 0; i < 3; ++i) combo.coords.push_back(a * v1.coords[i] + b * v2.coords[i]);
    CHECK(derivative_functional({combo, v3}, F) ==
          a * derivative_functional({v1, v3}, F) + b * derivative_functional({v2, v3}, F));
}

TEST_CASE("functional order past the cap is a capacity error") {
    SplitMix64 rng(1);
    auto F = random_series(rng, 2, 2, 2);  // cap 2
    std::vector<PrimitiveVector> vs(3, basis_prim(0, 2));
    CHECK_THROWS_AS(derivative_functional(vs, F), capacity_error);
}

TEST_CASE("leibniz identity: product rule, counit case, random order 3") {
    auto F = from_coeffs(2, 6, {{{1, 0}, Rat(2)}, {{0, 2}, Rat(1)}, {{0, 0}, Rat(-1)}});
    auto G = from_coeffs(2, 6, {{{1, 1}, Rat(1)}, {{0, 0}, Rat(4)}});
    CHECK(leibniz_check({basis_prim(0, 2)}, F, G));
    CHECK(leibniz_check({}, F, G));

    SplitMix64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        auto A = random_series(rng, 2, 6, 3);
        auto B = random_series(rng, 2, 6, 3);
        std::vector<PrimitiveVector> vs;
        for (int i = 0; i < 3; ++i)
            vs.push_back(prim({rng.rational(2, 2), rng.rational(2, 2)}));
        CHECK(leibniz_check(vs, A, B));
    }
}

TEST_CASE("multifactor split: single factor, pair reduces to leibniz, triple") {
    SplitMix64 rng(43);
    auto F1 = random_series(rng, 2, 6, 2);
    auto F2 = random_series(rng, 2, 6, 2);
    auto F3 = random_series(rng, 2, 6, 2);
    std::vector<PrimitiveVector> vs{basis_prim(0, 2), basis_prim(1, 2)};

    CHECK(multifactor_split_check(vs, {F1}));
    CHECK(multifactor_split_check(vs, {F1, F2}));
    CHECK(leibniz_check(vs, F1, F2));
    CHECK(multifactor_split_check(vs, {F1, F2, F3}));
}

TEST_CASE("partition identity through the identity and linear germs") {
    const int cap = 4;
    auto vs = std::vector<PrimitiveVector>{prim({Rat(1), Rat(2)}), prim({Rat(-1), Rat(1)})};
    auto probes = monomial_probes(2, cap, 2);
    CHECK(verify_alg7(identity_germ(2, cap), vs, probes));

    // linear germ: components are linear forms; only the all-singletons
    // partition survives
    GermMap lin;
    lin.source_vars = 2;
    lin.target_vars = 2;
    lin.components = {from_coeffs(2, cap, {{{1, 0}, Rat(2)}, {{0, 1}, Rat(1)}}),
                      from_coeffs(2, cap, {{{1, 0}, Rat(-1)}, {{0, 1}, Rat(3)}})};
    CHECK(verify_alg7(lin, vs, probes));
}

TEST_CASE("partition identity on random quadratic germs, order 3") {
    SplitMix64 rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const int cap = 5;
        GermMap phi;
        phi.source_vars = 2;
        phi.target_vars = 2;
        for (int j = 0; j < 2; ++j) {
            auto comp = random_series(rng, 2, cap, 2);
            comp.add_coeff({0, 0}, -comp.constant_term());
            if (comp.is_zero()) comp = TruncatedSeries::variable(j, 2, cap);
            phi.components.push_back(std::move(comp));
        }
        std::vector<PrimitiveVector> vs;
        for (int i = 0; i < 3; ++i)
            vs.push_back(prim({rng.rational(2, 2), rng.rational(2, 2)}));
        CHECK(verify_alg7(phi, vs, monomial_probes(2, cap, 3)));
    }
}

TEST_CASE("multiplication is associative and commutative on stored data") {
    SplitMix64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        auto A = random_series(rng, 2, 5, 3);
        auto B = random_series(rng, 2, 5, 3);
        auto C = random_series(rng, 2, 5, 3);
        CHECK(series_mul(A, B) == series_mul(B, A));
        CHECK(series_mul(series_mul(A, B), C) == series_mul(A, series_mul(B, C)));
        CHECK(series_mul(A, series_add(B, C)) ==
              series_add(series_mul(A, B), series_mul(A, C)));
    }
}

TEST_CASE("truncation coherence: a larger cap reproduces the smaller one") {
    SplitMix64 rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        auto A4 = random_series(rng, 2, 4, 3);
        auto B4 = random_series(rng, 2, 4, 3);
        auto A6 = A4.truncated(6);
        auto B6 = B4.truncated(6);
        CHECK(series_mul(A6, B6).truncated(4) == series_mul(A4, B4));

        // the same holds through substitution
        GermMap phi4;
        phi4.source_vars = 2;
        phi4.target_vars = 2;
        GermMap phi6 = phi4;
        for (int j = 0; j < 2; ++j) {
            auto comp = random_series(rng, 2, 4, 2);
            comp.add_coeff({0, 0}, -comp.constant_term());
            if (comp.is_zero()) comp = TruncatedSeries::variable(j, 2, 4);
            phi6.components.push_back(comp.truncated(6));
            phi4.components.push_back(std::move(comp));
        }
        CHECK(substitute(A6, phi6).truncated(4) == substitute(A4, phi4));
    }
}

TEST_CASE("shape violations are rejected") {
    auto F = TruncatedSeries::variable(0, 2, 3);
    GermMap bad;
    bad.source_vars = 1;
    bad.target_vars = 2;
    bad.components = {TruncatedSeries::constant(1, 1, 3), TruncatedSeries::variable(0, 1, 3)};
    CHECK_THROWS_AS(substitute(F, bad), std::invalid_argument);  // constant term

    auto A = TruncatedSeries::variable(0, 1, 3);
    auto B = TruncatedSeries::variable(0, 2, 3);
    CHECK_THROWS_AS(series_mul(A, B), std::invalid_argument);
    auto C = TruncatedSeries::variable(0, 1, 4);
    CHECK_THROWS_AS(series_mul(A, C), std::invalid_argument);
}
