#include "fdb/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "fdb/chain_rule.hpp"
#include "fdb/free_algebra.hpp"
#include "fdb/function_spec.hpp"
#include "fdb/germ_algebra.hpp"
#include "fdb/multilinear.hpp"
#include "fdb/partitions.hpp"
#include "fdb/prng.hpp"
#include "fdb/strict_diff.hpp"

namespace fdb {

namespace {

class Stopwatch {
public:
    explicit Stopwatch(RunReport& rep) : rep_(rep), start_(clock::now()) {}
    ~Stopwatch() {
        rep_.wall_ms =
            std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    RunReport& rep_;
    clock::time_point start_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

Polynomial random_polynomial(SplitMix64& rng, int in_dim, int out_dim, int max_deg) {
    Polynomial p;
    p.in_dim = in_dim;
    p.out_dim = out_dim;
    for (int j = 0; j < out_dim; ++j) {
        int terms = static_cast<int>(rng.range(1, 3));
        for (int t = 0; t < terms; ++t) {
            PolyTerm term;
            term.out_index = j;
            term.coeff = rng.rational(3, 3);
            term.exponents.assign(in_dim, 0);
            int budget = static_cast<int>(rng.range(0, max_deg));
            for (int l = 0; l < in_dim && budget > 0; ++l) {
                int e = static_cast<int>(rng.range(0, budget));
                term.exponents[l] = e;
                budget -= e;
            }
            p.terms.push_back(std::move(term));
        }
    }
    return p;
}

std::vector<Rat> random_point(SplitMix64& rng, int dim) {
    std::vector<Rat> x;
    for (int i = 0; i < dim; ++i) x.push_back(rng.rational(2, 3));
    return x;
}

TruncatedSeries random_series(SplitMix64& rng, int vars, int cap, int max_deg,
                              bool constant_free = false) {
    TruncatedSeries s(vars, cap);
    int terms = static_cast<int>(rng.range(1, 4));
    for (int t = 0; t < terms; ++t) {
        std::vector<int> e(vars, 0);
        int lo = constant_free ? 1 : 0;
        int budget = static_cast<int>(rng.range(lo, max_deg));
        for (int l = 0; l < vars && budget > 0; ++l) {
            int d = static_cast<int>(rng.range(0, budget));
            e[l] = d;
            budget -= d;
        }
        if (constant_free && std::all_of(e.begin(), e.end(), [](int v) { return v == 0; }))
            e[static_cast<int>(rng.below(vars))] = 1;
        s.add_coeff(e, rng.rational(3, 2));
    }
    return s;
}

PrimitiveVector random_primitive(SplitMix64& rng, int vars) {
    PrimitiveVector v;
    for (int i = 0; i < vars; ++i) v.coords.push_back(Rat(rng.range(-2, 2)));
    bool zero = std::all_of(v.coords.begin(), v.coords.end(),
                            [](const Rat& c) { return c == 0; });
    if (zero) v.coords[0] = 1;
    return v;
}

template <class S>
bool tower_equal(const DerivativeTower<S>& a, const DerivativeTower<S>& b) {
    if (a.in_dim != b.in_dim || a.out_dim != b.out_dim) return false;
    if (a.base_point != b.base_point || a.value != b.value) return false;
    if (a.order() != b.order()) return false;
    for (int k = 0; k < a.order(); ++k)
        if (a.derivs[k].coeffs != b.derivs[k].coeffs) return false;
    return true;
}

}  // namespace

RunReport check_partition_bell() {
    RunReport rep;
    rep.suite = "partition-bell";
    Stopwatch sw(rep);

    const long long expected[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (int n = 0; n <= 8; ++n) {
        ++rep.cases;
        long long count = 0;
        PartitionStream stream(n);
        while (auto p = stream.next()) {
            ++count;
            if (n <= 6 && !p->valid())
                rep.fail("partition-valid n=" + std::to_string(n), "canonical partition",
                         p->to_string());
        }
        Int b = bell(n);
        if (count != expected[n] || b != expected[n])
            rep.fail("n=" + std::to_string(n), std::to_string(expected[n]),
                     "count=" + std::to_string(count) + " bell=" + b.str());
    }
    ++rep.cases;
    // stable failure text: measured times stay out of the serialized report
    if (sw.ms() > 5000.0) rep.fail("runtime", "< 5000 ms", "exceeded");
    return rep;
}

RunReport check_lemma2() {
    RunReport rep;
    rep.suite = "lemma2";
    Stopwatch sw(rep);

    for (int n = 0; n <= 4; ++n) {
        ++rep.cases;
        double before = sw.ms();
        if (!lemma2_verify(n))
            rep.fail("n=" + std::to_string(n), "lhs == rhs", "mismatch");
        if (n == 4) {
            ++rep.cases;
            double elapsed = sw.ms() - before;
            if (elapsed > 60000.0) rep.fail("runtime n=4", "< 60000 ms", "exceeded");
        }
    }
    return rep;
}

RunReport check_exact_oracle(std::uint64_t seed) {
    RunReport rep;
    rep.suite = "exact-oracle";
    Stopwatch sw(rep);
    SplitMix64 rng(seed);

    for (int trial = 0; trial < 50; ++trial) {
        ++rep.cases;
        const std::string id = "pair-" + std::to_string(trial);
        int p = static_cast<int>(rng.range(1, 3));
        int q = static_cast<int>(rng.range(1, 3));
        int r = static_cast<int>(rng.range(1, 3));
        int N = static_cast<int>(rng.range(1, 5));

        Polynomial f = random_polynomial(rng, p, q, 3);
        Polynomial g = random_polynomial(rng, q, r, 3);
        std::vector<Rat> x = random_point(rng, p);
        std::vector<Rat> fx = f.eval_at(x);

        auto tower_f = tower_polynomial(f, x, N);
        auto tower_g = tower_polynomial(g, fx, N);
        auto composite = compose_towers(tower_g, tower_f, N);

        GermMap germ_f = polynomial_germ(f, x, N);
        GermMap germ_g = polynomial_germ(g, fx, N);
        std::vector<TruncatedSeries> comp_series;
        for (int j = 0; j < r; ++j)
            comp_series.push_back(substitute(germ_g.components[j], germ_f));

        bool bad = false;
        for (int k = 1; k <= N && !bad; ++k) {
            for_each_multi_index(p, k, [&](const MultiIndex& mi) {
                if (bad) return;
                std::vector<PrimitiveVector> vs;
                for (int i : mi.idx) {
                    PrimitiveVector e;
                    e.coords.assign(p, Rat(0));
                    e.coords[i] = 1;
                    vs.push_back(std::move(e));
                }
                std::vector<Rat> got = composite.derivs[k - 1].coeff(mi);
                for (int j = 0; j < r; ++j) {
                    Rat want = derivative_functional(vs, comp_series[j]);
                    if (got[j] != want) {
                        rep.fail(id + " k=" + std::to_string(k), rat_to_string(want),
                                 rat_to_string(got[j]));
                        bad = true;
                        return;
                    }
                }
            });
        }
    }
    return rep;
}

namespace {

// fixed numeric suite: composites over the exp/sin/polynomial vocabulary
struct NumericCase {
    std::string name;
    FunctionSpec inner, outer;
    std::vector<double> x;
};

FunctionSpec spec_scalar(FunctionSpec::Kind k) {
    FunctionSpec s;
    s.kind = k;
    return s;
}

FunctionSpec spec_poly(int in, int out, std::vector<PolyTerm> terms) {
    FunctionSpec s;
    s.kind = FunctionSpec::Kind::polynomial;
    s.poly.in_dim = in;
    s.poly.out_dim = out;
    s.poly.terms = std::move(terms);
    s.poly.check();
    return s;
}

FunctionSpec spec_linear(std::vector<std::vector<Rat>> m) {
    FunctionSpec s;
    s.kind = FunctionSpec::Kind::linear;
    s.matrix = std::move(m);
    return s;
}

std::vector<NumericCase> numeric_suite() {
    using K = FunctionSpec::Kind;
    std::vector<NumericCase> cases;
    auto add = [&](std::string name, FunctionSpec inner, FunctionSpec outer,
                   std::vector<double> x) {
        NumericCase c;
        c.name = std::move(name);
        c.inner = std::move(inner);
        c.outer = std::move(outer);
        c.x = std::move(x);
        cases.push_back(std::move(c));
    };

    add("exp.exp", spec_scalar(K::exp_fn), spec_scalar(K::exp_fn), {0.0});
    add("sin.exp", spec_scalar(K::exp_fn), spec_scalar(K::sin_fn), {0.3});
    add("exp.sin", spec_scalar(K::sin_fn), spec_scalar(K::exp_fn), {0.5});
    add("cubic.sin", spec_scalar(K::sin_fn),
        spec_poly(1, 1, {{Rat(1), {3}, 0}, {Rat(1), {1}, 0}}), {0.7});
    add("sin.quadratic",
        spec_poly(1, 1, {{Rat(1), {2}, 0}, {Rat(1, 2), {1}, 0}}),
        spec_scalar(K::sin_fn), {0.4});
    add("product.square-id",
        spec_poly(1, 2, {{Rat(1), {2}, 0}, {Rat(1), {1}, 1}}),
        spec_poly(2, 1, {{Rat(1), {1, 1}, 0}}), {1.0});
    add("poly22.linear22",
        spec_linear({{Rat(1), Rat(1, 2)}, {Rat(-1, 3), Rat(1)}}),
        spec_poly(2, 2, {{Rat(1), {1, 1}, 0}, {Rat(1), {3, 0}, 1}, {Rat(-1), {0, 1}, 1}}),
        {0.3, -0.2});
    add("poly31.linear33",
        spec_linear({{Rat(1), Rat(0), Rat(1, 2)},
                     {Rat(0), Rat(1), Rat(-1, 3)},
                     {Rat(1, 4), Rat(0), Rat(1)}}),
        spec_poly(3, 1, {{Rat(1), {1, 1, 1}, 0}, {Rat(1), {2, 0, 0}, 0}, {Rat(1), {0, 1, 0}, 0}}),
        {0.1, 0.2, -0.3});
    add("exp.poly21", spec_poly(2, 1, {{Rat(1), {2, 0}, 0}, {Rat(1), {0, 1}, 0}}),
        spec_scalar(K::exp_fn), {0.2, 0.1});
    add("poly21.poly22",
        spec_poly(2, 2, {{Rat(1), {2, 0}, 0}, {Rat(1), {0, 1}, 1}, {Rat(1), {1, 0}, 1}}),
        spec_poly(2, 1, {{Rat(3), {1, 1}, 0}, {Rat(1), {0, 2}, 0}}),
        {0.5, -1.0 / 3.0});
    return cases;
}

std::vector<std::vector<double>> case_dirs(int in_dim, int n) {
    std::vector<std::vector<double>> dirs;
    for (int r = 0; r < n; ++r) {
        std::vector<double> d(in_dim, 0.0);
        if (r == 0 || in_dim == 1) {
            d[0] = 1.0;
        } else if (r == 1) {
            double inv = 1.0 / std::sqrt(static_cast<double>(in_dim));
            d.assign(in_dim, inv);
        } else {
            d[in_dim - 1] = 1.0;
        }
        dirs.push_back(std::move(d));
    }
    return dirs;
}

double rel_gap(const std::vector<double>& got, const std::vector<double>& want) {
    double scale = 0.0, gap = 0.0;
    for (std::size_t j = 0; j < want.size(); ++j) scale = std::max(scale, std::abs(want[j]));
    for (std::size_t j = 0; j < want.size(); ++j) gap = std::max(gap, std::abs(got[j] - want[j]));
    return gap / std::max(scale, 1e-12);
}

}  // namespace

RunReport check_numeric_oracle() {
    RunReport rep;
    rep.suite = "numeric-oracle";
    Stopwatch sw(rep);

    for (const auto& c : numeric_suite()) {
        BlackBoxMap fi = black_box(c.inner);
        BlackBoxMap fo = black_box(c.outer);
        BlackBoxMap bb;
        bb.in_dim = fi.in_dim;
        bb.out_dim = fo.out_dim;
        bb.fn = [&fi, &fo](const std::vector<double>& x) { return fo.fn(fi.fn(x)); };

        for (int n = 1; n <= 3; ++n) {
            ++rep.cases;
            auto f_t = build_tower(c.inner, c.x, n);
            auto g_t = build_tower(c.outer, f_t.value, n);
            auto dirs = case_dirs(fi.in_dim, n);
            std::vector<double> chain = compose_eval(g_t, f_t, dirs);

            EstimateOptions plain;
            auto est_p = estimate_derivative(bb, c.x, dirs, plain);
            double gap_p = rel_gap(est_p.value, chain);
            if (gap_p > 5e-2)
                rep.fail(c.name + " n=" + std::to_string(n) + " plain", "rel <= 5e-2",
                         fmt(gap_p));

            EstimateOptions rich;
            rich.richardson = true;
            auto est_r = estimate_derivative(bb, c.x, dirs, rich);
            double gap_r = rel_gap(est_r.value, chain);
            if (gap_r > 1e-4)
                rep.fail(c.name + " n=" + std::to_string(n) + " richardson", "rel <= 1e-4",
                         fmt(gap_r));
        }

        // h-sweep: halving h drives the plain estimate toward the chain value
        ++rep.cases;
        {
            const int n = 2;
            auto f_t = build_tower(c.inner, c.x, n);
            auto g_t = build_tower(c.outer, f_t.value, n);
            auto dirs = case_dirs(fi.in_dim, n);
            std::vector<double> chain = compose_eval(g_t, f_t, dirs);
            std::vector<double> errs;
            for (int j = 0; j < 4; ++j) {
                EstimateOptions opt;
                opt.h = 1e-2 / (1 << j);
                errs.push_back(rel_gap(estimate_derivative(bb, c.x, dirs, opt).value, chain));
            }
            if (!(errs.back() < errs.front()))
                rep.fail(c.name + " h-sweep", "error shrinks as h halves",
                         fmt(errs.front()) + " -> " + fmt(errs.back()));
        }
    }
    return rep;
}

RunReport check_bell_composite() {
    RunReport rep;
    rep.suite = "bell-composite";
    Stopwatch sw(rep);

    const int N = 8;
    auto f = tower_exp(0.0, N);
    auto g = tower_exp(1.0, N);
    auto composite = compose_towers(g, f, N);
    const double e = std::exp(1.0);

    for (int k = 1; k <= N; ++k) {
        ++rep.cases;
        MultiIndex mi{std::vector<int>(k, 0)};
        double got = composite.derivs[k - 1].coeff(mi)[0];
        double want = bell(k).convert_to<double>() * e;
        double rel = std::abs(got - want) / std::abs(want);
        if (rel > 1e-9)
            rep.fail("k=" + std::to_string(k), fmt(want) + " (rel 1e-9)", fmt(got));
    }
    return rep;
}

RunReport check_degeneracy(std::uint64_t seed) {
    RunReport rep;
    rep.suite = "degeneracy-laws";
    Stopwatch sw(rep);
    SplitMix64 rng(seed);

    for (int trial = 0; trial < 10; ++trial) {
        int p = static_cast<int>(rng.range(1, 3));
        int q = static_cast<int>(rng.range(1, 3));
        int r = static_cast<int>(rng.range(1, 3));
        int N = static_cast<int>(rng.range(1, 4));

        // linear outer: (g o f)^(n) = A o f^(n)
        {
            ++rep.cases;
            Polynomial f = random_polynomial(rng, p, q, 3);
            std::vector<Rat> x = random_point(rng, p);
            auto tf = tower_polynomial(f, x, N);
            std::vector<std::vector<Rat>> A(r, std::vector<Rat>(q));
            for (auto& row : A)
                for (auto& v : row) v = rng.rational(3, 2);
            auto tg = tower_linear(A, tf.value, N);
            auto comp = compose_towers(tg, tf, N);
            for (int k = 1; k <= N; ++k) {
                for_each_multi_index(p, k, [&](const MultiIndex& mi) {
                    std::vector<Rat> fv = tf.derivs[k - 1].coeff(mi);
                    std::vector<Rat> want(r, Rat(0));
                    for (int jr = 0; jr < r; ++jr)
                        for (int jq = 0; jq < q; ++jq) want[jr] += A[jr][jq] * fv[jq];
                    if (comp.derivs[k - 1].coeff(mi) != want)
                        rep.fail("linear-outer trial " + std::to_string(trial),
                                 "A . f^(k) coefficientwise", "mismatch at k=" + std::to_string(k));
                });
            }
        }

        // linear inner: (g o B)^(n)(v...) = g^(n)(Bv...)
        {
            ++rep.cases;
            std::vector<std::vector<Rat>> B(q, std::vector<Rat>(p));
            for (auto& row : B)
                for (auto& v : row) v = rng.rational(2, 2);
            std::vector<Rat> x = random_point(rng, p);
            auto tb = tower_linear(B, x, N);
            Polynomial g = random_polynomial(rng, q, r, 3);
            auto tg = tower_polynomial(g, tb.value, N);
            auto comp = compose_towers(tg, tb, N);

            for (int k = 1; k <= N; ++k) {
                for_each_multi_index(p, k, [&](const MultiIndex& mi) {
                    std::vector<std::vector<Rat>> mapped;
                    for (int i : mi.idx) {
                        std::vector<Rat> Bi(q, Rat(0));
                        for (int jq = 0; jq < q; ++jq) Bi[jq] = B[jq][i];
                        mapped.push_back(std::move(Bi));
                    }
                    std::vector<Rat> want = eval(tg.derivs[k - 1], mapped);
                    if (comp.derivs[k - 1].coeff(mi) != want)
                        rep.fail("linear-inner trial " + std::to_string(trial),
                                 "g^(k)(Bv...) coefficientwise",
                                 "mismatch at k=" + std::to_string(k));
                });
            }
        }
    }
    return rep;
}

RunReport check_associativity(std::uint64_t seed) {
    RunReport rep;
    rep.suite = "associativity";
    Stopwatch sw(rep);
    SplitMix64 rng(seed);

    for (int trial = 0; trial < 20; ++trial) {
        ++rep.cases;
        int dims[4];
        for (int& d : dims) d = static_cast<int>(rng.range(1, 3));
        int N = static_cast<int>(rng.range(1, 4));

        Polynomial p1 = random_polynomial(rng, dims[0], dims[1], 2);
        Polynomial p2 = random_polynomial(rng, dims[1], dims[2], 2);
        Polynomial p3 = random_polynomial(rng, dims[2], dims[3], 2);
        std::vector<Rat> x = random_point(rng, dims[0]);

        auto t1 = tower_polynomial(p1, x, N);
        auto t2 = tower_polynomial(p2, t1.value, N);
        auto t3 = tower_polynomial(p3, t2.value, N);

        auto left = compose_towers(t3, compose_towers(t2, t1, N), N);
        auto right = compose_towers(compose_towers(t3, t2, N), t1, N);
        auto chain = compose_chain<Rat>({t1, t2, t3}, N);

        if (!tower_equal(left, right))
            rep.fail("trial " + std::to_string(trial), "(t3.t2).t1 == t3.(t2.t1)", "mismatch");
        else if (!tower_equal(left, chain))
            rep.fail("trial " + std::to_string(trial), "compose_chain == pairwise folds",
                     "mismatch");
    }
    return rep;
}

RunReport series_suite_leibniz(int vars, int cap, int trials, std::uint64_t seed) {
    RunReport rep;
    rep.suite = "leibniz";
    Stopwatch sw(rep);
    SplitMix64 rng(seed);

    for (int trial = 0; trial < trials; ++trial) {
        ++rep.cases;
        int v = static_cast<int>(rng.range(1, vars));
        int c = static_cast<int>(rng.range(3, cap));
        int k = static_cast<int>(rng.range(0, 3));
        TruncatedSeries F = random_series(rng, v, c, 3);
        TruncatedSeries G = random_series(rng, v, c, 3);
        std::vector<PrimitiveVector> vs;
        for (int i = 0; i < k; ++i) vs.push_back(random_primitive(rng, v));
        if (!leibniz_check(vs, F, G))
            rep.fail("trial " + std::to_string(trial), "subset expansion equals (*vs)(FG)",
                     "F=" + F.to_string() + " G=" + G.to_string());
    }
    return rep;
}

RunReport series_suite_split(int vars, int cap, int trials, std::uint64_t seed) {
    RunReport rep;
    rep.suite = "split";
    Stopwatch sw(rep);
    SplitMix64 rng(seed);

    for (int trial = 0; trial < trials; ++trial) {
        ++rep.cases;
        int v = static_cast<int>(rng.range(1, vars));
        int c = static_cast<int>(rng.range(3, cap));
        int j = static_cast<int>(rng.range(1, 3));
        int k = static_cast<int>(rng.range(0, 3));
        std::vector<TruncatedSeries> factors;
        for (int r = 0; r < j; ++r) factors.push_back(random_series(rng, v, c, 2));
        std::vector<PrimitiveVector> vs;
        for (int i = 0; i < k; ++i) vs.push_back(random_primitive(rng, v));
        if (!multifactor_split_check(vs, factors))
            rep.fail("trial " + std::to_string(trial),
                     "ordered-decomposition expansion equals (*vs)(prod F_r)",
                     "j=" + std::to_string(j) + " k=" + std::to_string(k));
    }
    return rep;
}

RunReport series_suite_alg7(int vars, int cap, int trials, std::uint64_t seed) {
    RunReport rep;
    rep.suite = "alg7";
    Stopwatch sw(rep);
    SplitMix64 rng(seed);

    for (int trial = 0; trial < trials; ++trial) {
        ++rep.cases;
        int n = static_cast<int>(rng.range(1, vars));
        int m = static_cast<int>(rng.range(1, vars));
        int c = static_cast<int>(rng.range(3, cap));
        int k = static_cast<int>(rng.range(1, 3));

        GermMap phi;
        phi.source_vars = n;
        phi.target_vars = m;
        for (int j = 0; j < m; ++j)
            phi.components.push_back(random_series(rng, n, c, 2, /*constant_free=*/true));

        std::vector<PrimitiveVector> vs;
        for (int i = 0; i < k; ++i) vs.push_back(random_primitive(rng, n));

        auto probes = monomial_probes(m, c, k);
        if (!verify_alg7(phi, vs, probes))
            rep.fail("trial " + std::to_string(trial),
                     "pushforward of *vs equals the partition sum",
                     "n=" + std::to_string(n) + " m=" + std::to_string(m) +
                         " k=" + std::to_string(k));
    }
    return rep;
}

RunReport check_functional_calculus(std::uint64_t seed) {
    RunReport rep;
    rep.suite = "functional-calculus";
    Stopwatch sw(rep);

    for (auto* sub : {&series_suite_leibniz, &series_suite_split, &series_suite_alg7}) {
        RunReport r = (*sub)(3, 6, 100, seed);
        rep.cases += r.cases;
        for (auto& f : r.failures) {
            f.case_id = r.suite + ": " + f.case_id;
            rep.failures.push_back(std::move(f));
        }
    }
    return rep;
}

RunReport check_lemma1() {
    RunReport rep;
    rep.suite = "lemma1";
    Stopwatch sw(rep);

    ++rep.cases;
    if (!alternating_subset_identity_ok(10))
        rep.fail("coefficient identity", "0 for all |K| <= 10", "nonzero");

    auto one_d = [](double (*f)(double)) {
        BlackBoxMap bb;
        bb.in_dim = bb.out_dim = 1;
        bb.fn = [f](const std::vector<double>& x) { return std::vector<double>{f(x[0])}; };
        return bb;
    };
    struct DecayCase {
        std::string name;
        BlackBoxMap f;
        double x;
        int declared, m;
    };
    std::vector<DecayCase> cases;
    cases.push_back({"quadratic m=3", one_d(+[](double x) { return x * x + x; }), 0.5, 2, 3});
    cases.push_back({"exp m=3", one_d(+[](double x) { return std::exp(x); }), 0.0, 2, 3});
    cases.push_back({"sin m=2", one_d(+[](double x) { return std::sin(x); }), 0.3, 1, 2});
    cases.push_back({"exp m=4", one_d(+[](double x) { return std::exp(x); }), 0.0, 3, 4});

    for (auto& c : cases) {
        ++rep.cases;
        std::vector<std::vector<double>> dirs(c.m, std::vector<double>{1.0});
        auto r = lemma1_check(c.f, {c.x}, c.declared, c.m, dirs, 0.1);
        if (!r.pass)
            rep.fail(c.name, "slope > n + 0.5 (or exact zero)",
                     r.exact_zero ? "exact zero but flagged" : "slope=" + fmt(r.slope));
        // the degree-n polynomial case must vanish outright
        if (c.name == "quadratic m=3" && !r.exact_zero)
            rep.fail(c.name, "difference sums vanish to rounding", "slope path taken");
    }
    return rep;
}

std::vector<RunReport> run_all(std::uint64_t seed) {
    std::vector<RunReport> reports;
    reports.push_back(check_partition_bell());
    reports.push_back(check_lemma2());
    reports.push_back(check_exact_oracle(seed));
    reports.push_back(check_numeric_oracle());
    reports.push_back(check_bell_composite());
    reports.push_back(check_degeneracy(seed));
    reports.push_back(check_associativity(seed));
    reports.push_back(check_functional_calculus(seed));
    reports.push_back(check_lemma1());
    return reports;
}

std::string reports_to_json(const std::vector<RunReport>& reports) {
    nlohmann::ordered_json j;
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json rj;
        rj["suite"] = r.suite;
        rj["cases"] = r.cases;
        rj["failures"] = nlohmann::ordered_json::array();
        for (const auto& f : r.failures) {
            nlohmann::ordered_json fj;
            fj["case"] = f.case_id;
            fj["expected"] = f.expected;
            fj["actual"] = f.actual;
            rj["failures"].push_back(std::move(fj));
        }
        j["suites"].push_back(std::move(rj));
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const RunReport& r) {
    std::ostringstream os;
    os << (r.ok() ? "PASS" : "FAIL") << "  " << r.suite << ": " << r.cases << " cases, "
       << r.failures.size() << " failures (" << r.wall_ms << " ms)\n";
    for (const auto& f : r.failures)
        os << "  - " << f.case_id << ": expected " << f.expected << ", got " << f.actual
           << "\n";
    return os.str();
}

}  // namespace fdb
