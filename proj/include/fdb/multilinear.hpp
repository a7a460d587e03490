#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "fdb/scalar.hpp"

namespace fdb {

// Nondecreasing tuple of input-coordinate indices labelling one basis
// tensor e_{i1} (x) ... (x) e_{ik} of the symmetric power.
struct MultiIndex {
    std::vector<int> idx;

    int arity() const { return static_cast<int>(idx.size()); }

    bool valid(int in_dim) const {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] < 0 || idx[j] >= in_dim) return false;
            if (j && idx[j] < idx[j - 1]) return false;
        }
        return true;
    }

    auto operator<=>(const MultiIndex&) const = default;
};

// Walks every nondecreasing multi-index of the given arity over [0, in_dim).
template <class Fn>
void for_each_multi_index(int in_dim, int arity, Fn&& fn) {
    if (in_dim <= 0 && arity > 0) return;
    std::vector<int> idx(arity, 0);
    while (true) {
        fn(MultiIndex{idx});
        int j = arity - 1;
        while (j >= 0 && idx[j] == in_dim - 1) --j;
        if (j < 0) return;
        int v = idx[j] + 1;
        for (int r = j; r < arity; ++r) idx[r] = v;
    }
}

// Symmetric k-linear map (R^p)^k -> R^q stored sparsely by nondecreasing
// multi-index. Stored values are the honest pairings <T, e_{i1} (x) ... (x) e_{ik}>;
// multiplicities are applied at evaluation time, never folded into the
// coefficients. Missing keys are zero.
template <class S>
struct SymMap {
    int arity = 1;
    int in_dim = 0;
    int out_dim = 0;
    std::map<MultiIndex, std::vector<S>> coeffs;

    void set(MultiIndex mi, std::vector<S> value) {
        if (!mi.valid(in_dim) || mi.arity() != arity)
            throw std::invalid_argument("SymMap::set: bad multi-index");
        if (static_cast<int>(value.size()) != out_dim)
            throw std::invalid_argument("SymMap::set: bad value length");
        bool all_zero = std::all_of(value.begin(), value.end(),
                                    [](const S& s) { return ring_traits<S>::is_zero(s); });
        if (all_zero)
            coeffs.erase(mi);
        else
            coeffs[std::move(mi)] = std::move(value);
    }

    std::vector<S> coeff(const MultiIndex& mi) const {
        auto it = coeffs.find(mi);
        if (it != coeffs.end()) return it->second;
        return std::vector<S>(out_dim, S(0));
    }
};

// Full multilinear expansion: sum over all ordered k-tuples of the product
// of argument components against the matching pairing value. Each unordered
// key is read once; its distinct rearrangements supply the multiplicity.
template <class S>
std::vector<S> eval(const SymMap<S>& T, const std::vector<std::vector<S>>& args) {
    if (static_cast<int>(args.size()) != T.arity)
        throw std::invalid_argument("eval: argument count != arity");
    for (const auto& a : args)
        if (static_cast<int>(a.size()) != T.in_dim)
            throw std::invalid_argument("eval: argument dimension mismatch");

    std::vector<S> out(T.out_dim, S(0));
    const int k = T.arity;
    for (const auto& [mi, value] : T.coeffs) {
        S weight(0);
        std::vector<int> arrangement = mi.idx;  // sorted, i.e. first permutation
        do {
            S prod(1);
            for (int r = 0; r < k; ++r) prod *= args[r][arrangement[r]];
            weight += prod;
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
        for (int j = 0; j < T.out_dim; ++j) out[j] += weight * value[j];
    }
    return out;
}

// Base point, value, and the derivative tensors of orders 1..N of one map
// at one point. Immutable by convention after construction.
template <class S>
struct DerivativeTower {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<S> base_point;
    std::vector<S> value;
    std::vector<SymMap<S>> derivs;  // derivs[k-1] has arity k

    int order() const { return static_cast<int>(derivs.size()); }

    bool valid() const {
        if (static_cast<int>(base_point.size()) != in_dim) return false;
        if (static_cast<int>(value.size()) != out_dim) return false;
        for (int k = 1; k <= order(); ++k) {
            const auto& d = derivs[k - 1];
            if (d.arity != k || d.in_dim != in_dim || d.out_dim != out_dim) return false;
            for (const auto& [mi, v] : d.coeffs)
                if (!mi.valid(in_dim) || mi.arity() != k ||
                    static_cast<int>(v.size()) != out_dim)
                    return false;
        }
        return true;
    }
};

// ---- elementary towers ----------------------------------------------------

// One term of a polynomial map R^p -> R^q: coeff * prod_l x_l^{e_l} feeding
// output component out_index.
struct PolyTerm {
    Rat coeff;
    std::vector<int> exponents;
    int out_index = 0;
};

struct Polynomial {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<PolyTerm> terms;

    void check() const {
        if (in_dim < 1 || out_dim < 1)
            throw std::invalid_argument("polynomial: dimensions must be positive");
        for (const auto& t : terms) {
            if (static_cast<int>(t.exponents.size()) != in_dim)
                throw std::invalid_argument("polynomial: exponent vector length != in_dim");
            if (t.out_index < 0 || t.out_index >= out_dim)
                throw std::invalid_argument("polynomial: out_index out of range");
            for (int e : t.exponents)
                if (e < 0) throw std::invalid_argument("polynomial: negative exponent");
        }
    }

    int total_degree() const {
        int deg = 0;
        for (const auto& t : terms) {
            int d = 0;
            for (int e : t.exponents) d += e;
            deg = std::max(deg, d);
        }
        return deg;
    }

    template <class S>
    std::vector<S> eval_at(const std::vector<S>& x) const {
        std::vector<S> out(out_dim, S(0));
        for (const auto& t : terms) {
            S v = ring_traits<S>::from_rat(t.coeff);
            for (int l = 0; l < in_dim; ++l)
                for (int e = 0; e < t.exponents[l]; ++e) v *= x[l];
            out[t.out_index] += v;
        }
        return out;
    }
};

// Exact partial-derivative tensors of a polynomial map: the coefficient at
// (i1,...,ik) is d^k poly / dx_{i1}...dx_{ik} at x, by termwise symbolic
// differentiation of the monomial list.
template <class S>
DerivativeTower<S> tower_polynomial(const Polynomial& poly, const std::vector<S>& x, int N) {
    poly.check();
    if (N < 0) throw std::invalid_argument("tower_polynomial: N must be >= 0");
    if (static_cast<int>(x.size()) != poly.in_dim)
        throw std::invalid_argument("tower_polynomial: base point dimension mismatch");

    DerivativeTower<S> t;
    t.in_dim = poly.in_dim;
    t.out_dim = poly.out_dim;
    t.base_point = x;
    t.value = poly.eval_at(x);

    for (int k = 1; k <= N; ++k) {
        SymMap<S> d;
        d.arity = k;
        d.in_dim = poly.in_dim;
        d.out_dim = poly.out_dim;
        for_each_multi_index(poly.in_dim, k, [&](const MultiIndex& mi) {
            std::vector<int> count(poly.in_dim, 0);
            for (int i : mi.idx) ++count[i];
            std::vector<S> v(poly.out_dim, S(0));
            for (const auto& term : poly.terms) {
                Int falling = 1;
                bool dead = false;
                for (int l = 0; l < poly.in_dim && !dead; ++l) {
                    for (int c = 0; c < count[l]; ++c) {
                        int e = term.exponents[l] - c;
                        if (e <= 0) { dead = true; break; }
                        falling *= e;
                    }
                }
                if (dead) continue;
                S part = ring_traits<S>::from_rat(term.coeff * Rat(falling));
                for (int l = 0; l < poly.in_dim; ++l)
                    for (int e = 0; e < term.exponents[l] - count[l]; ++e) part *= x[l];
                v[term.out_index] += part;
            }
            d.set(mi, std::move(v));
        });
        t.derivs.push_back(std::move(d));
    }
    return t;
}

// Scalar analytic towers (float ring, p = q = 1).
namespace detail {
inline DerivativeTower<double> scalar_tower(double x, int N,
                                            const std::function<double(int)>& kth) {
    if (N < 0) throw std::invalid_argument("scalar tower: N must be >= 0");
    DerivativeTower<double> t;
    t.in_dim = t.out_dim = 1;
    t.base_point = {x};
    t.value = {kth(0)};
    for (int k = 1; k <= N; ++k) {
        SymMap<double> d;
        d.arity = k;
        d.in_dim = d.out_dim = 1;
        d.set(MultiIndex{std::vector<int>(k, 0)}, {kth(k)});
        t.derivs.push_back(std::move(d));
    }
    return t;
}
}  // namespace detail

inline DerivativeTower<double> tower_exp(double x, int N) {
    double ex = std::exp(x);
    return detail::scalar_tower(x, N, [ex](int) { return ex; });
}

inline DerivativeTower<double> tower_sin(double x, int N) {
    double s = std::sin(x), c = std::cos(x);
    return detail::scalar_tower(x, N, [s, c](int k) {
        switch (k & 3) {
            case 0: return s;
            case 1: return c;
            case 2: return -s;
            default: return -c;
        }
    });
}

inline DerivativeTower<double> tower_cos(double x, int N) {
    double s = std::sin(x), c = std::cos(x);
    return detail::scalar_tower(x, N, [s, c](int k) {
        switch (k & 3) {
            case 0: return c;
            case 1: return -s;
            case 2: return -c;
            default: return s;
        }
    });
}

// Linear map A: value Ax, first derivative A, all higher orders zero.
template <class S>
DerivativeTower<S> tower_linear(const std::vector<std::vector<S>>& A,
                                const std::vector<S>& x, int N) {
    if (N < 0) throw std::invalid_argument("tower_linear: N must be >= 0");
    int q = static_cast<int>(A.size());
    if (q == 0) throw std::invalid_argument("tower_linear: empty matrix");
    int p = static_cast<int>(A[0].size());
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != p)
            throw std::invalid_argument("tower_linear: ragged matrix");
    if (static_cast<int>(x.size()) != p)
        throw std::invalid_argument("tower_linear: base point dimension mismatch");

    DerivativeTower<S> t;
    t.in_dim = p;
    t.out_dim = q;
    t.base_point = x;
    t.value.assign(q, S(0));
    for (int j = 0; j < q; ++j)
        for (int l = 0; l < p; ++l) t.value[j] += A[j][l] * x[l];

    for (int k = 1; k <= N; ++k) {
        SymMap<S> d;
        d.arity = k;
        d.in_dim = p;
        d.out_dim = q;
        if (k == 1) {
            for (int i = 0; i < p; ++i) {
                std::vector<S> col(q);
                for (int j = 0; j < q; ++j) col[j] = A[j][i];
                d.set(MultiIndex{{i}}, std::move(col));
            }
        }
        t.derivs.push_back(std::move(d));
    }
    return t;
}

}  // namespace fdb
