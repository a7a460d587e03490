#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "fdb/multilinear.hpp"
#include "fdb/partitions.hpp"
#include "fdb/scalar.hpp"

namespace fdb {

struct ComposeOptions {
    // Float-ring base-point compatibility: |g.base_point[j] - f.value[j]| per
    // component. The exact ring demands equality.
    double base_point_tol = 1e-12;
};

struct ComposeStats {
    std::uint64_t partition_terms = 0;
};

namespace detail {

inline void check_base_point(const DerivativeTower<Rat>& g, const DerivativeTower<Rat>& f,
                             const ComposeOptions&) {
    if (g.base_point != f.value)
        throw std::invalid_argument("compose: g.base_point != f.value (exact ring)");
}

inline void check_base_point(const DerivativeTower<double>& g,
                             const DerivativeTower<double>& f, const ComposeOptions& opt) {
    for (std::size_t j = 0; j < f.value.size(); ++j)
        if (std::abs(g.base_point[j] - f.value[j]) > opt.base_point_tol)
            throw std::invalid_argument("compose: base-point mismatch beyond tolerance");
}

}  // namespace detail

// n-th derivative of g(f(.)) applied to the given directions: the sum over
// all partitions pi of the direction index set of
//   < g^(|pi|)(f(x)), (x)_{S in pi} < f^(|S|)(x), (x)_{i in S} dirs_i > >.
// n = 0 returns g.value. Inner blocks repeat across partitions, so inner
// evaluations are memoized per block within one call.
template <class S>
std::vector<S> compose_eval(const DerivativeTower<S>& g, const DerivativeTower<S>& f,
                            const std::vector<std::vector<S>>& dirs,
                            const ComposeOptions& opt = {}, ComposeStats* stats = nullptr) {
    if (f.out_dim != g.in_dim)
        throw std::invalid_argument("compose: f.out_dim != g.in_dim");
    detail::check_base_point(g, f, opt);

    const int n = static_cast<int>(dirs.size());
    if (n > f.order() || n > g.order())
        throw std::invalid_argument("compose: order exceeds a tower's order");
    for (const auto& d : dirs)
        if (static_cast<int>(d.size()) != f.in_dim)
            throw std::invalid_argument("compose: direction dimension mismatch");

    if (n == 0) return g.value;

    std::map<std::uint64_t, std::vector<S>> block_memo;
    auto inner = [&](const std::vector<int>& block) -> const std::vector<S>& {
        std::uint64_t key = 0;
        for (int i : block) key |= std::uint64_t{1} << i;
        auto it = block_memo.find(key);
        if (it != block_memo.end()) return it->second;
        std::vector<std::vector<S>> restricted;
        restricted.reserve(block.size());
        for (int i : block) restricted.push_back(dirs[i]);
        return block_memo.emplace(key, eval(f.derivs[block.size() - 1], restricted))
            .first->second;
    };

    std::vector<S> out(g.out_dim, S(0));
    PartitionStream stream(n);
    while (auto pi = stream.next()) {
        std::vector<std::vector<S>> args;
        args.reserve(pi->blocks.size());
        for (const auto& block : pi->blocks) args.push_back(inner(block));
        std::vector<S> term = eval(g.derivs[pi->blocks.size() - 1], args);
        for (int j = 0; j < g.out_dim; ++j) out[j] += term[j];
        if (stats) ++stats->partition_terms;
    }
    return out;
}

// Tower of g o f at f.base_point: every coefficient of order k <= N is
// compose_eval on the matching basis directions.
template <class S>
DerivativeTower<S> compose_towers(const DerivativeTower<S>& g, const DerivativeTower<S>& f,
                                  int N, const ComposeOptions& opt = {}) {
    if (N < 0) throw std::invalid_argument("compose_towers: N must be >= 0");
    if (N > f.order() || N > g.order())
        throw std::invalid_argument("compose_towers: N exceeds a tower's order");
    if (f.out_dim != g.in_dim)
        throw std::invalid_argument("compose: f.out_dim != g.in_dim");
    detail::check_base_point(g, f, opt);

    DerivativeTower<S> t;
    t.in_dim = f.in_dim;
    t.out_dim = g.out_dim;
    t.base_point = f.base_point;
    t.value = g.value;

    std::vector<std::vector<S>> basis(f.in_dim, std::vector<S>(f.in_dim, S(0)));
    for (int i = 0; i < f.in_dim; ++i) basis[i][i] = S(1);

    for (int k = 1; k <= N; ++k) {
        SymMap<S> d;
        d.arity = k;
        d.in_dim = f.in_dim;
        d.out_dim = g.out_dim;
        for_each_multi_index(f.in_dim, k, [&](const MultiIndex& mi) {
            std::vector<std::vector<S>> dirs;
            dirs.reserve(k);
            for (int i : mi.idx) dirs.push_back(basis[i]);
            d.set(mi, compose_eval(g, f, dirs, opt));
        });
        t.derivs.push_back(std::move(d));
    }
    return t;
}

// Left-to-right fold: towers[0] is applied first. A single tower is returned
// truncated to order N.
template <class S>
DerivativeTower<S> compose_chain(const std::vector<DerivativeTower<S>>& towers, int N,
                                 const ComposeOptions& opt = {}) {
    if (towers.empty()) throw std::invalid_argument("compose_chain: empty chain");
    if (N < 0 || N > towers.front().order())
        throw std::invalid_argument("compose_chain: N out of range");

    DerivativeTower<S> acc = towers.front();
    if (acc.order() > N) acc.derivs.resize(N);
    for (std::size_t i = 1; i < towers.size(); ++i)
        acc = compose_towers(towers[i], acc, N, opt);
    return acc;
}

}  // namespace fdb
