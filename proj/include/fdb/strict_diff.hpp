#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace fdb {

// Caller-supplied map R^p -> R^q, evaluated in float64 only. Evaluation must
// be deterministic for identical inputs.
struct BlackBoxMap {
    int in_dim = 0;
    int out_dim = 0;
    std::function<std::vector<double>(const std::vector<double>&)> fn;
};

// Default step scale per derivative order. Plain mode balances the O(h)
// truncation of the one-sided stencil against 2^n-term cancellation;
// Richardson mode balances the surviving O(h^2) term the same way.
double default_step(int order, bool richardson);

// Alternating-sign sum over the 2^n parallelepiped vertices:
//   sum_{S subset I} (-1)^(|I|-|S|) f(x_bar + sum_{i in S} steps_i).
// Exactly 2^n evaluations. Steps are sorted internally so the result is
// bitwise invariant under reordering of the steps list; vertex enumeration
// is subset-lexicographic over the sorted list and accumulation is
// compensated (Neumaier).
std::vector<double> difference_sum(const BlackBoxMap& f, const std::vector<double>& x_bar,
                                   const std::vector<std::vector<double>>& steps);

struct EstimateOptions {
    std::optional<double> h;    // step scale; defaults to default_step(n, richardson)
    bool richardson = false;    // one level: 2 D(h/2) - D(h)
};

struct Estimate {
    std::vector<double> value;
    double h_used = 0.0;
    std::uint64_t evals = 0;
    double digits_lost = 0.0;        // max over components, log10 scale
    bool cancellation_warning = false;  // digits_lost > 6
};

// difference_sum(f, x, h*dirs) / h^n, approximating <f^(n)(x), (x) dirs>.
Estimate estimate_derivative(const BlackBoxMap& f, const std::vector<double>& x,
                             const std::vector<std::vector<double>>& dirs,
                             const EstimateOptions& opt = {});

// Over-order difference sums must vanish faster than h^n. The check runs a
// 4-point h-sweep with m > n steps and requires a log-log decay slope above
// n + 0.5 (difference sums that vanish to rounding level pass outright),
// plus the exact integer identity sum_{S subset K} (-1)^(|K|-|S|) = 0 for
// every nonempty K with |K| <= 10.
struct Lemma1Report {
    bool coefficient_identity_ok = false;
    std::vector<double> sweep_h;
    std::vector<double> sweep_norm;   // ||difference_sum|| per h
    double slope = 0.0;               // +inf encoded as exact_zero
    bool exact_zero = false;          // sums vanished to rounding level
    bool decay_ok = false;
    bool pass = false;
};

Lemma1Report lemma1_check(const BlackBoxMap& f, const std::vector<double>& x,
                          int declared_order, int m,
                          const std::vector<std::vector<double>>& dirs, double h0 = 0.1);

// The integer leg of Lemma 1 on its own (shared with the algebra suite).
bool alternating_subset_identity_ok(int max_k = 10);

}  // namespace fdb
