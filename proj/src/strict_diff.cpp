#include "fdb/strict_diff.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdb {

namespace {

struct Neumaier {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double get() const { return sum + comp; }
};

struct DiffSumDetail {
    std::vector<double> value;
    std::vector<double> abs_sum;  // sum of |signed terms| per component
    std::uint64_t evals = 0;
};

DiffSumDetail difference_sum_detail(const BlackBoxMap& f, const std::vector<double>& x_bar,
                                    std::vector<std::vector<double>> steps) {
    if (!f.fn) throw std::invalid_argument("difference_sum: map has no evaluator");
    if (static_cast<int>(x_bar.size()) != f.in_dim)
        throw std::invalid_argument("difference_sum: base point dimension mismatch");
    for (const auto& s : steps)
        if (static_cast<int>(s.size()) != f.in_dim)
            throw std::invalid_argument("difference_sum: step dimension mismatch");
    const int n = static_cast<int>(steps.size());
    if (n > 30) throw std::invalid_argument("difference_sum: too many steps");

    // canonical order => bitwise symmetry in the steps list
    std::sort(steps.begin(), steps.end());

    std::vector<Neumaier> acc(f.out_dim);
    std::vector<double> abs_sum(f.out_dim, 0.0);
    DiffSumDetail out;
    std::vector<double> point(f.in_dim);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        point = x_bar;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                for (int d = 0; d < f.in_dim; ++d) point[d] += steps[i][d];
        std::vector<double> fx = f.fn(point);
        ++out.evals;
        if (static_cast<int>(fx.size()) != f.out_dim)
            throw std::invalid_argument("difference_sum: evaluator returned wrong dimension");
        double sign = ((n - std::popcount(mask)) & 1) ? -1.0 : 1.0;
        for (int j = 0; j < f.out_dim; ++j) {
            if (!std::isfinite(fx[j]))
                throw std::runtime_error("difference_sum: non-finite function value");
            acc[j].add(sign * fx[j]);
            abs_sum[j] += std::abs(fx[j]);
        }
    }
    out.value.resize(f.out_dim);
    for (int j = 0; j < f.out_dim; ++j) out.value[j] = acc[j].get();
    out.abs_sum = std::move(abs_sum);
    return out;
}

double digits_lost_in(const DiffSumDetail& d) {
    double worst = 0.0;
    for (std::size_t j = 0; j < d.value.size(); ++j) {
        if (d.abs_sum[j] == 0.0) continue;
        double mag = std::abs(d.value[j]);
        double lost = (mag == 0.0) ? 16.0 : std::log10(d.abs_sum[j] / mag);
        worst = std::max(worst, lost);
    }
    return worst;
}

}  // namespace

double default_step(int order, bool richardson) {
    if (order <= 0) return 1.0;
    double eps = std::numeric_limits<double>::epsilon();
    return std::pow(eps, 1.0 / (order + (richardson ? 3 : 2)));
}

std::vector<double> difference_sum(const BlackBoxMap& f, const std::vector<double>& x_bar,
                                   const std::vector<std::vector<double>>& steps) {
    return difference_sum_detail(f, x_bar, steps).value;
}

Estimate estimate_derivative(const BlackBoxMap& f, const std::vector<double>& x,
                             const std::vector<std::vector<double>>& dirs,
                             const EstimateOptions& opt) {
    const int n = static_cast<int>(dirs.size());
    for (const auto& d : dirs) {
        bool zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
        if (zero) throw std::invalid_argument("estimate_derivative: zero direction");
    }
    double h = opt.h.value_or(default_step(n, opt.richardson));
    if (h <= 0) throw std::invalid_argument("estimate_derivative: h must be > 0");

    auto scaled = [&](double hh) {
        std::vector<std::vector<double>> steps(dirs);
        for (auto& s : steps)
            for (double& v : s) v *= hh;
        return steps;
    };

    Estimate est;
    est.h_used = h;
    auto d1 = difference_sum_detail(f, x, scaled(h));
    double hn = std::pow(h, n);
    est.value.resize(f.out_dim);
    for (int j = 0; j < f.out_dim; ++j) est.value[j] = d1.value[j] / hn;
    est.evals = d1.evals;
    est.digits_lost = digits_lost_in(d1);

    if (opt.richardson && n > 0) {
        auto d2 = difference_sum_detail(f, x, scaled(h / 2));
        double hn2 = std::pow(h / 2, n);
        for (int j = 0; j < f.out_dim; ++j)
            est.value[j] = 2.0 * (d2.value[j] / hn2) - est.value[j];
        est.evals += d2.evals;
        est.digits_lost = std::max(est.digits_lost, digits_lost_in(d2));
    }
    est.cancellation_warning = est.digits_lost > 6.0;
    return est;
}

Lemma1Report lemma1_check(const BlackBoxMap& f, const std::vector<double>& x,
                          int declared_order, int m,
                          const std::vector<std::vector<double>>& dirs, double h0) {
    if (m <= declared_order)
        throw std::invalid_argument("lemma1_check: need m > declared order");
    if (static_cast<int>(dirs.size()) != m)
        throw std::invalid_argument("lemma1_check: need one direction per step");

    Lemma1Report rep;
    rep.coefficient_identity_ok = alternating_subset_identity_ok();

    const int points = 4;
    double h = h0;
    bool all_zero = true;
    for (int p = 0; p < points; ++p, h /= 2) {
        std::vector<std::vector<double>> steps(dirs);
        for (auto& s : steps)
            for (double& v : s) v *= h;
        auto d = difference_sum_detail(f, x, std::move(steps));
        double norm = 0.0, scale = 0.0;
        for (int j = 0; j < f.out_dim; ++j) {
            norm = std::max(norm, std::abs(d.value[j]));
            scale = std::max(scale, d.abs_sum[j]);
        }
        rep.sweep_h.push_back(h);
        rep.sweep_norm.push_back(norm);
        // below rounding level counts as vanished
        if (norm > 64.0 * std::numeric_limits<double>::epsilon() * scale) all_zero = false;
    }

    if (all_zero) {
        rep.exact_zero = true;
        rep.decay_ok = true;
    } else {
        double first = rep.sweep_norm.front(), last = rep.sweep_norm.back();
        if (last == 0.0) {
            rep.exact_zero = false;
            rep.decay_ok = true;
            rep.slope = std::numeric_limits<double>::infinity();
        } else {
            rep.slope = std::log2(first / last) / (points - 1);
            rep.decay_ok = rep.slope > declared_order + 0.5;
        }
    }
    rep.pass = rep.coefficient_identity_ok && rep.decay_ok;
    return rep;
}

bool alternating_subset_identity_ok(int max_k) {
    for (int k = 1; k <= max_k; ++k) {
        long long total = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
            total += ((k - std::popcount(mask)) & 1) ? -1 : 1;
        if (total != 0) return false;
    }
    return true;
}

}  // namespace fdb
