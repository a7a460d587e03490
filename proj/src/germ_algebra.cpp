#include "fdb/germ_algebra.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fdb/multilinear.hpp"
#include "fdb/partitions.hpp"

namespace fdb {

namespace {

int total_degree(const std::vector<int>& exps) {
    return std::accumulate(exps.begin(), exps.end(), 0);
}

void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.num_vars() != b.num_vars())
        throw std::invalid_argument("series: variable count mismatch");
    if (a.cap() != b.cap()) throw std::invalid_argument("series: degree cap mismatch");
}

}  // namespace

TruncatedSeries::TruncatedSeries(int num_vars, int cap) : num_vars_(num_vars), cap_(cap) {
    if (num_vars < 0 || cap < 0)
        throw std::invalid_argument("TruncatedSeries: bad shape");
}

TruncatedSeries TruncatedSeries::constant(const Rat& c, int num_vars, int cap) {
    TruncatedSeries s(num_vars, cap);
    s.add_coeff(std::vector<int>(num_vars, 0), c);
    return s;
}

TruncatedSeries TruncatedSeries::variable(int i, int num_vars, int cap) {
    if (i < 0 || i >= num_vars)
        throw std::invalid_argument("TruncatedSeries::variable: index out of range");
    TruncatedSeries s(num_vars, cap);
    std::vector<int> e(num_vars, 0);
    e[i] = 1;
    s.add_coeff(e, 1);
    return s;
}

void TruncatedSeries::add_coeff(const std::vector<int>& exps, const Rat& c) {
    if (static_cast<int>(exps.size()) != num_vars_)
        throw std::invalid_argument("TruncatedSeries: exponent vector length mismatch");
    if (c == 0 || total_degree(exps) > cap_) return;
    auto it = coeffs_.find(exps);
    if (it == coeffs_.end()) {
        coeffs_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
}

Rat TruncatedSeries::coeff(const std::vector<int>& exps) const {
    auto it = coeffs_.find(exps);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

Rat TruncatedSeries::constant_term() const {
    return coeff(std::vector<int>(num_vars_, 0));
}

TruncatedSeries TruncatedSeries::truncated(int new_cap) const {
    TruncatedSeries s(num_vars_, new_cap);
    for (const auto& [e, c] : coeffs_) s.add_coeff(e, c);
    return s;
}

std::string TruncatedSeries::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_to_string(c) << ")";
        for (int i = 0; i < num_vars_; ++i)
            if (e[i]) os << "*T" << i + 1 << "^" << e[i];
    }
    return os.str();
}

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    TruncatedSeries out = a;
    for (const auto& [e, c] : b.coeffs()) out.add_coeff(e, c);
    return out;
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    TruncatedSeries out = a;
    for (const auto& [e, c] : b.coeffs()) out.add_coeff(e, -c);
    return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_compatible(a, b);
    TruncatedSeries out(a.num_vars(), a.cap());
    std::vector<int> e(a.num_vars());
    for (const auto& [ea, ca] : a.coeffs()) {
        int da = total_degree(ea);
        for (const auto& [eb, cb] : b.coeffs()) {
            if (da + total_degree(eb) > a.cap()) continue;
            for (int i = 0; i < a.num_vars(); ++i) e[i] = ea[i] + eb[i];
            out.add_coeff(e, ca * cb);
        }
    }
    return out;
}

TruncatedSeries scalar_mul(const Rat& c, const TruncatedSeries& a) {
    TruncatedSeries out(a.num_vars(), a.cap());
    if (c == 0) return out;
    for (const auto& [e, k] : a.coeffs()) out.add_coeff(e, c * k);
    return out;
}

void GermMap::check() const {
    if (static_cast<int>(components.size()) != target_vars)
        throw std::invalid_argument("GermMap: need one component per target variable");
    for (const auto& comp : components) {
        if (comp.num_vars() != source_vars)
            throw std::invalid_argument("GermMap: component variable count mismatch");
        if (comp.constant_term() != 0)
            throw std::invalid_argument("GermMap: component has a constant term");
    }
}

GermMap identity_germ(int n, int cap) {
    GermMap phi;
    phi.source_vars = phi.target_vars = n;
    for (int i = 0; i < n; ++i)
        phi.components.push_back(TruncatedSeries::variable(i, n, cap));
    return phi;
}

TruncatedSeries substitute(const TruncatedSeries& F, const GermMap& phi) {
    phi.check();
    if (phi.target_vars != F.num_vars())
        throw std::invalid_argument("substitute: F lives in the wrong algebra");
    for (const auto& comp : phi.components)
        if (comp.cap() != F.cap())
            throw std::invalid_argument("substitute: degree cap mismatch");

    const int cap = F.cap();
    const int n = phi.source_vars;

    // progressive powers of each component, built on demand
    std::vector<std::vector<TruncatedSeries>> powers(F.num_vars());
    auto power = [&](int i, int k) -> const TruncatedSeries& {
        auto& ps = powers[i];
        if (ps.empty()) ps.push_back(TruncatedSeries::constant(1, n, cap));
        while (static_cast<int>(ps.size()) <= k)
            ps.push_back(series_mul(ps.back(), phi.components[i]));
        return ps[k];
    };

    TruncatedSeries out(n, cap);
    for (const auto& [e, c] : F.coeffs()) {
        TruncatedSeries term = TruncatedSeries::constant(c, n, cap);
        for (int i = 0; i < F.num_vars(); ++i)
            if (e[i]) term = series_mul(term, power(i, e[i]));
        out = series_add(out, term);
    }
    return out;
}

TruncatedSeries directional_derivative(const TruncatedSeries& F, const PrimitiveVector& v) {
    if (static_cast<int>(v.coords.size()) != F.num_vars())
        throw std::invalid_argument("directional_derivative: dimension mismatch");
    TruncatedSeries out(F.num_vars(), F.cap());
    std::vector<int> e(F.num_vars());
    for (const auto& [exps, c] : F.coeffs()) {
        for (int i = 0; i < F.num_vars(); ++i) {
            if (exps[i] == 0 || v.coords[i] == 0) continue;
            e = exps;
            --e[i];
            out.add_coeff(e, c * exps[i] * v.coords[i]);
        }
    }
    return out;
}

Rat derivative_functional(const std::vector<PrimitiveVector>& vs, const TruncatedSeries& F) {
    if (static_cast<int>(vs.size()) > F.cap())
        throw capacity_error("derivative_functional: order exceeds the degree cap");
    TruncatedSeries cur = F;
    for (const auto& v : vs) cur = directional_derivative(cur, v);
    return cur.constant_term();
}

bool leibniz_check(const std::vector<PrimitiveVector>& vs, const TruncatedSeries& F,
                   const TruncatedSeries& G) {
    const int k = static_cast<int>(vs.size());
    Rat lhs = derivative_functional(vs, series_mul(F, G));

    Rat rhs = 0;
    SubsetStream subsets(k);
    while (auto s = subsets.next()) {
        std::vector<char> in_s(k, 0);
        for (int i : *s) in_s[i] = 1;
        std::vector<PrimitiveVector> left, right;
        for (int i = 0; i < k; ++i) (in_s[i] ? left : right).push_back(vs[i]);
        rhs += derivative_functional(left, F) * derivative_functional(right, G);
    }
    return lhs == rhs;
}

bool multifactor_split_check(const std::vector<PrimitiveVector>& vs,
                             const std::vector<TruncatedSeries>& factors) {
    if (factors.empty())
        throw std::invalid_argument("multifactor_split_check: need at least one factor");
    const int k = static_cast<int>(vs.size());
    const int j = static_cast<int>(factors.size());

    TruncatedSeries product = factors.front();
    for (int r = 1; r < j; ++r) product = series_mul(product, factors[r]);
    Rat lhs = derivative_functional(vs, product);

    // sum over all assignments I -> {0..j-1}
    Rat rhs = 0;
    std::vector<int> assign(k, 0);
    while (true) {
        Rat term = 1;
        for (int r = 0; r < j && term != 0; ++r) {
            std::vector<PrimitiveVector> part;
            for (int i = 0; i < k; ++i)
                if (assign[i] == r) part.push_back(vs[i]);
            term *= derivative_functional(part, factors[r]);
        }
        rhs += term;
        int pos = k - 1;
        while (pos >= 0 && assign[pos] == j - 1) assign[pos--] = 0;
        if (pos < 0) break;
        ++assign[pos];
    }
    return lhs == rhs;
}

bool verify_alg7(const GermMap& phi, const std::vector<PrimitiveVector>& vs,
                 const std::vector<TruncatedSeries>& probes) {
    phi.check();
    for (const auto& v : vs)
        if (static_cast<int>(v.coords.size()) != phi.source_vars)
            throw std::invalid_argument("verify_alg7: primitive dimension mismatch");

    const int k = static_cast<int>(vs.size());

    // the S-block pushforward primitives <f^(|S|)(0), (x)_{i in S} v_i>
    auto pushforward = [&](const std::vector<int>& block) {
        PrimitiveVector w;
        std::vector<PrimitiveVector> sub;
        for (int i : block) sub.push_back(vs[i]);
        for (int j = 0; j < phi.target_vars; ++j)
            w.coords.push_back(derivative_functional(sub, phi.components[j]));
        return w;
    };

    for (const auto& F : probes) {
        if (F.num_vars() != phi.target_vars)
            throw std::invalid_argument("verify_alg7: probe lives in the wrong algebra");
        Rat lhs = derivative_functional(vs, substitute(F, phi));

        Rat rhs = 0;
        PartitionStream partitions(k);
        while (auto pi = partitions.next()) {
            std::vector<PrimitiveVector> ws;
            ws.reserve(pi->blocks.size());
            for (const auto& block : pi->blocks) ws.push_back(pushforward(block));
            rhs += derivative_functional(ws, F);
        }
        if (lhs != rhs) return false;
    }
    return true;
}

GermMap polynomial_germ(const Polynomial& poly, const std::vector<Rat>& x, int cap) {
    poly.check();
    if (static_cast<int>(x.size()) != poly.in_dim)
        throw std::invalid_argument("polynomial_germ: base point dimension mismatch");

    GermMap phi;
    phi.source_vars = poly.in_dim;
    phi.target_vars = poly.out_dim;
    phi.components.assign(poly.out_dim, TruncatedSeries(poly.in_dim, cap));

    // binomial expansion of each monomial around x
    for (const auto& term : poly.terms) {
        std::vector<int> a(poly.in_dim, 0);  // T-exponents, a[l] <= e[l]
        while (true) {
            Rat c = term.coeff;
            for (int l = 0; l < poly.in_dim; ++l) {
                int e = term.exponents[l];
                Int binom = 1;
                for (int i = 0; i < a[l]; ++i) binom = binom * (e - i) / (i + 1);
                c *= Rat(binom);
                for (int i = 0; i < e - a[l]; ++i) c *= x[l];
            }
            phi.components[term.out_index].add_coeff(a, c);
            int pos = 0;
            while (pos < poly.in_dim && a[pos] == term.exponents[pos]) a[pos++] = 0;
            if (pos == poly.in_dim) break;
            ++a[pos];
        }
    }
    // drop the constant term f_j(x)
    const std::vector<int> zero(poly.in_dim, 0);
    for (auto& comp : phi.components) comp.add_coeff(zero, -comp.constant_term());
    phi.check();
    return phi;
}

std::vector<TruncatedSeries> monomial_probes(int vars, int cap, int max_degree) {
    std::vector<TruncatedSeries> probes;
    std::vector<int> e(vars, 0);
    // odometer over exponent vectors with total degree in [1, max_degree]
    while (true) {
        int pos = 0;
        while (pos < vars) {
            ++e[pos];
            if (total_degree(e) <= max_degree) break;
            e[pos++] = 0;
        }
        if (pos == vars) break;
        TruncatedSeries m(vars, cap);
        m.add_coeff(e, 1);
        probes.push_back(std::move(m));
    }
    return probes;
}

}  // namespace fdb
