#pragma once

#include <map>
#include <vector>

#include "fdb/scalar.hpp"

namespace fdb {

// Multivariate formal power series over exact rationals, truncated past
// total degree `cap`. Keys are exponent vectors in a sorted map so equal
// series have byte-identical serializations. Zero coefficients are never
// stored. This module is the exactness anchor: no float mode exists here.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int num_vars, int cap = 8);

    static TruncatedSeries constant(const Rat& c, int num_vars, int cap);
    static TruncatedSeries variable(int i, int num_vars, int cap);  // T_i

    int num_vars() const { return num_vars_; }
    int cap() const { return cap_; }

    // Silently drops exponents past the cap; erases on zero.
    void add_coeff(const std::vector<int>& exps, const Rat& c);
    Rat coeff(const std::vector<int>& exps) const;
    Rat constant_term() const;
    bool is_zero() const { return coeffs_.empty(); }

    const std::map<std::vector<int>, Rat>& coeffs() const { return coeffs_; }

    TruncatedSeries truncated(int new_cap) const;

    bool operator==(const TruncatedSeries& o) const = default;

    std::string to_string() const;

private:
    int num_vars_;
    int cap_;
    std::map<std::vector<int>, Rat> coeffs_;
};

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries scalar_mul(const Rat& c, const TruncatedSeries& a);

// Tangent vector at 0: the primitive functional with F -> <F'(0), v>.
struct PrimitiveVector {
    std::vector<Rat> coords;
};

// A germ map n -> m held by its component images: m constant-term-free
// series in n variables. Mirrors the homomorphism A_m -> A_n it induces.
struct GermMap {
    int source_vars = 0;
    int target_vars = 0;
    std::vector<TruncatedSeries> components;  // target_vars series in source_vars vars

    void check() const;  // throws on constant-term violation or shape mismatch
};

GermMap identity_germ(int n, int cap);

// Replace each T_i of F by phi's i-th component and expand, truncating at
// the cap. A unital ring homomorphism on truncated data (the components
// having no constant term is what makes truncation commute with it).
TruncatedSeries substitute(const TruncatedSeries& F, const GermMap& phi);

// Directional derivative sum_i v_i dF/dT_i — the action of a primitive by
// convolution, realized on truncated data.
TruncatedSeries directional_derivative(const TruncatedSeries& F, const PrimitiveVector& v);

// (v_1 * ... * v_k)(F) = <F^(k)(0), v_1 (x) ... (x) v_k>: apply the
// directional-derivative operators successively, take the constant term.
// Throws capacity_error for k > cap (the information was truncated away).
Rat derivative_functional(const std::vector<PrimitiveVector>& vs, const TruncatedSeries& F);

// (*_{i in I} vs_i)(F G) = sum_{S subset I} (*_{S})(F) (*_{I\S})(G),
// the comultiplication expanded over subset splits. Always true; returns
// the exact comparison.
bool leibniz_check(const std::vector<PrimitiveVector>& vs, const TruncatedSeries& F,
                   const TruncatedSeries& G);

// The k-fold refinement: (*vs)(F_1 ... F_j) = sum over assignments
// I -> {1..j} of the product of per-part functionals.
bool multifactor_split_check(const std::vector<PrimitiveVector>& vs,
                             const std::vector<TruncatedSeries>& factors);

// The partition identity inside the algebra: the pushforward of a
// convolution of primitives along phi equals the partition sum whose
// S-blocks are the primitives <f^(|S|)(0), (x)_{i in S} v_i>. Both sides are
// compared as functionals on each probe; exact equality is required.
bool verify_alg7(const GermMap& phi, const std::vector<PrimitiveVector>& vs,
                 const std::vector<TruncatedSeries>& probes);

// All monomials of total degree 1..max_degree in `vars` variables — the
// standard probe set for verify_alg7.
std::vector<TruncatedSeries> monomial_probes(int vars, int cap, int max_degree);

struct Polynomial;  // fdb/multilinear.hpp

// Germ of a polynomial map at a point: component j is the Taylor shift
// f_j(x+T) - f_j(x), exact and constant-term-free by construction.
GermMap polynomial_germ(const Polynomial& poly, const std::vector<Rat>& x, int cap);

}  // namespace fdb
